// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mubkit/cipher.hpp"
#include "mubkit/hilbert.hpp"
#include "mubkit/mub.hpp"

namespace mubkit {

/// Cipher states of one plaintext under a uniform key prior.
struct StateSet {
  StateSet(std::vector<StateVector> states, std::vector<CipherKey> labels);
  std::vector<StateVector> states;
  std::vector<CipherKey> labels;
  int dim = 0;
};

/// All 2^m encryptions of one plaintext, labeled by key.
StateSet cipher_state_set(const CipherSpec& spec, std::uint32_t plaintext);

/// Key-guessing POVM: one element (N/M)|psi_key><psi_key| per key, in key
/// order (hex label), plus a completion element labeled "none" that is the
/// identity deficit clamped to PSD. Throws std::runtime_error when the
/// deficit has an eigenvalue below -kStructuralTol.
Povm key_guess_povm(const CipherSpec& spec, std::uint32_t plaintext);

/// Probability that the element whose label matches the true key fires,
/// averaged over uniform keys. Requires element i < 2^m to be key i.
double key_identification_probability(const CipherSpec& spec, std::uint32_t plaintext,
                                      const Povm& m);

/// H_inf(K|U) = -log2 sum_u max_k Pr(U=u, K=k) under uniform keys.
double min_entropy_key_uncertainty(const CipherSpec& spec, std::uint32_t plaintext,
                                   const Povm& m);

/// Entropy of the key posterior given that a measurement outcome projected
/// onto |u>: H of { |<u|c_k>|^2 / sum_l |<u|c_l>|^2 }. Throws
/// std::domain_error when every inner product vanishes (the outcome has
/// probability zero).
double h_u_sk(const StateVector& u, const StateSet& s);

/// Exact Shannon key uncertainty H(K|U) of a measurement on the cipher
/// states of one plaintext, uniform key prior.
double povm_key_entropy(const CipherSpec& spec, std::uint32_t plaintext, const Povm& m);
/// Same quantity for a projective measurement in a basis, computed from
/// inner products only (usable at dimensions where explicit projectors are
/// too large).
double povm_key_entropy(const CipherSpec& spec, std::uint32_t plaintext,
                        const OrthonormalBasis& basis);

/// Outcome probability and key posterior for every POVM element.
struct PovmOutcome {
  double probability;
  std::vector<double> posterior;
};
std::vector<PovmOutcome> povm_key_posteriors(const CipherSpec& spec,
                                             std::uint32_t plaintext, const Povm& m);

/// Split every element into its rank-one eigenparts (labels suffixed with
/// "/i"). Refinement never increases povm_key_entropy.
Povm refine_povm(const Povm& m);

/// Multi-start projected gradient descent settings for mes_search.
struct MesConfig {
  int restarts = 64;
  std::uint64_t seed = 12345;
  double tolerance = kOptimizerTol;
  int max_iterations = 500;
  /// Also start from every basis vector of every input basis (the known
  /// stationary candidates for the minimum).
  bool basis_starts = true;
};

/// Result of minimizing sum_i H[u, B_i] over unit vectors. The value is an
/// upper bound on the true minimum; compare against analytic lower bounds,
/// never against other search output.
struct MesResult {
  double value = 0.0;
  StateVector argmin = StateVector::computational(1, 0);
  int restarts = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Minimize the summed measurement entropy over unit vectors by multi-start
/// projected gradient descent with Armijo backtracking. Deterministic for a
/// fixed config.
MesResult mes_search(const std::vector<OrthonormalBasis>& bases, const MesConfig& config = {});

/// Lower bound t + mes/2^t on H(K|U) over all POVMs, from the entropy sum
/// of the cipher's basis family.
double shannon_key_uncertainty_bound(const CipherSpec& spec, double mes_value);

/// Entropy-sum floor n for any pair of mutually unbiased bases in dim 2^n.
double mu_bound(int n);

/// Sum over all 2^n+1 family bases of the measurement collision
/// probability; identically 2 for unit vectors.
double larsen_sum(const MubFamily& family, const StateVector& u);

/// Entropy-sum floor N*log2(N/(2 - 1/N)) over N = 2^n mutually unbiased
/// bases in dimension N.
double sanchez_bound(int n_bases);

/// Gap (2^t - 1)*n - mes between the maximal possible entropy sum and a
/// MES value for 2^t mutually unbiased bases in dim 2^n.
double delta(int n, int t, double mes_value);

/// Disjoint split of the v-fold product family into parts of 2^t pairwise
/// mutually unbiased product bases, indexed by cyclic offsets.
struct CompositionPartition {
  int v = 0;
  std::vector<std::vector<OrthonormalBasis>> parts;
};
CompositionPartition compose_partition(const CipherSpec& spec, int v);

/// Lower bound v*t + m_v/2^t on the composed key uncertainty, where m_v is
/// the minimum entropy-sum over the partition's parts.
double composed_key_uncertainty_bound(const CipherSpec& spec, int v, double m_v);

/// Minimum of mes_search over the parts of compose_partition(spec, v).
/// Ties keep the lowest part index.
struct PartitionMes {
  double m_v = 0.0;
  int part_index = 0;
  int part_count = 0;
  bool converged = false;
};
PartitionMes partition_mes(const CipherSpec& spec, int v, const MesConfig& config = {});

/// Numerical probe of the composed-family entropy gap for the phase-basis
/// cipher on n qubits: reports the estimate delta(v*n, n) next to the
/// conjectured ceiling 2^n - v*n, with optimizer provenance. Report only;
/// the estimate is exact only if the search found the global minimum.
struct ConjectureProbe {
  int n = 0;
  int v = 0;
  double m_v = 0.0;
  double delta_estimate = 0.0;
  double conjecture_bound = 0.0;
  int part_count = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  bool converged = false;
};
ConjectureProbe conjecture_probe(int n, int v, const MesConfig& config = {});

/// Shannon key-uncertainty figures for the full phase-basis cipher:
/// the proved floor 2n-1 and the estimate n + mes/2^n whose optimality
/// rests on the basis-state minimizer conjecture.
struct WnUncertainty {
  int n = 0;
  double mes_upper_bound = 0.0;
  double conditional_estimate = 0.0;
  double proved_bound = 0.0;
  bool conjecture_dependent = true;
};
WnUncertainty wn_full_uncertainty(int n, const MesConfig& config = {});

}  // namespace mubkit
