// SPDX-License-Identifier: Apache-2.0
#include "mubkit/keyanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "mubkit/random.hpp"

namespace mubkit {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double plog2p(double p) { return p > kProbFloor ? p * std::log2(p) : 0.0; }

std::vector<StateVector> all_cipher_states(const CipherSpec& spec, std::uint32_t a) {
  std::vector<StateVector> states;
  states.reserve(spec.key_count());
  std::uint32_t mask = (1u << spec.n()) - 1;
  for (std::uint32_t v = 0; v < spec.key_count(); ++v) {
    states.push_back(encrypt(spec, {v >> spec.n(), v & mask}, a));
  }
  return states;
}

/// Joint distribution Pr(U=u, K=k) as a dense row-per-outcome table.
std::vector<std::vector<double>> joint_table(const CipherSpec& spec, std::uint32_t a,
                                             const Povm& m) {
  if (m.dim != spec.dim()) throw std::invalid_argument("POVM dimension mismatch");
  auto states = all_cipher_states(spec, a);
  double prior = 1.0 / double(states.size());
  std::vector<std::vector<double>> joint(m.elements.size(),
                                         std::vector<double>(states.size(), 0.0));
  for (std::size_t u = 0; u < m.elements.size(); ++u) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      const Eigen::VectorXcd& psi = states[k].amps();
      double p = std::real(psi.dot(m.elements[u] * psi));
      joint[u][k] = prior * std::max(0.0, p);
    }
  }
  return joint;
}

double conditional_entropy_from_joint(const std::vector<std::vector<double>>& joint) {
  // H(K|U) = H(U,K) - H(U)
  double h_joint = 0.0;
  double h_marginal = 0.0;
  for (const auto& row : joint) {
    double pu = 0.0;
    for (double p : row) {
      pu += p;
      h_joint -= plog2p(p);
    }
    h_marginal -= plog2p(pu);
  }
  return h_joint - h_marginal;
}

}  // namespace

StateSet::StateSet(std::vector<StateVector> s, std::vector<CipherKey> l)
    : states(std::move(s)), labels(std::move(l)) {
  if (states.empty()) throw std::invalid_argument("state set is empty");
  if (states.size() != labels.size()) {
    throw std::invalid_argument("one label per state required");
  }
  dim = states.front().dim();
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != dim) throw std::invalid_argument("state dimension mismatch");
    if (!seen.insert({labels[i].c, labels[i].k}).second) {
      throw std::invalid_argument("duplicate key label");
    }
  }
}

StateSet cipher_state_set(const CipherSpec& spec, std::uint32_t plaintext) {
  std::vector<StateVector> states = all_cipher_states(spec, plaintext);
  std::vector<CipherKey> labels;
  labels.reserve(states.size());
  std::uint32_t mask = (1u << spec.n()) - 1;
  for (std::uint32_t v = 0; v < spec.key_count(); ++v) {
    labels.push_back({v >> spec.n(), v & mask});
  }
  return StateSet(std::move(states), std::move(labels));
}

Povm key_guess_povm(const CipherSpec& spec, std::uint32_t plaintext) {
  int d = spec.dim();
  auto states = all_cipher_states(spec, plaintext);
  double scale = double(d) / double(states.size());
  Povm m;
  m.dim = d;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  std::uint32_t mask = (1u << spec.n()) - 1;
  for (std::uint32_t v = 0; v < states.size(); ++v) {
    const Eigen::VectorXcd& psi = states[v].amps();
    Eigen::MatrixXcd e = scale * (psi * psi.adjoint());
    total += e;
    m.elements.push_back(std::move(e));
    m.labels.push_back(keys_to_hex(spec, {{v >> spec.n(), v & mask}}));
  }
  Eigen::MatrixXcd deficit = Eigen::MatrixXcd::Identity(d, d) - total;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (deficit + deficit.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -kStructuralTol) {
    throw std::runtime_error("key-guess completion is not positive semidefinite");
  }
  Eigen::VectorXd clamped = ev.cwiseMax(0.0);
  m.elements.push_back(es.eigenvectors() * clamped.asDiagonal() *
                       es.eigenvectors().adjoint());
  m.labels.push_back("none");
  return m;
}

double key_identification_probability(const CipherSpec& spec, std::uint32_t plaintext,
                                      const Povm& m) {
  if (m.elements.size() < spec.key_count()) {
    throw std::invalid_argument("POVM lacks one element per key");
  }
  auto states = all_cipher_states(spec, plaintext);
  double total = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const Eigen::VectorXcd& psi = states[k].amps();
    total += std::real(psi.dot(m.elements[k] * psi));
  }
  return total / double(states.size());
}

double min_entropy_key_uncertainty(const CipherSpec& spec, std::uint32_t plaintext,
                                   const Povm& m) {
  auto joint = joint_table(spec, plaintext, m);
  double guess = 0.0;
  for (const auto& row : joint) guess += *std::max_element(row.begin(), row.end());
  return -std::log2(guess);
}

double h_u_sk(const StateVector& u, const StateSet& s) {
  if (u.dim() != s.dim) throw std::invalid_argument("dimension mismatch");
  std::vector<double> q;
  q.reserve(s.states.size());
  double total = 0.0;
  for (const StateVector& c : s.states) {
    double p = std::norm(u.amps().dot(c.amps()));
    q.push_back(p);
    total += p;
  }
  if (total < kProbFloor) {
    throw std::domain_error("outcome has probability zero for every key");
  }
  double h = 0.0;
  for (double p : q) h -= plog2p(p / total);
  return h;
}

double povm_key_entropy(const CipherSpec& spec, std::uint32_t plaintext, const Povm& m) {
  return conditional_entropy_from_joint(joint_table(spec, plaintext, m));
}

double povm_key_entropy(const CipherSpec& spec, std::uint32_t plaintext,
                        const OrthonormalBasis& basis) {
  if (basis.dim() != spec.dim()) throw std::invalid_argument("basis dimension mismatch");
  auto states = all_cipher_states(spec, plaintext);
  double prior = 1.0 / double(states.size());
  std::vector<std::vector<double>> joint(
      basis.dim(), std::vector<double>(states.size(), 0.0));
  for (std::size_t k = 0; k < states.size(); ++k) {
    Eigen::VectorXcd overlaps = basis.matrix().adjoint() * states[k].amps();
    for (int u = 0; u < basis.dim(); ++u) joint[u][k] = prior * std::norm(overlaps(u));
  }
  return conditional_entropy_from_joint(joint);
}

std::vector<PovmOutcome> povm_key_posteriors(const CipherSpec& spec,
                                             std::uint32_t plaintext, const Povm& m) {
  auto joint = joint_table(spec, plaintext, m);
  std::vector<PovmOutcome> out;
  out.reserve(joint.size());
  for (const auto& row : joint) {
    PovmOutcome o;
    o.probability = 0.0;
    for (double p : row) o.probability += p;
    o.posterior.resize(row.size(), 0.0);
    if (o.probability > kProbFloor) {
      for (std::size_t k = 0; k < row.size(); ++k) o.posterior[k] = row[k] / o.probability;
    }
    out.push_back(std::move(o));
  }
  return out;
}

Povm refine_povm(const Povm& m) {
  Povm fine;
  fine.dim = m.dim;
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.elements[i]);
    int part = 0;
    for (int j = 0; j < m.dim; ++j) {
      double lambda = es.eigenvalues()(j);
      if (lambda < 1e-12) continue;
      Eigen::VectorXcd v = es.eigenvectors().col(j);
      fine.elements.push_back(lambda * (v * v.adjoint()));
      fine.labels.push_back(m.labels[i] + "/" + std::to_string(part++));
    }
  }
  return fine;
}

namespace {

/// Summed measurement entropy and its Wirtinger gradient. Probabilities
/// below kProbFloor contribute nothing to either (the p*log p limit).
class EntropySum {
 public:
  explicit EntropySum(const std::vector<OrthonormalBasis>& bases) : bases_(&bases) {}

  double value(const Eigen::VectorXcd& u) const {
    double f = 0.0;
    for (const auto& b : *bases_) {
      Eigen::VectorXcd c = b.matrix().adjoint() * u;
      for (int j = 0; j < c.size(); ++j) f -= plog2p(std::norm(c(j)));
    }
    return f;
  }

  /// Returns f(u) and fills grad with 2 * df/du*.
  double value_and_gradient(const Eigen::VectorXcd& u, Eigen::VectorXcd& grad) const {
    double f = 0.0;
    grad = Eigen::VectorXcd::Zero(u.size());
    for (const auto& b : *bases_) {
      Eigen::VectorXcd c = b.matrix().adjoint() * u;
      Eigen::VectorXcd weighted = Eigen::VectorXcd::Zero(c.size());
      for (int j = 0; j < c.size(); ++j) {
        double p = std::norm(c(j));
        if (p <= kProbFloor) continue;
        f -= p * std::log2(p);
        weighted(j) = -((std::log(p) + 1.0) / kLn2) * c(j);
      }
      grad.noalias() += b.matrix() * weighted;
    }
    grad *= 2.0;
    return f;
  }

 private:
  const std::vector<OrthonormalBasis>* bases_;
};

struct DescentOutcome {
  double value;
  Eigen::VectorXcd point;
  bool converged;
};

DescentOutcome descend(const EntropySum& objective, Eigen::VectorXcd u,
                       double tolerance, int max_iterations) {
  double f = objective.value(u);
  double step = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd grad;
    objective.value_and_gradient(u, grad);
    Eigen::VectorXcd tangent = grad - u.dot(grad) * u;
    double gnorm = tangent.norm();
    if (gnorm < tolerance) return {f, std::move(u), true};
    step = std::min(step * 2.0, 64.0);
    bool moved = false;
    while (step > 1e-18) {
      Eigen::VectorXcd cand = u - step * tangent;
      cand.normalize();
      double fc = objective.value(cand);
      if (fc <= f - 1e-4 * step * gnorm * gnorm) {
        u = std::move(cand);
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) return {f, std::move(u), false};
  }
  return {f, std::move(u), false};
}

}  // namespace

MesResult mes_search(const std::vector<OrthonormalBasis>& bases, const MesConfig& config) {
  if (bases.empty()) throw std::invalid_argument("at least one basis required");
  int d = bases.front().dim();
  if (d > 4096) throw std::invalid_argument("dimension above the 2^12 search cap");
  for (const auto& b : bases) {
    if (b.dim() != d) throw std::invalid_argument("basis dimension mismatch");
  }
  if (config.restarts < 0) throw std::invalid_argument("restart count must be >= 0");
  if (config.restarts == 0 && !config.basis_starts) {
    throw std::invalid_argument("no starting points configured");
  }

  EntropySum objective(bases);
  std::vector<Eigen::VectorXcd> starts;
  if (config.basis_starts) {
    for (const auto& b : bases) {
      for (int j = 0; j < d; ++j) starts.push_back(b.matrix().col(j));
    }
  }
  Rng rng(config.seed);
  for (int r = 0; r < config.restarts; ++r) starts.push_back(rng.haar_state(d).amps());

  MesResult result;
  result.restarts = static_cast<int>(starts.size());
  result.trace.reserve(starts.size());
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_point;
  bool best_converged = false;
  for (auto& s : starts) {
    DescentOutcome run =
        descend(objective, std::move(s), config.tolerance, config.max_iterations);
    result.trace.push_back(run.value);
    if (run.value < best) {
      best = run.value;
      best_point = std::move(run.point);
      best_converged = run.converged;
    }
  }
  result.value = best;
  result.argmin = StateVector(std::move(best_point));
  result.converged = best_converged;
  return result;
}

double shannon_key_uncertainty_bound(const CipherSpec& spec, double mes_value) {
  if (mes_value < 0) throw std::invalid_argument("entropy sum must be >= 0");
  return spec.t() + mes_value / double(spec.basis_count());
}

double mu_bound(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return double(n);
}

double larsen_sum(const MubFamily& family, const StateVector& u) {
  if (family.bases.size() != std::size_t(family.dim()) + 1) {
    throw std::invalid_argument("family must contain dim+1 bases");
  }
  double total = 0.0;
  for (const auto& b : family.bases) {
    total += collision_probability(measure_in_basis(u, b));
  }
  return total;
}

double sanchez_bound(int n_bases) {
  if (n_bases < 2) throw std::invalid_argument("bound needs at least two bases");
  double n = double(n_bases);
  return n * std::log2(n / (2.0 - 1.0 / n));
}

double delta(int n, int t, double mes_value) {
  if (n < 1 || t < 0) throw std::invalid_argument("invalid family parameters");
  if (mes_value < 0) throw std::invalid_argument("entropy sum must be >= 0");
  return (std::pow(2.0, t) - 1.0) * double(n) - mes_value;
}

CompositionPartition compose_partition(const CipherSpec& spec, int v) {
  if (v < 1) throw std::invalid_argument("fold count must be positive");
  if (v * spec.n() > 12) throw std::invalid_argument("composition exceeds 12 qubits");
  if ((v - 1) * spec.t() > 12) throw std::invalid_argument("too many parts to store");
  std::uint32_t count = spec.basis_count();
  CompositionPartition partition;
  partition.v = v;
  std::vector<std::uint32_t> offsets(std::size_t(v > 1 ? v - 1 : 0), 0);
  while (true) {
    std::vector<OrthonormalBasis> part;
    part.reserve(count);
    for (std::uint32_t j = 0; j < count; ++j) {
      Eigen::MatrixXcd prod = spec.basis(j).matrix();
      for (std::uint32_t off : offsets) {
        prod = kronecker(prod, spec.basis((j + off) % count).matrix());
      }
      part.emplace_back(std::move(prod));
    }
    partition.parts.push_back(std::move(part));
    if (offsets.empty()) break;
    int pos = static_cast<int>(offsets.size()) - 1;
    while (pos >= 0 && ++offsets[pos] == count) offsets[pos--] = 0;
    if (pos < 0) break;
  }
  return partition;
}

double composed_key_uncertainty_bound(const CipherSpec& spec, int v, double m_v) {
  if (v < 1) throw std::invalid_argument("fold count must be positive");
  if (m_v < 0) throw std::invalid_argument("entropy sum must be >= 0");
  return double(v) * spec.t() + m_v / double(spec.basis_count());
}

PartitionMes partition_mes(const CipherSpec& spec, int v, const MesConfig& config) {
  CompositionPartition partition = compose_partition(spec, v);
  PartitionMes out;
  out.part_count = static_cast<int>(partition.parts.size());
  out.m_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < partition.parts.size(); ++i) {
    MesResult r = mes_search(partition.parts[i], config);
    if (r.value < out.m_v) {
      out.m_v = r.value;
      out.part_index = static_cast<int>(i);
      out.converged = r.converged;
    }
  }
  return out;
}

ConjectureProbe conjecture_probe(int n, int v, const MesConfig& config) {
  if (n < 1 || v < 1 || n * v > 3) {
    throw std::invalid_argument("probe is limited to v*n <= 3");
  }
  CipherSpec spec = wn_spec(n, make_field(n));
  PartitionMes mes = partition_mes(spec, v, config);
  ConjectureProbe probe;
  probe.n = n;
  probe.v = v;
  probe.m_v = mes.m_v;
  probe.delta_estimate = delta(v * n, n, mes.m_v);
  probe.conjecture_bound = std::pow(2.0, n) - double(v * n);
  probe.part_count = mes.part_count;
  probe.restarts = config.restarts;
  probe.seed = config.seed;
  probe.converged = mes.converged;
  return probe;
}

WnUncertainty wn_full_uncertainty(int n, const MesConfig& config) {
  if (n < 1 || n > 3) throw std::invalid_argument("full search is limited to n <= 3");
  CipherSpec spec = wn_spec(n, make_field(n));
  std::vector<OrthonormalBasis> bases;
  for (std::uint32_t c = 0; c < spec.basis_count(); ++c) bases.push_back(spec.basis(c));
  MesResult mes = mes_search(bases, config);
  WnUncertainty report;
  report.n = n;
  report.mes_upper_bound = mes.value;
  report.conditional_estimate = double(n) + mes.value / double(spec.basis_count());
  report.proved_bound = 2.0 * n - 1.0;
  report.conjecture_dependent = true;
  return report;
}

}  // namespace mubkit
