// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mubkit/gf2n.hpp"
#include "mubkit/hilbert.hpp"

namespace mubkit {

/// Gate vocabulary of the phase-basis encryption circuit. Quantum gates act
/// on the simulated register; the two classical kinds move data in and out
/// of the classical matrix register A.
enum class GateKind {
  kPauliX,
  kHadamard,
  kCnot,                    ///< any number of controls; 2 controls = Toffoli
  kControlledPhase,         ///< multiplies |1> of the target by i^phase_power
  kClassicalAlphaProduct,   ///< A <- sum of alpha matrices selected by c, mod 4
  kRegisterResetUncompute,  ///< A <- 0
};

/// Gates are laid out once per circuit; whether one fires is a classical
/// function of the key bits and the A register, so gate counts do not
/// depend on the key.
struct EnableCondition {
  enum class Source { kAlways, kKeyBit, kAlphaEntryBit };
  Source source = Source::kAlways;
  int position = 0;        ///< 1-based key bit, most significant first
  int row = 0, col = 0;    ///< A entry (0-based)
  int bit = 0;             ///< which bit of the mod-4 entry
};

struct Gate {
  GateKind kind;
  bool classical = false;
  int target = -1;           ///< global qubit index
  std::vector<int> controls; ///< global qubit indices
  int phase_power = 0;       ///< d of i^d for kControlledPhase
  EnableCondition enable;
};

struct GateCounts {
  long long quantum = 0;
  long long classical_ops = 0;  ///< scalar mod-4 operations in the A stages
};

/// Encryption circuit on n data qubits plus the 2-qubit phase accumulator I
/// (global bits 0 and 1; data qubit for label position i sits at global bit
/// 2 + n - i). The classical n-by-n register A holds the selected alpha sum.
struct Circuit {
  int n = 0;
  FieldContext field;
  AlphaTensor alpha;
  std::vector<Gate> gates;
  GateCounts gate_counts;
};

/// The mod-4 matrix the classical stage places into A.
std::vector<std::vector<int>> alpha_product(const AlphaTensor& alpha, std::uint32_t c);

/// Build the circuit: X^k layer, Hadamard layer, classical A product, mod-4
/// accumulation of the quadratic form into I, the i^d phase kick, ancilla
/// uncomputation, A reset. Full-state simulation limits n to 3.
Circuit build_encrypt_circuit(int n, const FieldContext& ctx);

struct EncryptOutcome {
  StateVector data;
  double ancilla_residual;  ///< deficit of |00> ancilla mass; bounds the Schmidt residual
};

/// Run the circuit on plaintext a under key (c, k) and return the data
/// register. Throws std::logic_error when the ancilla fails to disentangle
/// within kStructuralTol, which only a broken gate list produces.
EncryptOutcome simulate_encrypt_full(const Circuit& circ, std::uint32_t a,
                                     std::uint32_t c, std::uint32_t k);
StateVector simulate_encrypt(const Circuit& circ, std::uint32_t a, std::uint32_t c,
                             std::uint32_t k);

/// Reverse-order adjoint execution; reads the plaintext off the peak
/// computational amplitude. Throws std::runtime_error when more than
/// kOffPeakTol probability sits away from the peak (wrong basis selector).
std::uint32_t simulate_decrypt(const Circuit& circ, const StateVector& data,
                               std::uint32_t c, std::uint32_t k);

/// Exhaustive (a, c, k) sweep against the directly constructed basis
/// vectors.
struct CircuitVerification {
  int n = 0;
  GateCounts gate_counts;
  double max_infidelity = 0.0;
  double max_ancilla_residual = 0.0;
};
CircuitVerification verify_circuit(const Circuit& circ);

}  // namespace mubkit
