// SPDX-License-Identifier: Apache-2.0
#include "mubkit/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mubkit/mub.hpp"

namespace mubkit {

namespace {

constexpr Cx kPhase[4] = {Cx(1, 0), Cx(0, 1), Cx(-1, 0), Cx(0, -1)};

/// Global bit of the data qubit carrying label position i (1-based,
/// most significant first). Bits 0 and 1 belong to the I register.
int data_bit(int n, int position) { return 2 + n - position; }

struct ExecutionState {
  Eigen::VectorXcd amps;
  std::vector<std::vector<int>> a_reg;
};

bool gate_enabled(const Gate& g, int n, std::uint32_t k, const ExecutionState& st) {
  switch (g.enable.source) {
    case EnableCondition::Source::kAlways:
      return true;
    case EnableCondition::Source::kKeyBit:
      return bit_of(k, g.enable.position, n) != 0;
    case EnableCondition::Source::kAlphaEntryBit:
      return ((st.a_reg[g.enable.row][g.enable.col] >> g.enable.bit) & 1) != 0;
  }
  return false;
}

void apply_quantum(const Gate& g, ExecutionState& st, bool adjoint) {
  Eigen::VectorXcd& v = st.amps;
  const auto dim = static_cast<std::uint64_t>(v.size());
  std::uint64_t tbit = std::uint64_t(1) << g.target;
  std::uint64_t cmask = 0;
  for (int c : g.controls) cmask |= std::uint64_t(1) << c;

  switch (g.kind) {
    case GateKind::kPauliX:
    case GateKind::kCnot:
      for (std::uint64_t x = 0; x < dim; ++x) {
        if ((x & tbit) || (x & cmask) != cmask) continue;
        std::swap(v(x), v(x | tbit));
      }
      break;
    case GateKind::kHadamard: {
      double s = 1.0 / std::sqrt(2.0);
      for (std::uint64_t x = 0; x < dim; ++x) {
        if (x & tbit) continue;
        Cx lo = v(x);
        Cx hi = v(x | tbit);
        v(x) = s * (lo + hi);
        v(x | tbit) = s * (lo - hi);
      }
      break;
    }
    case GateKind::kControlledPhase: {
      int d = ((adjoint ? 4 - g.phase_power : g.phase_power) % 4 + 4) % 4;
      for (std::uint64_t x = 0; x < dim; ++x) {
        if (x & tbit) v(x) *= kPhase[d];
      }
      break;
    }
    default:
      throw std::logic_error("classical gate routed to the quantum engine");
  }
}

void run(const Circuit& circ, ExecutionState& st, std::uint32_t c, std::uint32_t k,
         bool reverse) {
  auto apply = [&](const Gate& g) {
    if (g.classical) {
      // In reverse the reset slot recomputes A (the phase gates behind it
      // need the entries) and the product slot clears it.
      bool compute = (g.kind == GateKind::kClassicalAlphaProduct) != reverse;
      if (compute) {
        st.a_reg = alpha_product(circ.alpha, c);
      } else {
        for (auto& row : st.a_reg) std::fill(row.begin(), row.end(), 0);
      }
      return;
    }
    if (gate_enabled(g, circ.n, k, st)) apply_quantum(g, st, reverse);
  };
  if (reverse) {
    for (auto it = circ.gates.rbegin(); it != circ.gates.rend(); ++it) apply(*it);
  } else {
    for (const Gate& g : circ.gates) apply(g);
  }
}

void check_labels(const Circuit& circ, std::uint32_t a, std::uint32_t c, std::uint32_t k) {
  std::uint32_t dim = 1u << circ.n;
  if (a >= dim || c >= dim || k >= dim) {
    throw std::invalid_argument("label out of range for the register width");
  }
}

}  // namespace

std::vector<std::vector<int>> alpha_product(const AlphaTensor& alpha, std::uint32_t c) {
  int n = alpha.n;
  if (c >= (1u << n)) throw std::invalid_argument("basis selector out of range");
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (int m = 1; m <= n; ++m) {
    if (!bit_of(c, m, n)) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out[i][j] = (out[i][j] + alpha.a[m - 1][i][j]) & 3;
    }
  }
  return out;
}

Circuit build_encrypt_circuit(int n, const FieldContext& ctx) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("full-state simulation supports n up to 3");
  }
  if (ctx.n != n) throw std::invalid_argument("field degree mismatch");

  Circuit circ;
  circ.n = n;
  circ.field = ctx;
  circ.alpha = alpha_tensor(ctx);

  auto key_bit = [](int pos) {
    EnableCondition e;
    e.source = EnableCondition::Source::kKeyBit;
    e.position = pos;
    return e;
  };
  auto alpha_bit = [](int row, int col, int bit) {
    EnableCondition e;
    e.source = EnableCondition::Source::kAlphaEntryBit;
    e.row = row;
    e.col = col;
    e.bit = bit;
    return e;
  };

  for (int i = 1; i <= n; ++i) {
    circ.gates.push_back({GateKind::kPauliX, false, data_bit(n, i), {}, 0, key_bit(i)});
  }
  for (int i = 1; i <= n; ++i) {
    circ.gates.push_back({GateKind::kHadamard, false, data_bit(n, i), {}, 0, {}});
  }
  circ.gates.push_back({GateKind::kClassicalAlphaProduct, true, -1, {}, 0, {}});

  // d = l^T A l mod 4 into the I register: the diagonal entry A_ii adds
  // (bit0 + 2*bit1)*l_i, the off-diagonal pair adds 2*A_ij*l_i*l_j.
  std::vector<Gate> accumulate;
  for (int i = 0; i < n; ++i) {
    int q = data_bit(n, i + 1);
    accumulate.push_back({GateKind::kCnot, false, 1, {q, 0}, 0, alpha_bit(i, i, 0)});
    accumulate.push_back({GateKind::kCnot, false, 0, {q}, 0, alpha_bit(i, i, 0)});
    accumulate.push_back({GateKind::kCnot, false, 1, {q}, 0, alpha_bit(i, i, 1)});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      accumulate.push_back({GateKind::kCnot, false, 1,
                            {data_bit(n, i + 1), data_bit(n, j + 1)}, 0,
                            alpha_bit(i, j, 0)});
    }
  }
  for (const Gate& g : accumulate) circ.gates.push_back(g);
  circ.gates.push_back({GateKind::kControlledPhase, false, 0, {}, 1, {}});
  circ.gates.push_back({GateKind::kControlledPhase, false, 1, {}, 2, {}});
  for (auto it = accumulate.rbegin(); it != accumulate.rend(); ++it) circ.gates.push_back(*it);
  circ.gates.push_back({GateKind::kRegisterResetUncompute, true, -1, {}, 0, {}});

  for (const Gate& g : circ.gates) {
    if (!g.classical) ++circ.gate_counts.quantum;
  }
  circ.gate_counts.classical_ops =
      static_cast<long long>(n) * n * n + static_cast<long long>(n) * n;
  return circ;
}

EncryptOutcome simulate_encrypt_full(const Circuit& circ, std::uint32_t a,
                                     std::uint32_t c, std::uint32_t k) {
  check_labels(circ, a, c, k);
  int n = circ.n;
  ExecutionState st;
  st.amps = Eigen::VectorXcd::Zero(std::int64_t(1) << (n + 2));
  st.amps(std::uint64_t(a) << 2) = 1.0;
  st.a_reg.assign(n, std::vector<int>(n, 0));
  run(circ, st, c, k, false);

  std::uint32_t dim = 1u << n;
  Eigen::VectorXcd data(dim);
  double mass00 = 0.0;
  for (std::uint32_t l = 0; l < dim; ++l) {
    data(l) = st.amps(std::uint64_t(l) << 2);
    mass00 += std::norm(data(l));
  }
  // Schmidt check across the data|ancilla cut; the |00> column deficit
  // upper-bounds 1 - sigma_max^2.
  Eigen::MatrixXcd m(dim, 4);
  for (std::uint32_t l = 0; l < dim; ++l) {
    for (int r = 0; r < 4; ++r) m(l, r) = st.amps((std::uint64_t(l) << 2) | r);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double top = svd.singularValues()(0);
  double residual = std::max(1.0 - mass00, 1.0 - top * top);
  if (residual > kStructuralTol) {
    throw std::logic_error("ancilla register failed to disentangle");
  }
  data /= std::sqrt(mass00);
  return {StateVector(std::move(data)), residual};
}

StateVector simulate_encrypt(const Circuit& circ, std::uint32_t a, std::uint32_t c,
                             std::uint32_t k) {
  return simulate_encrypt_full(circ, a, c, k).data;
}

std::uint32_t simulate_decrypt(const Circuit& circ, const StateVector& data,
                               std::uint32_t c, std::uint32_t k) {
  check_labels(circ, 0, c, k);
  int n = circ.n;
  std::uint32_t dim = 1u << n;
  if (data.dim() != int(dim)) throw std::invalid_argument("state dimension mismatch");

  ExecutionState st;
  st.amps = Eigen::VectorXcd::Zero(std::int64_t(1) << (n + 2));
  for (std::uint32_t l = 0; l < dim; ++l) st.amps(std::uint64_t(l) << 2) = data.amp(l);
  st.a_reg.assign(n, std::vector<int>(n, 0));
  run(circ, st, c, k, true);

  Eigen::Index peak = 0;
  st.amps.cwiseAbs2().maxCoeff(&peak);
  double off_peak = 1.0 - std::norm(st.amps(peak));
  if (off_peak > kOffPeakTol || (peak & 3) != 0) {
    throw std::runtime_error("decryption produced off-peak probability mass");
  }
  return static_cast<std::uint32_t>(peak >> 2);
}

CircuitVerification verify_circuit(const Circuit& circ) {
  CircuitVerification v;
  v.n = circ.n;
  v.gate_counts = circ.gate_counts;
  std::uint32_t dim = 1u << circ.n;
  for (std::uint32_t a = 0; a < dim; ++a) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      for (std::uint32_t k = 0; k < dim; ++k) {
        EncryptOutcome out = simulate_encrypt_full(circ, a, c, k);
        StateVector want = wf_vector(circ.n, circ.alpha, c, a ^ k);
        double fid = std::norm(want.amps().dot(out.data.amps()));
        v.max_infidelity = std::max(v.max_infidelity, 1.0 - fid);
        v.max_ancilla_residual = std::max(v.max_ancilla_residual, out.ancilla_residual);
      }
    }
  }
  return v;
}

}  // namespace mubkit
