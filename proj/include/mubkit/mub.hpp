// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mubkit/gf2n.hpp"
#include "mubkit/hilbert.hpp"

namespace mubkit {

/// Bit i of an n-bit label with the leftmost (most significant) bit as
/// position 1. Labels, key halves and computational indices all use this
/// convention throughout the library.
inline int bit_of(std::uint32_t x, int i, int n) {
  return static_cast<int>((x >> (n - i)) & 1u);
}

struct UnbiasednessCertificate {
  long pairs_checked = 0;     ///< vector pairs inspected
  double max_deviation = 0;   ///< worst | |<u|v>|^2 - 1/dim |
  bool sampled = false;       ///< false when every cross pair was checked
};

/// 2^n phase bases plus the computational basis, with the certificate that
/// was produced while constructing them.
struct MubFamily {
  int n = 0;
  std::vector<OrthonormalBasis> bases;  ///< phase bases by label r, computational last
  UnbiasednessCertificate certificate;

  int dim() const { return 1 << n; }
  int computational_index() const { return 1 << n; }
};

/// Worst-case deviation of | |<u|v>|^2 | from 1/dim over all column pairs.
double check_unbiased(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Phase-basis vector with label (r, s): the amplitude at computational
/// index l is 2^{-n/2} * i^{l^T (r.alpha) l} * (-1)^{s.l}, the quadratic
/// form evaluated over the integers and reduced mod 4.
StateVector wf_vector(int n, const AlphaTensor& alpha, std::uint32_t r, std::uint32_t s);

/// All 2^n vectors of the phase basis labelled r, in column order s.
OrthonormalBasis wf_basis(int n, const AlphaTensor& alpha, std::uint32_t r);

/// Build the full family of 2^n + 1 bases and certify unbiasedness:
/// every cross pair for n <= 3, or 1024 seeded random samples for n in 4..6.
MubFamily mub_family(int n, const FieldContext& ctx);
MubFamily mub_family(int n, const FieldContext& ctx, bool full_check, std::uint64_t seed);

}  // namespace mubkit
