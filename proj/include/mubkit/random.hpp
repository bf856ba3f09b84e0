// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "mubkit/hilbert.hpp"

namespace mubkit {

/// Deterministic random source. The Gaussian path is a hand-rolled
/// Box-Muller on top of mt19937_64 so that streams are reproducible
/// independent of the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();
  /// Standard normal deviate.
  double gaussian();
  /// Uniform integer in [0, bound).
  std::uint64_t integer(std::uint64_t bound);

  Eigen::VectorXcd gaussian_vector(int dim);
  /// Haar-uniform pure state.
  StateVector haar_state(int dim);
  /// Haar-uniform basis: QR of a Gaussian matrix with phase-fixed R diagonal.
  OrthonormalBasis haar_basis(int dim);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mubkit
