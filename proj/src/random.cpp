// SPDX-License-Identifier: Apache-2.0
#include "mubkit/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mubkit {

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::integer(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = gen_();
  while (v >= limit) v = gen_();
  return v % bound;
}

Eigen::VectorXcd Rng::gaussian_vector(int dim) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = gaussian();
    double im = gaussian();
    v(i) = Cx(re, im);
  }
  return v;
}

StateVector Rng::haar_state(int dim) {
  return StateVector::normalized(gaussian_vector(dim));
}

OrthonormalBasis Rng::haar_basis(int dim) {
  Eigen::MatrixXcd g(dim, dim);
  for (int c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    Cx d = r(c, c);
    double mag = std::abs(d);
    if (mag > 0.0) q.col(c) *= d / mag;
  }
  return OrthonormalBasis(std::move(q));
}

}  // namespace mubkit
