// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mubkit/hilbert.hpp"
#include "mubkit/random.hpp"

using namespace mubkit;

namespace {

OrthonormalBasis hadamard_basis() {
  Eigen::MatrixXcd h(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return OrthonormalBasis(std::move(h));
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("state vectors enforce normalization and power-of-two dimension") {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{v}, std::invalid_argument);
  StateVector s = StateVector::normalized(v);
  CHECK(s.dim() == 2);
  CHECK(std::abs(s.amp(0) - Cx(1 / std::sqrt(2.0), 0)) < 1e-15);

  Eigen::VectorXcd bad(3);
  bad << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(StateVector{bad}, std::invalid_argument);

  CHECK_THROWS_AS(StateVector::normalized(Eigen::VectorXcd::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("distributions validate total mass") {
  CHECK_NOTHROW(Distribution({0.5, 0.5}));
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution({1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("shannon entropy on known distributions") {
  CHECK(shannon_entropy(Distribution({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(shannon_entropy(Distribution({0.5, 0.25, 0.25})) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(shannon_entropy(Distribution({1.0, 0.0})) == doctest::Approx(0.0));
}

TEST_CASE("min entropy and collision probability") {
  CHECK(min_entropy(Distribution({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(min_entropy(Distribution({1.0, 0.0})) == doctest::Approx(0.0));
  CHECK(min_entropy(Distribution({0.5, 0.25, 0.25})) == doctest::Approx(1.0));
  CHECK(collision_probability(Distribution({0.5, 0.5})) == doctest::Approx(0.5));
  CHECK(collision_probability(Distribution({1.0})) == doctest::Approx(1.0));
  CHECK(collision_probability(Distribution({0.5, 0.25, 0.25})) == doctest::Approx(0.375));
}

TEST_CASE("entropy is invariant under permutation and state phase") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector u = rng.haar_state(8);
    OrthonormalBasis basis = rng.haar_basis(8);
    Distribution p = measure_in_basis(u, basis);
    double h = shannon_entropy(p);

    auto probs = p.probs();
    std::reverse(probs.begin(), probs.end());
    CHECK(shannon_entropy(Distribution(probs)) == doctest::Approx(h).epsilon(1e-12));

    StateVector phased(u.amps() * Cx(std::cos(1.1), std::sin(1.1)));
    CHECK(shannon_entropy(measure_in_basis(phased, basis)) ==
          doctest::Approx(h).epsilon(1e-11));
  }
}

TEST_CASE("measurement in matching and unbiased bases") {
  StateVector zero = StateVector::computational(2, 0);
  Distribution comp = measure_in_basis(zero, OrthonormalBasis::computational(2));
  CHECK(comp[0] == doctest::Approx(1.0));
  CHECK(comp[1] == doctest::Approx(0.0));

  Distribution had = measure_in_basis(zero, hadamard_basis());
  CHECK(had[0] == doctest::Approx(0.5));
  CHECK(had[1] == doctest::Approx(0.5));

  Rng rng(11);
  StateVector u = rng.haar_state(16);
  Distribution p = measure_in_basis(u, rng.haar_basis(16));
  double total = 0.0;
  for (double v : p.probs()) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("densities from ensembles") {
  StateVector zero = StateVector::computational(2, 0);
  DensityOperator pure = density_from_ensemble({{1.0, zero}});
  CHECK(std::abs(pure.matrix()(0, 0) - Cx(1, 0)) < 1e-15);

  // Mixing a basis uniformly gives the maximally mixed state.
  OrthonormalBasis b = hadamard_basis();
  DensityOperator mixed = density_from_ensemble({{0.5, b.vector(0)}, {0.5, b.vector(1)}});
  CHECK((mixed.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);

  // The four states |0>, |1>, H|0>, H|1> mixed uniformly do the same.
  DensityOperator four = density_from_ensemble({{0.25, StateVector::computational(2, 0)},
                                                {0.25, StateVector::computational(2, 1)},
                                                {0.25, b.vector(0)},
                                                {0.25, b.vector(1)}});
  CHECK((four.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);

  CHECK_THROWS_AS(density_from_ensemble({{0.7, zero}}), std::invalid_argument);
}

TEST_CASE("density construction rejects bad matrices") {
  Eigen::MatrixXcd m(2, 2);
  m << Cx(0.5, 0), Cx(0, 0.3), Cx(0, 0.3), Cx(0.5, 0);  // not Hermitian
  CHECK_THROWS_AS(DensityOperator{m}, std::invalid_argument);
  m << 0.9, 0, 0, 0.9;  // trace != 1
  CHECK_THROWS_AS(DensityOperator{m}, std::invalid_argument);
  m << 1.5, 0, 0, -0.5;  // negative eigenvalue
  CHECK_THROWS_AS(DensityOperator{m}, std::invalid_argument);
}

TEST_CASE("trace distance") {
  DensityOperator zero = density_from_ensemble({{1.0, StateVector::computational(2, 0)}});
  DensityOperator one = density_from_ensemble({{1.0, StateVector::computational(2, 1)}});
  DensityOperator mixed = DensityOperator(0.5 * Eigen::MatrixXcd::Identity(2, 2));

  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
  CHECK(trace_distance(zero, mixed) == doctest::Approx(0.5));
  CHECK(trace_distance(mixed, zero) == doctest::Approx(0.5));

  DensityOperator big(0.25 * Eigen::MatrixXcd::Identity(4, 4));
  CHECK_THROWS_AS(trace_distance(zero, big), std::invalid_argument);
}

TEST_CASE("povm validation") {
  Povm comp = projective_povm(OrthonormalBasis::computational(4));
  PovmReport r = povm_validate(comp);
  CHECK(r.psd_violation <= kStructuralTol);
  CHECK(r.completeness_residual <= kStructuralTol);

  // Scaling every element by 0.9 leaves a completeness residual of 0.1.
  Povm scaled = comp;
  for (auto& e : scaled.elements) e *= 0.9;
  r = povm_validate(scaled);
  CHECK(r.psd_violation <= kStructuralTol);
  CHECK(r.completeness_residual == doctest::Approx(0.1).epsilon(1e-9));
  CHECK_THROWS_AS(checked_povm(4, scaled.elements, scaled.labels), std::runtime_error);

  // A negative element shows up as a PSD violation.
  Povm neg = comp;
  neg.elements[0] = -neg.elements[0];
  r = povm_validate(neg);
  CHECK(r.psd_violation == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vector and matrix byte serialization round-trips") {
  Rng rng(23);
  Eigen::VectorXcd v = rng.gaussian_vector(5);
  auto bytes = serialize_vector(v);
  CHECK(bytes.size() == 4 + 16 * 5);
  Eigen::VectorXcd back = deserialize_vector(bytes);
  CHECK((v - back).cwiseAbs().maxCoeff() == 0.0);
  CHECK(serialize_vector(back) == bytes);

  Eigen::MatrixXcd m(3, 3);
  for (int r2 = 0; r2 < 3; ++r2)
    for (int c = 0; c < 3; ++c) m(r2, c) = Cx(rng.gaussian(), rng.gaussian());
  auto mb = serialize_matrix(m);
  Eigen::MatrixXcd mback = deserialize_matrix(mb);
  CHECK((m - mback).cwiseAbs().maxCoeff() == 0.0);

  // Frozen layout check: dim prefix is little-endian u32, doubles follow.
  Eigen::VectorXcd unit(1);
  unit << Cx(1.0, 0.0);
  auto ub = serialize_vector(unit);
  REQUIRE(ub.size() == 20);
  CHECK(ub[0] == 1); CHECK(ub[1] == 0); CHECK(ub[2] == 0); CHECK(ub[3] == 0);
  // 1.0 in IEEE-754: 00 00 00 00 00 00 F0 3F
  CHECK(ub[10] == 0xF0);
  CHECK(ub[11] == 0x3F);

  bytes.pop_back();
  CHECK_THROWS_AS(deserialize_vector(bytes), std::runtime_error);
}

TEST_CASE("random helpers are deterministic under a fixed seed") {
  Rng a(404), b(404);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
  CHECK((a.haar_state(8).amps() - b.haar_state(8).amps()).norm() == 0.0);
  CHECK((a.haar_basis(4).matrix() - b.haar_basis(4).matrix()).norm() == 0.0);
  CHECK(a.integer(100) == b.integer(100));
}

}  // TEST_SUITE
