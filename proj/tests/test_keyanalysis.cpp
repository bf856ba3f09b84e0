// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mubkit/cipher.hpp"
#include "mubkit/keyanalysis.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/random.hpp"

using namespace mubkit;

TEST_SUITE("keyanalysis") {

TEST_CASE("cipher state sets carry one state per key") {
  CipherSpec h1 = hn_spec(1);
  StateSet s = cipher_state_set(h1, 0);
  REQUIRE(s.states.size() == 4);
  CHECK(s.dim == 2);
  CHECK(s.labels[0].c == 0);
  CHECK(s.labels[3].c == 1);
  CHECK(s.labels[3].k == 1);

  std::vector<StateVector> twice{StateVector::computational(2, 0),
                                 StateVector::computational(2, 1)};
  CHECK_THROWS_AS(StateSet(std::move(twice), {{0, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("posterior entropy of a single projected outcome") {
  StateSet comp = cipher_state_set(single_basis_spec(1), 0);
  CHECK(h_u_sk(StateVector::computational(2, 0), comp) == doctest::Approx(0.0));

  StateSet h1 = cipher_state_set(hn_spec(1), 0);
  StateVector u = StateVector::computational(2, 0);
  // inner products 1, 0, 1/2, 1/2 normalize to (1/2, 0, 1/4, 1/4)
  CHECK(h_u_sk(u, h1) == doctest::Approx(1.5).epsilon(1e-12));

  Eigen::VectorXcd rotated = u.amps() * Cx(std::cos(0.7), std::sin(0.7));
  CHECK(h_u_sk(StateVector(rotated), h1) == doctest::Approx(1.5).epsilon(1e-12));

  StateSet lonely({StateVector::computational(2, 0)}, {{0, 0}});
  CHECK_THROWS_AS(h_u_sk(StateVector::computational(2, 1), lonely), std::domain_error);
}

TEST_CASE("key-guess POVM is valid and identifies keys at rate 2^{n-m}") {
  struct Case {
    CipherSpec spec;
    double rate;
  };
  for (const auto& [spec, rate] :
       {Case{hn_spec(2), 0.5}, Case{wn_spec(2, make_field(2)), 0.25},
        Case{single_basis_spec(2), 1.0}}) {
    Povm m = key_guess_povm(spec, 1);
    PovmReport r = povm_validate(m);
    CHECK(r.psd_violation <= kStructuralTol);
    CHECK(r.completeness_residual <= kStructuralTol);
    CHECK(m.elements.size() == spec.key_count() + 1);
    CHECK(m.labels.back() == "none");
    CHECK(key_identification_probability(spec, 1, m) == doctest::Approx(rate).epsilon(1e-12));
  }
}

TEST_CASE("min-entropy of the key given the guessing measurement is m - n") {
  CipherSpec h2 = hn_spec(2);
  CHECK(min_entropy_key_uncertainty(h2, 0, key_guess_povm(h2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CipherSpec w2 = wn_spec(2, make_field(2));
  CHECK(min_entropy_key_uncertainty(w2, 3, key_guess_povm(w2, 3)) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CipherSpec otp = single_basis_spec(2);
  CHECK(min_entropy_key_uncertainty(otp, 0, key_guess_povm(otp, 0)) ==
        doctest::Approx(0.0));
}

TEST_CASE("computational measurement leaves n/2 + 1 bits on the two-basis cipher") {
  for (int n : {1, 2, 3}) {
    CipherSpec spec = hn_spec(n);
    OrthonormalBasis comp = OrthonormalBasis::computational(1 << n);
    double h = povm_key_entropy(spec, 0, comp);
    CHECK(h == doctest::Approx(n / 2.0 + 1.0).epsilon(1e-12));
    // the dense-projector path agrees with the inner-product path
    CHECK(povm_key_entropy(spec, 0, projective_povm(comp)) == doctest::Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("key entropy does not depend on the plaintext") {
  for (const CipherSpec& spec : {hn_spec(2), wn_spec(2, make_field(2))}) {
    OrthonormalBasis comp = OrthonormalBasis::computational(4);
    double h0 = povm_key_entropy(spec, 0, comp);
    for (std::uint32_t a = 1; a < 4; ++a) {
      CHECK(povm_key_entropy(spec, a, comp) == doctest::Approx(h0).epsilon(1e-9));
    }
  }
}

TEST_CASE("posterior breakdown matches the single-outcome entropy") {
  CipherSpec h1 = hn_spec(1);
  StateVector u = Rng(7).haar_state(2);
  Eigen::MatrixXcd proj = 0.5 * (u.amps() * u.amps().adjoint());
  Povm m;
  m.dim = 2;
  m.elements = {proj, Eigen::MatrixXcd::Identity(2, 2) - proj};
  m.labels = {"u", "rest"};
  CHECK(povm_validate(m).completeness_residual <= kStructuralTol);

  auto outcomes = povm_key_posteriors(h1, 0, m);
  REQUIRE(outcomes.size() == 2);
  double h_direct = h_u_sk(u, cipher_state_set(h1, 0));
  double h_post = 0.0;
  for (double p : outcomes[0].posterior) {
    if (p > 0) h_post -= p * std::log2(p);
  }
  CHECK(h_post == doctest::Approx(h_direct).epsilon(1e-12));

  double h_kc = povm_key_entropy(h1, 0, m);
  double recomputed = 0.0;
  for (const auto& o : outcomes) {
    double h = 0.0;
    for (double p : o.posterior) {
      if (p > 0) h -= p * std::log2(p);
    }
    recomputed += o.probability * h;
  }
  CHECK(recomputed == doctest::Approx(h_kc).epsilon(1e-12));
}

TEST_CASE("rank-one refinement never increases the key entropy") {
  CipherSpec h2 = hn_spec(2);
  Povm coarse;
  coarse.dim = 4;
  OrthonormalBasis had = hn_spec(2).basis(1);
  Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(4, 4);
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXcd v = had.matrix().col(j);
    left += v * v.adjoint();
  }
  coarse.elements = {left, Eigen::MatrixXcd::Identity(4, 4) - left};
  coarse.labels = {"low", "high"};

  Povm fine = refine_povm(coarse);
  CHECK(fine.elements.size() == 4);
  CHECK(povm_validate(fine).completeness_residual <= kStructuralTol);
  double h_coarse = povm_key_entropy(h2, 0, coarse);
  double h_fine = povm_key_entropy(h2, 0, fine);
  CHECK(h_fine <= h_coarse + 1e-12);
}

TEST_CASE("entropy-sum search finds the analytic minima") {
  MesConfig fast;
  fast.restarts = 16;

  std::vector<OrthonormalBasis> single{OrthonormalBasis::computational(4)};
  MesResult alone = mes_search(single, fast);
  CHECK(alone.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(alone.converged);
  CHECK(std::abs(alone.argmin.amps().norm() - 1.0) < 1e-12);

  for (int n : {1, 2}) {
    CipherSpec spec = hn_spec(n);
    std::vector<OrthonormalBasis> pair{spec.basis(0), spec.basis(1)};
    MesResult r = mes_search(pair, fast);
    CHECK(r.value >= mu_bound(n) - 1e-6);
    CHECK(r.value == doctest::Approx(double(n)).epsilon(1e-4));
    CHECK(r.restarts == 16 + 2 * (1 << n));
    CHECK(int(r.trace.size()) == r.restarts);
  }
}

TEST_CASE("search is deterministic for a fixed seed") {
  CipherSpec w1 = wn_spec(1, make_field(1));
  std::vector<OrthonormalBasis> bases{w1.basis(0), w1.basis(1)};
  MesConfig config;
  config.restarts = 8;
  config.seed = 42;
  MesResult a = mes_search(bases, config);
  MesResult b = mes_search(bases, config);
  CHECK(a.value == b.value);
  CHECK(a.trace == b.trace);
  CHECK((a.argmin.amps() - b.argmin.amps()).norm() == 0.0);
}

TEST_CASE("four-basis search respects the quadratic-mean floor") {
  CipherSpec w2 = wn_spec(2, make_field(2));
  std::vector<OrthonormalBasis> bases;
  for (std::uint32_t c = 0; c < 4; ++c) bases.push_back(w2.basis(c));
  MesConfig config;
  config.restarts = 24;
  MesResult r = mes_search(bases, config);
  CHECK(r.value >= sanchez_bound(4) - 1e-6);
  CHECK(r.value <= 6.0 + 1e-9);  // basis states reach (#bases - 1) * n
}

TEST_CASE("analytic bounds evaluate to their closed forms") {
  CHECK(mu_bound(4) == 4.0);
  CHECK(sanchez_bound(2) == doctest::Approx(2.0 * std::log2(2.0 / 1.5)).epsilon(1e-15));
  CHECK(sanchez_bound(4) == doctest::Approx(4.0 * std::log2(4.0 / 1.75)).epsilon(1e-15));
  CHECK(sanchez_bound(2) == doctest::Approx(0.8300749985576876).epsilon(1e-12));
  CHECK(sanchez_bound(4) == doctest::Approx(4.770580311769583).epsilon(1e-12));
  // per-basis average grows like log2(N/2)
  CHECK(sanchez_bound(8) / 8.0 > sanchez_bound(4) / 4.0);

  CipherSpec h3 = hn_spec(3);
  CHECK(shannon_key_uncertainty_bound(h3, 3.0) == doctest::Approx(2.5));
  CipherSpec otp = single_basis_spec(3);
  CHECK(shannon_key_uncertainty_bound(otp, 1.25) == doctest::Approx(1.25));
  CHECK_THROWS_AS(shannon_key_uncertainty_bound(h3, -0.5), std::invalid_argument);

  CHECK(delta(1, 1, 1.0) == doctest::Approx(0.0));
  CHECK(delta(2, 2, 4.8) == doctest::Approx(1.2));
  CHECK_THROWS_AS(delta(1, 1, -1.0), std::invalid_argument);
}

TEST_CASE("collision probabilities over a full family always sum to 2") {
  MubFamily f1 = mub_family(1, make_field(1));
  CHECK(larsen_sum(f1, StateVector::computational(2, 0)) == doctest::Approx(2.0).epsilon(1e-12));
  AlphaTensor alpha = alpha_tensor(make_field(1));
  CHECK(larsen_sum(f1, wf_vector(1, alpha, 1, 0)) == doctest::Approx(2.0).epsilon(1e-12));

  MubFamily f2 = mub_family(2, make_field(2));
  Rng rng(2026);
  for (int i = 0; i < 20; ++i) {
    CHECK(larsen_sum(f2, rng.haar_state(4)) == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("two-fold partition splits the product family into unbiased parts") {
  CipherSpec h1 = hn_spec(1);
  CompositionPartition p = compose_partition(h1, 2);
  REQUIRE(p.parts.size() == 2);
  REQUIRE(p.parts[0].size() == 2);

  Eigen::MatrixXcd b00 = kronecker(h1.basis(0).matrix(), h1.basis(0).matrix());
  Eigen::MatrixXcd b01 = kronecker(h1.basis(0).matrix(), h1.basis(1).matrix());
  CHECK((p.parts[0][0].matrix() - b00).cwiseAbs().maxCoeff() == 0.0);
  CHECK((p.parts[1][0].matrix() - b01).cwiseAbs().maxCoeff() == 0.0);

  for (const auto& part : p.parts) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        CHECK(check_unbiased(part[i], part[j]) <= kStructuralTol);
      }
    }
  }

  // the union enumerates every product basis exactly once
  int matches = 0;
  for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
    for (std::uint32_t c2 = 0; c2 < 2; ++c2) {
      Eigen::MatrixXcd want = kronecker(h1.basis(c1).matrix(), h1.basis(c2).matrix());
      for (const auto& part : p.parts) {
        for (const auto& b : part) {
          if ((b.matrix() - want).cwiseAbs().maxCoeff() < 1e-12) ++matches;
        }
      }
    }
  }
  CHECK(matches == 4);

  CHECK_THROWS_AS(compose_partition(hn_spec(7), 2), std::invalid_argument);
}

TEST_CASE("composed bound reduces to the single-block bound at v = 1") {
  CipherSpec h2 = hn_spec(2);
  CHECK(composed_key_uncertainty_bound(h2, 1, 1.7) ==
        doctest::Approx(shannon_key_uncertainty_bound(h2, 1.7)).epsilon(1e-15));
  CHECK(composed_key_uncertainty_bound(h2, 3, 6.0) == doctest::Approx(6.0));
}

TEST_CASE("two-fold search certifies the composed key uncertainty") {
  CipherSpec h1 = hn_spec(1);
  MesConfig config;
  config.restarts = 16;
  PartitionMes mes = partition_mes(h1, 2, config);
  CHECK(mes.part_count == 2);
  CHECK(mes.m_v >= mu_bound(2) - 1e-6);  // each part is a pair of unbiased bases in dim 4
  double bound = composed_key_uncertainty_bound(h1, 2, mes.m_v);
  CHECK(bound >= 3.0 - 1e-4);
  CHECK(bound <= 3.0 + 1e-9);
}

TEST_CASE("independent blocks tensor into one cipher") {
  CipherSpec h1 = hn_spec(1);
  CipherSpec twice = tensor_power_spec(h1, 2);
  CHECK(twice.n() == 2);
  CHECK(twice.t() == 2);
  CHECK(twice.key_count() == 16);

  for (std::uint32_t c = 0; c < 4; ++c) {
    for (std::uint32_t k = 0; k < 4; ++k) {
      for (std::uint32_t a = 0; a < 4; ++a) {
        StateVector whole = encrypt(twice, {c, k}, a);
        StateVector left = encrypt(h1, {c >> 1, k >> 1}, a >> 1);
        StateVector right = encrypt(h1, {c & 1, k & 1}, a & 1);
        Eigen::MatrixXcd prod = kronecker(left.amps(), right.amps());
        CHECK((whole.amps() - prod.col(0)).norm() < 1e-14);
      }
    }
  }

  double h = povm_key_entropy(twice, 0, OrthonormalBasis::computational(4));
  CHECK(h == doctest::Approx(3.0).epsilon(1e-9));  // v * (n/2 + 1)
}

TEST_CASE("gap probes stay inside the conjectured window") {
  MesConfig config;
  config.restarts = 16;
  for (auto [n, v] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    ConjectureProbe probe = conjecture_probe(n, v, config);
    CHECK(probe.delta_estimate >= -1e-4);
    CHECK(probe.delta_estimate <= probe.conjecture_bound + 1e-3);
    CHECK(probe.part_count == (v == 1 ? 1 : (1 << n)));
    CHECK(probe.restarts == 16);
  }
  CHECK_THROWS_AS(conjecture_probe(2, 2, config), std::invalid_argument);
}

TEST_CASE("full phase-family uncertainty sits above the proved floor") {
  MesConfig config;
  config.restarts = 16;
  for (int n : {1, 2}) {
    WnUncertainty w = wn_full_uncertainty(n, config);
    CHECK(w.proved_bound == doctest::Approx(2.0 * n - 1.0));
    CHECK(w.conditional_estimate >= w.proved_bound - 1e-6);
    CHECK(w.conditional_estimate <= 2.0 * n + 1e-9);
    CHECK(w.conjecture_dependent);
  }
}

}  // TEST_SUITE
