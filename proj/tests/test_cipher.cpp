// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mubkit/bits.hpp"
#include "mubkit/cipher.hpp"
#include "mubkit/mub.hpp"
#include "mubkit/random.hpp"

using namespace mubkit;

TEST_SUITE("cipher") {

TEST_CASE("spec parameters") {
  CipherSpec h2 = hn_spec(2);
  CHECK(h2.n() == 2);
  CHECK(h2.t() == 1);
  CHECK(h2.m() == 3);
  CHECK(h2.key_count() == 8);
  CHECK(h2.basis_count() == 2);

  CipherSpec w2 = wn_spec(2, make_field(2));
  CHECK(w2.t() == 2);
  CHECK(w2.m() == 4);
  CHECK(w2.key_count() == 16);
  CHECK(w2.basis_count() == 4);

  CipherSpec otp = single_basis_spec(3);
  CHECK(otp.t() == 0);
  CHECK(otp.m() == 3);
  CHECK(otp.basis_count() == 1);
}

TEST_CASE("duplicate bases are rejected") {
  std::vector<OrthonormalBasis> twice{OrthonormalBasis::computational(2),
                                      OrthonormalBasis::computational(2)};
  CHECK_THROWS_AS(CipherSpec("dup", 9, 1, 1, std::move(twice)), std::invalid_argument);
}

TEST_CASE("single qubit encryptions match hand results") {
  CipherSpec h1 = hn_spec(1);
  double s = 1.0 / std::sqrt(2.0);

  StateVector c0 = encrypt(h1, {0, 0}, 0);
  CHECK(std::abs(c0.amp(0) - Cx(1, 0)) < 1e-15);

  StateVector c1 = encrypt(h1, {1, 1}, 0);  // H|1>
  CHECK(std::abs(c1.amp(0) - Cx(s, 0)) < 1e-15);
  CHECK(std::abs(c1.amp(1) - Cx(-s, 0)) < 1e-15);

  CipherSpec w1 = wn_spec(1, make_field(1));
  StateVector circ = encrypt(w1, {1, 0}, 0);  // circular basis vector
  CHECK(std::abs(circ.amp(0) - Cx(s, 0)) < 1e-15);
  CHECK(std::abs(circ.amp(1) - Cx(0, s)) < 1e-15);
}

TEST_CASE("phase-cipher blocks equal the phase-basis vectors directly") {
  auto ctx = make_field(2);
  auto alpha = alpha_tensor(ctx);
  CipherSpec w2 = wn_spec(2, ctx);
  for (std::uint32_t c = 0; c < 4; ++c) {
    for (std::uint32_t k = 0; k < 4; ++k) {
      for (std::uint32_t a = 0; a < 4; ++a) {
        StateVector enc = encrypt(w2, {c, k}, a);
        StateVector ref = wf_vector(2, alpha, c, a ^ k);
        CHECK((enc.amps() - ref.amps()).norm() < 1e-14);
      }
    }
  }
}

TEST_CASE("round trips are exact for every key and plaintext") {
  for (int n = 1; n <= 4; ++n) {
    CipherSpec spec = hn_spec(n);
    for (std::uint32_t c = 0; c < 2; ++c) {
      for (std::uint32_t k = 0; k < (1u << n); ++k) {
        for (std::uint32_t a = 0; a < (1u << n); ++a) {
          CHECK(decrypt(spec, {c, k}, encrypt(spec, {c, k}, a)) == a);
        }
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    CipherSpec spec = wn_spec(n, make_field(n));
    for (std::uint32_t c = 0; c < (1u << n); ++c) {
      for (std::uint32_t k = 0; k < (1u << n); ++k) {
        for (std::uint32_t a = 0; a < (1u << n); ++a) {
          CHECK(decrypt(spec, {c, k}, encrypt(spec, {c, k}, a)) == a);
        }
      }
    }
  }
}

TEST_CASE("wrong basis selector is detected, wrong mask silently misdecrypts") {
  CipherSpec h1 = hn_spec(1);
  StateVector block = encrypt(h1, {1, 0}, 0);
  CHECK_THROWS_AS(decrypt(h1, {0, 0}, block), std::runtime_error);

  StateVector b2 = encrypt(h1, {0, 0}, 0);
  CHECK(decrypt(h1, {0, 1}, b2) == 1);  // mask error flips the plaintext
}

TEST_CASE("key and data hiding residuals vanish") {
  for (const CipherSpec& spec :
       {hn_spec(2), wn_spec(2, make_field(2)), single_basis_spec(2)}) {
    CHECK(key_hiding_residual(spec) <= kStructuralTol);
    CHECK(data_hiding_residual(spec) <= kStructuralTol);
    RhoSigmaReport r = rho_sigma_check(spec);
    CHECK(r.rho_sigma_distance <= kStructuralTol);
    CHECK(r.rho_mixed_distance <= kStructuralTol);
  }
}

TEST_CASE("key hex round trip and validation") {
  CipherSpec w2 = wn_spec(2, make_field(2));  // m = 4, one digit per block
  std::vector<CipherKey> keys{{0, 0}, {3, 2}, {1, 1}};
  std::string hex = keys_to_hex(w2, keys);
  CHECK(hex == "0e5");
  auto back = keys_from_hex(w2, hex);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].c == keys[i].c);
    CHECK(back[i].k == keys[i].k);
  }

  CipherSpec h2 = hn_spec(2);  // m = 3: one digit per block, top bit must be 0
  CHECK_THROWS_AS(keys_from_hex(h2, "9"), std::invalid_argument);
  CHECK_THROWS_AS(keys_from_hex(h2, ""), std::invalid_argument);
  CHECK_THROWS_AS(keys_from_hex(h2, "0g"), std::invalid_argument);

  CipherSpec h3 = hn_spec(3);  // m = 4
  auto parsed = keys_from_hex(h3, "9");
  CHECK(parsed[0].c == 1);
  CHECK(parsed[0].k == 1);
}

TEST_CASE("block helpers require matching key counts and block sizes") {
  CipherSpec h2 = hn_spec(2);
  std::vector<std::uint8_t> bits{1, 0, 0, 1};  // two blocks
  auto keys = keys_from_hex(h2, "52");
  auto blocks = encrypt_blocks(h2, keys, bits);
  REQUIRE(blocks.size() == 2);
  CHECK(decrypt_blocks(h2, keys, blocks) == bits);

  CHECK_THROWS_AS(encrypt_blocks(h2, keys, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(encrypt_blocks(h2, {keys[0]}, bits), std::invalid_argument);
}

TEST_CASE("ciphertext container round trip is byte exact") {
  CipherSpec w2 = wn_spec(2, make_field(2));
  std::vector<std::uint8_t> bits{0, 1, 1, 0, 1, 1};
  auto keys = keys_from_hex(w2, "7a1");
  auto blocks = encrypt_blocks(w2, keys, bits);
  auto bytes = qct_serialize(w2, blocks);

  // magic, id, n, t, block count
  CHECK(bytes[0] == 'Q');
  CHECK(bytes[1] == 'C');
  CHECK(bytes[2] == 'T');
  CHECK(bytes[3] == '1');
  CHECK(bytes[4] == 2);
  CHECK(bytes[5] == 2);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 2);
  CHECK(bytes[9] == 3);
  CHECK(bytes.size() == 13 + 3 * 4 * 16);

  QctContent content = qct_parse(bytes);
  CHECK(content.cipher_id == 2);
  CHECK(content.n == 2);
  CHECK(content.t == 2);
  REQUIRE(content.blocks.size() == 3);
  CHECK(decrypt_blocks(w2, keys, content.blocks) == bits);
  CHECK(qct_serialize(w2, content.blocks) == bytes);

  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(qct_parse(truncated), std::runtime_error);
  auto wrong = bytes;
  wrong[0] = 'X';
  CHECK_THROWS_AS(qct_parse(wrong), std::runtime_error);
}

TEST_CASE("one time pad posterior is a point mass") {
  for (int n : {2, 3}) {
    auto tbl = ClassicalCipherTable::one_time_pad(n);
    for (std::uint32_t p = 0; p < (1u << n); ++p) {
      for (std::uint32_t c = 0; c < (1u << n); ++c) {
        Distribution post = classical_posterior(tbl, p, c);
        CHECK(shannon_entropy(post) == doctest::Approx(0.0));
        CHECK(post[p ^ c] == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("redundant key bits leave exactly the predicted uncertainty") {
  // One spare key bit: every (p, c) pair stays consistent with exactly
  // |K|/|P| = 2 keys, and the posterior entropy is m - n = 1 bit.
  auto tbl = ClassicalCipherTable::redundant_one_time_pad(2, 1);
  CHECK(tbl.m() == 3);
  for (std::uint32_t p = 0; p < 4; ++p) {
    for (std::uint32_t c = 0; c < 4; ++c) {
      Distribution post = classical_posterior(tbl, p, c);
      int support = 0;
      for (double v : post.probs())
        if (v > 0) ++support;
      CHECK(support == 2);
      CHECK(shannon_entropy(post) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(min_entropy(post) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("tables reject malformed rows") {
  std::vector<std::vector<std::uint32_t>> rows{{0, 1}, {0, 0}};
  CHECK_THROWS_AS(ClassicalCipherTable(1, 1, std::move(rows)), std::invalid_argument);
}

TEST_CASE("inconsistent plaintext-ciphertext pairs are reported") {
  // A 1-bit cipher that ignores its key cannot produce c != p.
  std::vector<std::vector<std::uint32_t>> rows{{0, 1}, {0, 1}};
  ClassicalCipherTable identity(1, 1, std::move(rows));
  CHECK_THROWS_AS(classical_posterior(identity, 0, 1), std::runtime_error);
  Distribution post = classical_posterior(identity, 0, 0);
  CHECK(shannon_entropy(post) == doctest::Approx(1.0));
}

}  // TEST_SUITE
