// SPDX-License-Identifier: Apache-2.0
#include "mubkit/cipher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mubkit/bits.hpp"
#include "mubkit/mub.hpp"

namespace mubkit {

namespace {

constexpr char kQctMagic[4] = {'Q', 'C', 'T', '1'};

Eigen::MatrixXcd hadamard_power(int n) {
  Eigen::MatrixXcd h1(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  h1 << s, s, s, -s;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd next(h.rows() * 2, h.cols() * 2);
    next << h1(0, 0) * h, h1(0, 1) * h, h1(1, 0) * h, h1(1, 1) * h;
    h = std::move(next);
  }
  return h;
}

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

CipherSpec::CipherSpec(std::string name, std::uint8_t container_id, int n, int t,
                       std::vector<OrthonormalBasis> bases)
    : name_(std::move(name)), container_id_(container_id), n_(n), t_(t),
      bases_(std::move(bases)) {
  if (n_ < 1 || n_ > 8) throw std::invalid_argument("block size n must be between 1 and 8");
  if (t_ < 0 || t_ > 8) throw std::invalid_argument("basis count exponent t out of range");
  if (bases_.size() != static_cast<std::size_t>(1) << t_) {
    throw std::invalid_argument("a cipher with parameter t needs exactly 2^t bases");
  }
  for (const auto& b : bases_) {
    if (b.dim() != dim()) throw std::invalid_argument("basis dimension mismatch");
  }
  // Non-overlap: no two basis vectors of different bases may coincide up to
  // a global phase, otherwise decryption under the wrong basis could alias.
  for (std::size_t a = 0; a < bases_.size(); ++a) {
    for (std::size_t b = a + 1; b < bases_.size(); ++b) {
      Eigen::MatrixXcd cross = bases_[a].matrix().adjoint() * bases_[b].matrix();
      if ((cross.cwiseAbs().array() > 1.0 - kOffPeakTol).any()) {
        throw std::invalid_argument("bases " + std::to_string(a) + " and " +
                                    std::to_string(b) + " share a vector");
      }
    }
  }
}

const OrthonormalBasis& CipherSpec::basis(std::uint32_t c) const {
  if (c >= bases_.size()) throw std::invalid_argument("basis selector out of range");
  return bases_[c];
}

CipherSpec hn_spec(int n) {
  std::vector<OrthonormalBasis> bases;
  bases.push_back(OrthonormalBasis::computational(1 << n));
  bases.emplace_back(hadamard_power(n));
  return CipherSpec("hn", 1, n, 1, std::move(bases));
}

CipherSpec wn_spec(int n, const FieldContext& ctx) {
  if (ctx.n != n) throw std::invalid_argument("field degree mismatch");
  AlphaTensor alpha = alpha_tensor(ctx);
  std::vector<OrthonormalBasis> bases;
  bases.reserve(1u << n);
  for (std::uint32_t r = 0; r < (1u << n); ++r) bases.push_back(wf_basis(n, alpha, r));
  return CipherSpec("wn", 2, n, n, std::move(bases));
}

CipherSpec single_basis_spec(int n) {
  std::vector<OrthonormalBasis> bases;
  bases.push_back(OrthonormalBasis::computational(1 << n));
  return CipherSpec("otp", 0, n, 0, std::move(bases));
}

CipherSpec tensor_power_spec(const CipherSpec& spec, int v) {
  if (v < 1) throw std::invalid_argument("fold count must be positive");
  if (v * spec.n() > 8 || v * spec.t() > 8) {
    throw std::invalid_argument("tensor power exceeds the 8-qubit block limit");
  }
  std::uint32_t count = spec.basis_count();
  std::vector<OrthonormalBasis> bases;
  bases.reserve(std::size_t(1) << (v * spec.t()));
  std::vector<std::uint32_t> digits(v, 0);
  while (true) {
    Eigen::MatrixXcd prod = spec.basis(digits[0]).matrix();
    for (int b = 1; b < v; ++b) prod = kronecker(prod, spec.basis(digits[b]).matrix());
    bases.emplace_back(std::move(prod));
    int pos = v - 1;
    while (pos >= 0 && ++digits[pos] == count) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return CipherSpec(spec.name() + "x" + std::to_string(v), 3, v * spec.n(),
                    v * spec.t(), std::move(bases));
}

StateVector encrypt(const CipherSpec& spec, CipherKey key, std::uint32_t plaintext) {
  if (key.c >= static_cast<std::uint32_t>(spec.basis_count()) ||
      key.k >= static_cast<std::uint32_t>(spec.dim())) {
    throw std::invalid_argument("key out of range");
  }
  if (plaintext >= static_cast<std::uint32_t>(spec.dim())) {
    throw std::invalid_argument("plaintext out of range");
  }
  return StateVector(spec.unitary(key.c).col(plaintext ^ key.k));
}

namespace {

std::uint32_t peak_readout(const CipherSpec& spec, CipherKey key, const StateVector& block,
                           double* off_peak_mass) {
  if (key.c >= static_cast<std::uint32_t>(spec.basis_count()) ||
      key.k >= static_cast<std::uint32_t>(spec.dim())) {
    throw std::invalid_argument("key out of range");
  }
  if (block.dim() != spec.dim()) throw std::invalid_argument("block dimension mismatch");
  Eigen::VectorXcd y = spec.unitary(key.c).adjoint() * block.amps();
  Eigen::Index peak = 0;
  y.cwiseAbs2().maxCoeff(&peak);
  *off_peak_mass = 1.0 - std::norm(y(peak));
  return static_cast<std::uint32_t>(peak) ^ key.k;
}

}  // namespace

std::uint32_t decrypt(const CipherSpec& spec, CipherKey key, const StateVector& block) {
  double off_peak = 0.0;
  std::uint32_t plain = peak_readout(spec, key, block, &off_peak);
  if (off_peak > kOffPeakTol) {
    throw std::runtime_error("not a valid ciphertext under this key: off-peak mass " +
                             std::to_string(off_peak));
  }
  return plain;
}

std::uint32_t decrypt_best_effort(const CipherSpec& spec, CipherKey key,
                                  const StateVector& block) {
  double off_peak = 0.0;
  return peak_readout(spec, key, block, &off_peak);
}

DensityOperator cipher_rho(const CipherSpec& spec, CipherKey key) {
  std::vector<std::pair<double, StateVector>> ensemble;
  double w = 1.0 / spec.dim();
  for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(spec.dim()); ++a) {
    ensemble.emplace_back(w, encrypt(spec, key, a));
  }
  return density_from_ensemble(ensemble);
}

DensityOperator cipher_sigma(const CipherSpec& spec, std::uint32_t plaintext) {
  std::vector<std::pair<double, StateVector>> ensemble;
  double w = 1.0 / static_cast<double>(spec.key_count());
  for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(spec.basis_count()); ++c) {
    for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(spec.dim()); ++k) {
      ensemble.emplace_back(w, encrypt(spec, {c, k}, plaintext));
    }
  }
  return density_from_ensemble(ensemble);
}

double key_hiding_residual(const CipherSpec& spec) {
  std::vector<DensityOperator> rhos;
  rhos.reserve(spec.key_count());
  for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(spec.basis_count()); ++c) {
    for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(spec.dim()); ++k) {
      rhos.push_back(cipher_rho(spec, {c, k}));
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < rhos.size(); ++a) {
    for (std::size_t b = a + 1; b < rhos.size(); ++b) {
      worst = std::max(worst, trace_distance(rhos[a], rhos[b]));
    }
  }
  return worst;
}

double data_hiding_residual(const CipherSpec& spec) {
  std::vector<DensityOperator> sigmas;
  sigmas.reserve(spec.dim());
  for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(spec.dim()); ++a) {
    sigmas.push_back(cipher_sigma(spec, a));
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < sigmas.size(); ++a) {
    for (std::size_t b = a + 1; b < sigmas.size(); ++b) {
      worst = std::max(worst, trace_distance(sigmas[a], sigmas[b]));
    }
  }
  return worst;
}

RhoSigmaReport rho_sigma_check(const CipherSpec& spec) {
  DensityOperator rho = cipher_rho(spec, {0, 0});
  DensityOperator sigma = cipher_sigma(spec, 0);
  DensityOperator mixed(Eigen::MatrixXcd::Identity(spec.dim(), spec.dim()) /
                        static_cast<double>(spec.dim()));
  return {trace_distance(rho, sigma), trace_distance(rho, mixed)};
}

std::string keys_to_hex(const CipherSpec& spec, const std::vector<CipherKey>& keys) {
  int digits = (spec.m() + 3) / 4;
  std::string out;
  out.reserve(keys.size() * digits);
  const char* alphabet = "0123456789abcdef";
  for (CipherKey key : keys) {
    std::uint32_t v = (key.c << spec.n()) | key.k;
    for (int d = digits - 1; d >= 0; --d) out.push_back(alphabet[(v >> (4 * d)) & 0xF]);
  }
  return out;
}

std::vector<CipherKey> keys_from_hex(const CipherSpec& spec, const std::string& hex) {
  int digits = (spec.m() + 3) / 4;
  if (hex.empty() || hex.size() % digits != 0) {
    throw std::invalid_argument("key material must be " + std::to_string(digits) +
                                " hex digits per block");
  }
  std::vector<CipherKey> keys;
  keys.reserve(hex.size() / digits);
  for (std::size_t pos = 0; pos < hex.size(); pos += digits) {
    std::uint32_t v = 0;
    for (int d = 0; d < digits; ++d) {
      int nibble = hex_digit(hex[pos + d]);
      if (nibble < 0) throw std::invalid_argument("invalid hex digit in key material");
      v = (v << 4) | static_cast<std::uint32_t>(nibble);
    }
    if (v >= (1u << spec.m())) {
      throw std::invalid_argument("key value exceeds " + std::to_string(spec.m()) + " bits");
    }
    keys.push_back({v >> spec.n(), v & ((1u << spec.n()) - 1)});
  }
  return keys;
}

std::vector<StateVector> encrypt_blocks(const CipherSpec& spec,
                                        const std::vector<CipherKey>& keys,
                                        const std::vector<std::uint8_t>& bits) {
  if (bits.size() % spec.n() != 0) {
    throw std::invalid_argument("message length must be a multiple of n bits");
  }
  std::size_t blocks = bits.size() / spec.n();
  if (keys.size() != blocks) {
    throw std::invalid_argument("need exactly one key per block");
  }
  std::vector<StateVector> out;
  out.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint32_t p = bits_to_uint(bits.data() + b * spec.n(), spec.n());
    out.push_back(encrypt(spec, keys[b], p));
  }
  return out;
}

std::vector<std::uint8_t> decrypt_blocks(const CipherSpec& spec,
                                         const std::vector<CipherKey>& keys,
                                         const std::vector<StateVector>& blocks) {
  if (keys.size() != blocks.size()) {
    throw std::invalid_argument("need exactly one key per block");
  }
  std::vector<std::uint8_t> bits(blocks.size() * spec.n());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::uint32_t p = decrypt(spec, keys[b], blocks[b]);
    uint_to_bits(p, spec.n(), bits.data() + b * spec.n());
  }
  return bits;
}

std::vector<std::uint8_t> qct_serialize(const CipherSpec& spec,
                                        const std::vector<StateVector>& blocks) {
  std::vector<std::uint8_t> out;
  out.reserve(9 + blocks.size() * (static_cast<std::size_t>(spec.dim()) * 16));
  out.insert(out.end(), kQctMagic, kQctMagic + 4);
  out.push_back(spec.container_id());
  append_u16(out, static_cast<std::uint16_t>(spec.n()));
  append_u16(out, static_cast<std::uint16_t>(spec.t()));
  append_u32(out, static_cast<std::uint32_t>(blocks.size()));
  for (const auto& block : blocks) {
    if (block.dim() != spec.dim()) throw std::invalid_argument("block dimension mismatch");
    auto v = serialize_vector(block.amps());
    out.insert(out.end(), v.begin() + 4, v.end());  // header already carries the dim
  }
  return out;
}

QctContent qct_parse(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 13 || !std::equal(kQctMagic, kQctMagic + 4, bytes.begin())) {
    throw std::runtime_error("not a QCT1 container");
  }
  QctContent content;
  content.cipher_id = bytes[4];
  content.n = bytes[5] | (bytes[6] << 8);
  content.t = bytes[7] | (bytes[8] << 8);
  std::uint32_t count = 0;
  for (int i = 0; i < 4; ++i) count |= static_cast<std::uint32_t>(bytes[9 + i]) << (8 * i);
  if (content.n < 1 || content.n > 8) throw std::runtime_error("QCT1: bad block size");
  std::size_t dim = std::size_t{1} << content.n;
  std::size_t need = 13 + count * dim * 16;
  if (bytes.size() != need) {
    throw std::runtime_error("QCT1: expected " + std::to_string(need) + " bytes, have " +
                             std::to_string(bytes.size()));
  }
  std::size_t pos = 13;
  content.blocks.reserve(count);
  for (std::uint32_t b = 0; b < count; ++b) {
    std::vector<std::uint8_t> one;
    one.reserve(4 + dim * 16);
    append_u32(one, static_cast<std::uint32_t>(dim));
    one.insert(one.end(), bytes.begin() + pos, bytes.begin() + pos + dim * 16);
    pos += dim * 16;
    content.blocks.emplace_back(deserialize_vector(one));
  }
  return content;
}

ClassicalCipherTable::ClassicalCipherTable(int m_bits, int n_bits,
                                           std::vector<std::vector<std::uint32_t>> table)
    : m_(m_bits), n_(n_bits), table_(std::move(table)) {
  if (m_ < 1 || m_ > 20 || n_ < 1 || n_ > 16) {
    throw std::invalid_argument("table sizes out of range");
  }
  if (table_.size() != static_cast<std::size_t>(1) << m_) {
    throw std::invalid_argument("table needs one row per key");
  }
  std::size_t cols = std::size_t{1} << n_;
  for (const auto& row : table_) {
    if (row.size() != cols) throw std::invalid_argument("table row has the wrong width");
    std::vector<bool> seen(cols, false);
    for (std::uint32_t v : row) {
      if (v >= cols || seen[v]) throw std::invalid_argument("table row is not a permutation");
      seen[v] = true;
    }
  }
}

ClassicalCipherTable ClassicalCipherTable::one_time_pad(int n) {
  return redundant_one_time_pad(n, 0);
}

ClassicalCipherTable ClassicalCipherTable::redundant_one_time_pad(int n, int redundant_bits) {
  int m = n + redundant_bits;
  std::vector<std::vector<std::uint32_t>> table(std::size_t{1} << m);
  std::uint32_t mask = (1u << n) - 1;
  for (std::uint32_t key = 0; key < (1u << m); ++key) {
    auto& row = table[key];
    row.resize(std::size_t{1} << n);
    for (std::uint32_t p = 0; p <= mask; ++p) row[p] = p ^ (key & mask);
  }
  return ClassicalCipherTable(m, n, std::move(table));
}

std::uint32_t ClassicalCipherTable::apply(std::uint32_t key, std::uint32_t plaintext) const {
  if (key >= table_.size() || plaintext >= (std::size_t{1} << n_)) {
    throw std::invalid_argument("key or plaintext out of range");
  }
  return table_[key][plaintext];
}

Distribution classical_posterior(const ClassicalCipherTable& tbl, std::uint32_t p,
                                 std::uint32_t c) {
  std::size_t keys = std::size_t{1} << tbl.m();
  std::vector<double> post(keys, 0.0);
  long hits = 0;
  for (std::uint32_t key = 0; key < keys; ++key) {
    if (tbl.apply(key, p) == c) {
      post[key] = 1.0;
      ++hits;
    }
  }
  if (hits == 0) {
    throw std::runtime_error("ciphertext is not reachable from this plaintext");
  }
  for (double& v : post) v /= static_cast<double>(hits);
  return Distribution(std::move(post));
}

}  // namespace mubkit
