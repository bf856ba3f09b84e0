// SPDX-License-Identifier: Apache-2.0
#include "mubkit/stream.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "mubkit/bits.hpp"

namespace mubkit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::size_t kHeaderSize = 27;

int width_for(std::uint64_t max_bits) {
  if (max_bits < 2) throw std::invalid_argument("stream length must be at least 2 bits");
  int w = std::bit_width(max_bits - 1);
  if (w > 16) throw std::invalid_argument("stream length above the 2^16-bit cap");
  return w;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back(v >> 8);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

KeystreamGenerator KeystreamGenerator::from_coefficients(
    std::uint64_t max_bits, std::vector<std::uint32_t> coefficients, MixerKind mixer,
    std::uint64_t mixer_key) {
  if (coefficients.empty()) throw std::invalid_argument("at least one coefficient required");
  if (coefficients.size() > max_bits) {
    throw std::invalid_argument("polynomial degree exceeds the evaluation domain");
  }
  KeystreamGenerator gen;
  gen.field_ = make_field(width_for(max_bits));
  std::uint32_t mask = (1u << gen.field_.n) - 1;
  for (std::uint32_t c : coefficients) {
    if (c > mask) throw std::invalid_argument("coefficient exceeds the field width");
  }
  gen.coefficients_ = std::move(coefficients);
  gen.max_bits_ = max_bits;
  gen.seed_bits_ = gen.coefficients_.size() * std::size_t(gen.field_.n);
  gen.mixer_ = mixer;
  gen.mixer_key_ = mixer_key;
  return gen;
}

KeystreamGenerator KeystreamGenerator::from_key_material(
    int e, std::uint64_t max_bits, const std::vector<std::uint8_t>& seed, MixerKind mixer) {
  if (e < 1) throw std::invalid_argument("local-randomness parameter must be >= 1");
  if (seed.empty()) throw std::invalid_argument("seed must not be empty");
  int w = width_for(max_bits);
  double k = 8.0 * double(seed.size());
  if (double(e) * std::log2(double(max_bits)) > k + 1e-9) {
    throw std::invalid_argument("seed too short: e exceeds k / log2(N)");
  }
  // FNV-1a fold, then counter-mode stretch into coefficients and mixer key.
  std::uint64_t state = 0xcbf29ce484222325ull;
  for (std::uint8_t b : seed) state = (state ^ b) * 0x100000001b3ull;
  std::vector<std::uint32_t> coeffs(e);
  std::uint32_t mask = (1u << w) - 1;
  for (int j = 0; j < e; ++j) coeffs[j] = std::uint32_t(splitmix64(state + kGolden * j)) & mask;
  std::uint64_t mixer_key = splitmix64(state + kGolden * std::uint64_t(e));
  KeystreamGenerator gen = from_coefficients(max_bits, std::move(coeffs), mixer, mixer_key);
  gen.seed_bits_ = 8 * seed.size();
  return gen;
}

int KeystreamGenerator::bit(std::uint64_t index) const {
  if (index >= max_bits_) throw std::out_of_range("keystream index out of range");
  // Horner evaluation of the coefficient polynomial at the index element.
  std::uint32_t x = static_cast<std::uint32_t>(index);
  std::uint32_t acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = field_mul(field_, acc, x) ^ *it;
  }
  int out = acc & 1;
  if (mixer_ == MixerKind::kSplitMix64) {
    out ^= int(splitmix64(mixer_key_ ^ (kGolden * (index + 1))) & 1);
  }
  return out;
}

std::vector<std::uint8_t> keystream(const KeystreamGenerator& gen, std::uint64_t offset,
                                    std::uint64_t len) {
  if (offset + len < offset || offset + len > gen.max_bits()) {
    throw std::out_of_range("keystream range out of bounds");
  }
  std::vector<std::uint8_t> out(len);
  for (std::uint64_t i = 0; i < len; ++i) out[i] = std::uint8_t(gen.bit(offset + i));
  return out;
}

EwiseReport ewise_check(int core_e, int subset_size, std::uint64_t n_bits) {
  int w = width_for(n_bits);
  if (core_e < 1 || subset_size < 1) throw std::invalid_argument("parameters must be >= 1");
  if (std::uint64_t(subset_size) > n_bits) {
    throw std::invalid_argument("subset larger than the stream");
  }
  if (n_bits > 20) throw std::invalid_argument("enumeration capped at 20 positions");
  std::size_t seed_bits = std::size_t(core_e) * std::size_t(w);
  if (seed_bits > 20) throw std::invalid_argument("enumeration capped at 2^20 seeds");
  std::uint64_t seeds = std::uint64_t(1) << seed_bits;

  // One pass per seed: the low bit of the polynomial at every position.
  std::vector<std::uint32_t> rows(seeds, 0);
  std::uint32_t mask = (1u << w) - 1;
  std::vector<std::uint32_t> coeffs(core_e);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    for (int j = 0; j < core_e; ++j) coeffs[j] = std::uint32_t(s >> (j * w)) & mask;
    KeystreamGenerator gen = KeystreamGenerator::from_coefficients(n_bits, coeffs);
    std::uint32_t row = 0;
    for (std::uint64_t i = 0; i < n_bits; ++i) row |= std::uint32_t(gen.bit(i)) << i;
    rows[s] = row;
  }

  std::uint64_t patterns = std::uint64_t(1) << subset_size;
  std::vector<std::uint64_t> counts(patterns);
  for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << n_bits); ++subset) {
    if (std::popcount(subset) != subset_size) continue;
    std::fill(counts.begin(), counts.end(), 0);
    std::vector<int> positions;
    for (std::uint64_t i = 0; i < n_bits; ++i) {
      if (subset & (std::uint64_t(1) << i)) positions.push_back(int(i));
    }
    for (std::uint64_t s = 0; s < seeds; ++s) {
      std::uint64_t pattern = 0;
      for (std::size_t b = 0; b < positions.size(); ++b) {
        pattern |= std::uint64_t((rows[s] >> positions[b]) & 1) << b;
      }
      ++counts[pattern];
    }
    for (std::uint64_t c : counts) {
      if (c * patterns != seeds) return {false, subset};
    }
  }
  return {true, 0};
}

StreamHeader parse_stream_header(const std::vector<std::uint8_t>& container) {
  if (container.size() < kHeaderSize) throw std::runtime_error("container truncated");
  if (std::memcmp(container.data(), "QSC1", 4) != 0) {
    throw std::runtime_error("not a stream container");
  }
  StreamHeader h;
  h.version = container[4];
  if (h.version != 1) throw std::runtime_error("unsupported container version");
  h.cipher_id = container[5];
  h.n = std::uint16_t(container[6] | (container[7] << 8));
  h.t = std::uint16_t(container[8] | (container[9] << 8));
  h.e = 0;
  for (int i = 0; i < 4; ++i) h.e |= std::uint32_t(container[10 + i]) << (8 * i);
  h.block_count = 0;
  for (int i = 0; i < 4; ++i) h.block_count |= std::uint32_t(container[14 + i]) << (8 * i);
  if (container[18] > 1) throw std::runtime_error("malformed padding flag");
  h.padded = container[18] == 1;
  h.nonce = get_u64(container.data() + 19);
  return h;
}

std::vector<std::uint8_t> stream_encrypt(const KeystreamGenerator& gen,
                                         const CipherSpec& spec,
                                         const std::vector<std::uint8_t>& message_bits,
                                         std::uint64_t nonce) {
  for (std::uint8_t b : message_bits) {
    if (b > 1) throw std::invalid_argument("message entries must be bits");
  }
  std::vector<std::uint8_t> padded = message_bits;
  bool did_pad = padded.size() % spec.n() != 0;
  if (did_pad) {
    padded.push_back(1);
    while (padded.size() % spec.n() != 0) padded.push_back(0);
  }
  std::uint64_t blocks = padded.size() / spec.n();
  std::uint64_t need = nonce + blocks * std::uint64_t(spec.m());
  if (need < nonce || need > gen.max_bits()) {
    throw std::runtime_error("keystream exhausted: message needs " + std::to_string(need) +
                             " bits of a " + std::to_string(gen.max_bits()) + "-bit stream");
  }

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + std::size_t(blocks) * std::size_t(spec.dim()) * 16);
  out.insert(out.end(), {'Q', 'S', 'C', '1'});
  out.push_back(1);
  out.push_back(std::uint8_t(spec.container_id()));
  put_u16(out, std::uint16_t(spec.n()));
  put_u16(out, std::uint16_t(spec.t()));
  put_u32(out, std::uint32_t(gen.e()));
  put_u32(out, std::uint32_t(blocks));
  out.push_back(did_pad ? 1 : 0);
  put_u64(out, nonce);

  for (std::uint64_t j = 0; j < blocks; ++j) {
    std::uint32_t key_value = 0;
    for (int b = 0; b < spec.m(); ++b) {
      key_value = (key_value << 1) | std::uint32_t(gen.bit(nonce + j * spec.m() + b));
    }
    CipherKey key{key_value >> spec.n(), key_value & ((1u << spec.n()) - 1)};
    std::uint32_t plain = 0;
    for (int b = 0; b < spec.n(); ++b) {
      plain = (plain << 1) | padded[std::size_t(j) * spec.n() + b];
    }
    StateVector block = encrypt(spec, key, plain);
    for (int i = 0; i < spec.dim(); ++i) {
      put_f64(out, block.amp(i).real());
      put_f64(out, block.amp(i).imag());
    }
  }
  return out;
}

std::vector<std::uint8_t> stream_decrypt(const KeystreamGenerator& gen,
                                         const CipherSpec& spec,
                                         const std::vector<std::uint8_t>& container) {
  StreamHeader h = parse_stream_header(container);
  if (h.cipher_id != spec.container_id() || h.n != spec.n() || h.t != spec.t()) {
    throw std::runtime_error("container cipher does not match the supplied spec");
  }
  if (h.e != std::uint32_t(gen.e())) {
    throw std::runtime_error("container generator parameters do not match");
  }
  std::size_t block_bytes = std::size_t(spec.dim()) * 16;
  if (container.size() != kHeaderSize + h.block_count * block_bytes) {
    throw std::runtime_error("container length does not match the block count");
  }
  std::uint64_t need = h.nonce + std::uint64_t(h.block_count) * spec.m();
  if (need < h.nonce || need > gen.max_bits()) {
    throw std::runtime_error("keystream exhausted by the recorded nonce");
  }

  std::vector<std::uint8_t> bits;
  bits.reserve(std::size_t(h.block_count) * spec.n());
  for (std::uint32_t j = 0; j < h.block_count; ++j) {
    const std::uint8_t* p = container.data() + kHeaderSize + j * block_bytes;
    Eigen::VectorXcd amps(spec.dim());
    for (int i = 0; i < spec.dim(); ++i) {
      amps(i) = Cx(std::bit_cast<double>(get_u64(p + 16 * i)),
                   std::bit_cast<double>(get_u64(p + 16 * i + 8)));
    }
    std::uint32_t key_value = 0;
    for (int b = 0; b < spec.m(); ++b) {
      key_value = (key_value << 1) | std::uint32_t(gen.bit(h.nonce + std::uint64_t(j) * spec.m() + b));
    }
    CipherKey key{key_value >> spec.n(), key_value & ((1u << spec.n()) - 1)};
    std::uint32_t plain = decrypt_best_effort(spec, key, StateVector(std::move(amps)));
    for (int b = spec.n() - 1; b >= 0; --b) bits.push_back((plain >> b) & 1);
  }

  if (h.padded) {
    // Strip the 10...0 suffix inside the final block; a garbage all-zero
    // block is dropped whole so that wrong keys still decode to something.
    std::size_t floor = bits.size() >= std::size_t(spec.n()) ? bits.size() - spec.n() : 0;
    std::size_t cut = bits.size();
    while (cut > floor && bits[cut - 1] == 0) --cut;
    if (cut > floor) --cut;  // the 1 marker
    bits.resize(cut);
  }
  return bits;
}

PlaintextBudget plaintext_budget(std::uint64_t t_distinguish, int n) {
  if (t_distinguish < 1 || n < 1 || n > 32 ||
      t_distinguish > (std::uint64_t(-1) >> n)) {
    throw std::invalid_argument("budget parameters out of range");
  }
  PlaintextBudget b;
  b.wn_bits = t_distinguish * std::uint64_t(n);
  b.hn_bits = 2 * t_distinguish;
  b.delta_zero_bits = t_distinguish << n;
  return b;
}

}  // namespace mubkit
