// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mubkit/cipher.hpp"
#include "mubkit/gf2n.hpp"

namespace mubkit {

/// Post-processing applied on top of the locally random core. XOR with an
/// independent stream preserves e-wise uniformity, so the core's guarantee
/// survives whichever mixer is selected.
enum class MixerKind : std::uint8_t {
  kNone = 0,
  kSplitMix64 = 1,
};

/// SplitMix64 scrambler; the mixer derives its bits from it in counter mode.
std::uint64_t splitmix64(std::uint64_t x);

/// Keystream with exact e-wise uniformity: bit i is the low bit of a
/// degree-(e-1) polynomial over GF(2^w) evaluated at i, w = ceil(log2 N),
/// optionally XORed with a keyed mixer stream. Evaluation is stateless per
/// index. N is capped at 2^16 by the field-degree range.
class KeystreamGenerator {
 public:
  /// Raw construction from the e coefficient words themselves (the seed
  /// is exactly these e*w bits). Used by the uniformity enumeration.
  static KeystreamGenerator from_coefficients(std::uint64_t max_bits,
                                              std::vector<std::uint32_t> coefficients,
                                              MixerKind mixer = MixerKind::kNone,
                                              std::uint64_t mixer_key = 0);
  /// Stretch arbitrary seed bytes into coefficients and mixer key in
  /// counter mode. Enforces the feasibility bound e <= k / log2(N) on the
  /// seed length k.
  static KeystreamGenerator from_key_material(int e, std::uint64_t max_bits,
                                              const std::vector<std::uint8_t>& seed,
                                              MixerKind mixer = MixerKind::kSplitMix64);

  int e() const { return static_cast<int>(coefficients_.size()); }
  int w() const { return field_.n; }
  std::uint64_t max_bits() const { return max_bits_; }
  std::size_t seed_bits() const { return seed_bits_; }
  MixerKind mixer() const { return mixer_; }
  const std::vector<std::uint32_t>& coefficients() const { return coefficients_; }

  int bit(std::uint64_t index) const;

 private:
  KeystreamGenerator() = default;
  FieldContext field_;
  std::vector<std::uint32_t> coefficients_;
  std::uint64_t max_bits_ = 0;
  std::size_t seed_bits_ = 0;
  MixerKind mixer_ = MixerKind::kNone;
  std::uint64_t mixer_key_ = 0;
};

/// Bits [offset, offset+len) of the stream. Throws on range overflow.
std::vector<std::uint8_t> keystream(const KeystreamGenerator& gen, std::uint64_t offset,
                                    std::uint64_t len);

/// Exact enumeration over all 2^{e*w} coefficient seeds: every
/// subset_size-subset of the first n_bits positions must see a jointly
/// uniform distribution. A failing subset (expected once subset_size
/// exceeds the degree guarantee) is reported by its position mask.
struct EwiseReport {
  bool uniform = false;
  std::uint64_t failing_subset = 0;
};
EwiseReport ewise_check(int core_e, int subset_size, std::uint64_t n_bits);

/// Container header: magic "QSC1", then version u8, cipher id u8, n u16,
/// t u16, e u32, block count u32, padded u8, nonce u64, little-endian,
/// followed by the amplitude blocks in QCT1 block encoding. The nonce is
/// the keystream bit offset where this message's key material starts.
struct StreamHeader {
  std::uint8_t version = 1;
  std::uint8_t cipher_id = 0;
  std::uint16_t n = 0;
  std::uint16_t t = 0;
  std::uint32_t e = 0;
  std::uint32_t block_count = 0;
  bool padded = false;
  std::uint64_t nonce = 0;
};

StreamHeader parse_stream_header(const std::vector<std::uint8_t>& container);

/// Encrypt message bits block-wise, key material drawn from the keystream
/// starting at the nonce. Messages that are not a block multiple get a
/// 10...0 suffix, recorded in the header. Throws when the keystream cannot
/// cover the message.
std::vector<std::uint8_t> stream_encrypt(const KeystreamGenerator& gen,
                                         const CipherSpec& spec,
                                         const std::vector<std::uint8_t>& message_bits,
                                         std::uint64_t nonce = 0);

/// Exact inverse for the matching generator and cipher. Block readout is
/// maximum-likelihood, so a wrong seed produces garbage bits instead of an
/// error; malformed containers still throw.
std::vector<std::uint8_t> stream_decrypt(const KeystreamGenerator& gen,
                                         const CipherSpec& spec,
                                         const std::vector<std::uint8_t>& container);

/// Known-plaintext bits an adversary needs before keystream distinguishing
/// becomes possible, for a target advantage horizon of t_distinguish
/// keystream segments: the phase-basis figure t*n, the two-basis figure
/// 2*t, and the optimistic gap-free figure t*2^n.
struct PlaintextBudget {
  std::uint64_t wn_bits = 0;
  std::uint64_t hn_bits = 0;
  std::uint64_t delta_zero_bits = 0;
};
PlaintextBudget plaintext_budget(std::uint64_t t_distinguish, int n);

}  // namespace mubkit
