// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubkit/gf2n.hpp"
#include "mubkit/hilbert.hpp"

namespace mubkit {

/// Block key: c selects one of the 2^t bases, k is the XOR mask applied to
/// the plaintext index. Serialized keys carry the c bits first, then the k
/// bits, most significant first.
struct CipherKey {
  std::uint32_t c = 0;
  std::uint32_t k = 0;
};

/// A block cipher on n qubits given by a family of pairwise non-overlapping
/// orthonormal bases: encryption maps plaintext index a under key (c, k) to
/// column (a xor k) of basis c.
class CipherSpec {
 public:
  CipherSpec(std::string name, std::uint8_t container_id, int n, int t,
             std::vector<OrthonormalBasis> bases);

  const std::string& name() const { return name_; }
  std::uint8_t container_id() const { return container_id_; }
  int n() const { return n_; }
  int t() const { return t_; }
  int m() const { return n_ + t_; }        ///< key bits per block
  int dim() const { return 1 << n_; }
  int basis_count() const { return 1 << t_; }
  long key_count() const { return 1L << m(); }

  const OrthonormalBasis& basis(std::uint32_t c) const;
  const Eigen::MatrixXcd& unitary(std::uint32_t c) const { return basis(c).matrix(); }

 private:
  std::string name_;
  std::uint8_t container_id_;
  int n_;
  int t_;
  std::vector<OrthonormalBasis> bases_;
};

/// The two-basis cipher {computational, full Hadamard}; key is (1+n) bits.
CipherSpec hn_spec(int n);
/// The 2^n phase bases of the given field; key is 2n bits.
CipherSpec wn_spec(int n, const FieldContext& ctx);
/// Degenerate single-basis cipher (t = 0): a quantum carrier of the
/// classical one-time pad.
CipherSpec single_basis_spec(int n);
/// v independent blocks of the given cipher as one cipher on v*n qubits.
/// Key fields pack block 1 in the most significant position, so
/// encrypt(tensor, ...) equals the Kronecker product of the block outputs.
CipherSpec tensor_power_spec(const CipherSpec& spec, int v);

StateVector encrypt(const CipherSpec& spec, CipherKey key, std::uint32_t plaintext);

/// Inverts the basis rotation and reads the computational index. Throws
/// std::runtime_error when more than kOffPeakTol probability sits away from
/// the peak, which is what a wrong basis choice produces.
std::uint32_t decrypt(const CipherSpec& spec, CipherKey key, const StateVector& block);
/// Maximum-likelihood readout: the peak index with no off-peak error check.
/// Stream decryption uses this so that a wrong keystream yields garbage
/// rather than an exception.
std::uint32_t decrypt_best_effort(const CipherSpec& spec, CipherKey key,
                                  const StateVector& block);

/// Plaintext-averaged output density for one key.
DensityOperator cipher_rho(const CipherSpec& spec, CipherKey key);
/// Key-averaged output density for one plaintext.
DensityOperator cipher_sigma(const CipherSpec& spec, std::uint32_t plaintext);

/// Worst trace distance between the densities of two keys (plaintext
/// averaged) resp. two plaintexts (key averaged). Both are ~0 for ciphers
/// built from orthonormal bases.
double key_hiding_residual(const CipherSpec& spec);
double data_hiding_residual(const CipherSpec& spec);

struct RhoSigmaReport {
  double rho_sigma_distance = 0;  ///< fixed-key average vs fixed-plaintext average
  double rho_mixed_distance = 0;  ///< fixed-key average vs identity/2^n
};
RhoSigmaReport rho_sigma_check(const CipherSpec& spec);

/// Hex key material: ceil(m/4) digits per block, concatenated.
std::string keys_to_hex(const CipherSpec& spec, const std::vector<CipherKey>& keys);
std::vector<CipherKey> keys_from_hex(const CipherSpec& spec, const std::string& hex);

/// Encrypt/decrypt a bit string block-wise; bits.size() must be a multiple
/// of n and one key per block must be supplied.
std::vector<StateVector> encrypt_blocks(const CipherSpec& spec,
                                        const std::vector<CipherKey>& keys,
                                        const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> decrypt_blocks(const CipherSpec& spec,
                                         const std::vector<CipherKey>& keys,
                                         const std::vector<StateVector>& blocks);

/// Ciphertext container: "QCT1" magic, u8 cipher id, u16 n, u16 t,
/// u32 block count (all little-endian), then per block 2^n amplitude
/// pairs as little-endian doubles (re, im).
std::vector<std::uint8_t> qct_serialize(const CipherSpec& spec,
                                        const std::vector<StateVector>& blocks);

struct QctContent {
  std::uint8_t cipher_id = 0;
  int n = 0;
  int t = 0;
  std::vector<StateVector> blocks;
};
QctContent qct_parse(const std::vector<std::uint8_t>& bytes);

/// Classical reference cipher: table[key][plaintext] = ciphertext, with
/// every row a permutation.
class ClassicalCipherTable {
 public:
  ClassicalCipherTable(int m_bits, int n_bits, std::vector<std::vector<std::uint32_t>> table);

  /// E(k, p) = p xor (low n bits of k); m = n.
  static ClassicalCipherTable one_time_pad(int n);
  /// Same rule with extra ignored key bits; m = n + redundant_bits.
  static ClassicalCipherTable redundant_one_time_pad(int n, int redundant_bits);

  int m() const { return m_; }
  int n() const { return n_; }
  std::uint32_t apply(std::uint32_t key, std::uint32_t plaintext) const;

 private:
  int m_;
  int n_;
  std::vector<std::vector<std::uint32_t>> table_;
};

/// Brute-force posterior over keys given plaintext and ciphertext. Throws
/// when the pair is inconsistent (no key maps p to c).
Distribution classical_posterior(const ClassicalCipherTable& tbl, std::uint32_t p,
                                 std::uint32_t c);

}  // namespace mubkit
