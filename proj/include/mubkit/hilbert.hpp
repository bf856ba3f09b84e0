// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mubkit {

using Cx = std::complex<double>;

/// Tolerance policy, shared across the library:
///   structural invariants (norms, unitarity, POVM residuals)  1e-10
///   entropy comparisons                                        1e-9
///   iterative optimizer convergence                            1e-6
///   decrypt off-peak mass / phase-insensitive vector compare   1e-8
constexpr double kStructuralTol = 1e-10;
constexpr double kEntropyTol = 1e-9;
constexpr double kOptimizerTol = 1e-6;
constexpr double kOffPeakTol = 1e-8;

/// Floor used when evaluating p*log2(p) terms so that exact and
/// numerically-tiny zeros behave identically.
constexpr double kProbFloor = 1e-300;

/// Pure state of a qubit register. The dimension is a power of two and the
/// amplitude vector is unit-norm within kStructuralTol.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// Normalize first, then construct. Throws on (near-)zero input.
  static StateVector normalized(Eigen::VectorXcd amplitudes);
  /// Computational basis state |index> of the given dimension.
  static StateVector computational(int dim, std::uint32_t index);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Cx amp(int i) const { return amps_(i); }

 private:
  Eigen::VectorXcd amps_;
};

/// Probability vector: entries nonnegative, total 1 within kEntropyTol.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Square matrix whose columns are the basis vectors. The Gram matrix is
/// the identity within kStructuralTol, so the matrix doubles as the basis
/// unitary.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(Eigen::MatrixXcd columns);
  static OrthonormalBasis computational(int dim);

  int dim() const { return static_cast<int>(cols_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return cols_; }
  StateVector vector(int s) const { return StateVector(cols_.col(s)); }

 private:
  Eigen::MatrixXcd cols_;
};

/// Hermitian, unit-trace, positive-semidefinite (within kStructuralTol).
class DensityOperator {
 public:
  explicit DensityOperator(Eigen::MatrixXcd rho);
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

/// Measurement with labelled outcome operators. Plain data; use
/// povm_validate / checked_povm to test or enforce the POVM conditions.
struct Povm {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> elements;
  std::vector<std::string> labels;
};

struct PovmReport {
  double psd_violation = 0.0;        ///< worst negative eigenvalue magnitude
  double completeness_residual = 0.0;  ///< spectral norm of (sum - identity)
};

double shannon_entropy(const Distribution& p);
double min_entropy(const Distribution& p);
double collision_probability(const Distribution& p);

/// Born probabilities of u in the given basis.
Distribution measure_in_basis(const StateVector& u, const OrthonormalBasis& basis);

/// Weighted mixture sum_i w_i |psi_i><psi_i|; weights form a distribution.
DensityOperator density_from_ensemble(
    const std::vector<std::pair<double, StateVector>>& ensemble);

/// Half the trace norm of the difference.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Kronecker product, left factor on the high-order index bits.
Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Reports how far the elements are from a POVM; never throws.
PovmReport povm_validate(const Povm& m);

/// Validating constructor: throws std::runtime_error when either residual
/// exceeds kStructuralTol.
Povm checked_povm(int dim, std::vector<Eigen::MatrixXcd> elements,
                  std::vector<std::string> labels);

/// Projective POVM of a basis (rank-one projectors, labels "0".."d-1").
Povm projective_povm(const OrthonormalBasis& basis);

/// Byte layout: u32 dimension(s) little-endian, then row-major (re, im)
/// IEEE-754 double pairs, little-endian.
std::vector<std::uint8_t> serialize_vector(const Eigen::VectorXcd& v);
Eigen::VectorXcd deserialize_vector(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> serialize_matrix(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd deserialize_matrix(const std::vector<std::uint8_t>& bytes);

}  // namespace mubkit
