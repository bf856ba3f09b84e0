// SPDX-License-Identifier: Apache-2.0
#include "mubkit/hilbert.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace mubkit {

namespace {

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_double(std::vector<std::uint8_t>& out, double d) {
  auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw std::runtime_error("truncated buffer");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
  pos += 4;
  return v;
}

double read_double(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw std::runtime_error("truncated buffer");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  pos += 8;
  return std::bit_cast<double>(bits);
}

double plogp(double p) {
  if (p <= kProbFloor) return 0.0;
  return p * std::log2(p);
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (!power_of_two(static_cast<std::size_t>(amps_.size()))) {
    throw std::invalid_argument("state dimension must be a power of two");
  }
  if (std::abs(amps_.norm() - 1.0) > kStructuralTol) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  double n = amplitudes.norm();
  if (n < 1e-12) throw std::invalid_argument("cannot normalize a zero vector");
  return StateVector(amplitudes / n);
}

StateVector StateVector::computational(int dim, std::uint32_t index) {
  if (index >= static_cast<std::uint32_t>(dim)) {
    throw std::invalid_argument("basis index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  double total = 0.0;
  for (double p : probs_) {
    if (p < -1e-12) throw std::invalid_argument("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kEntropyTol) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(total));
  }
}

OrthonormalBasis::OrthonormalBasis(Eigen::MatrixXcd columns) : cols_(std::move(columns)) {
  if (cols_.rows() != cols_.cols() || !power_of_two(static_cast<std::size_t>(cols_.rows()))) {
    throw std::invalid_argument("basis matrix must be square with power-of-two dimension");
  }
  Eigen::MatrixXcd gram = cols_.adjoint() * cols_;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::invalid_argument("basis columns are not orthonormal");
  }
}

OrthonormalBasis OrthonormalBasis::computational(int dim) {
  return OrthonormalBasis(Eigen::MatrixXcd::Identity(dim, dim));
}

DensityOperator::DensityOperator(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw std::invalid_argument("density matrix must be square");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > kStructuralTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStructuralTol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

double shannon_entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs()) h -= plogp(v);
  return h;
}

double min_entropy(const Distribution& p) {
  double pmax = 0.0;
  for (double v : p.probs()) pmax = std::max(pmax, v);
  return -std::log2(std::max(pmax, kProbFloor));
}

double collision_probability(const Distribution& p) {
  double c = 0.0;
  for (double v : p.probs()) c += v * v;
  return c;
}

Distribution measure_in_basis(const StateVector& u, const OrthonormalBasis& basis) {
  if (u.dim() != basis.dim()) throw std::invalid_argument("dimension mismatch");
  Eigen::VectorXcd coeff = basis.matrix().adjoint() * u.amps();
  std::vector<double> p(coeff.size());
  for (Eigen::Index i = 0; i < coeff.size(); ++i) p[i] = std::norm(coeff(i));
  return Distribution(std::move(p));
}

DensityOperator density_from_ensemble(
    const std::vector<std::pair<double, StateVector>>& ensemble) {
  if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
  int dim = ensemble.front().second.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<double> weights;
  weights.reserve(ensemble.size());
  for (const auto& [w, psi] : ensemble) {
    if (psi.dim() != dim) throw std::invalid_argument("dimension mismatch in ensemble");
    weights.push_back(w);
    rho.noalias() += w * (psi.amps() * psi.amps().adjoint());
  }
  Distribution check(weights);  // validates the weights
  (void)check;
  return DensityOperator(std::move(rho));
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix() - b.matrix(),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PovmReport povm_validate(const Povm& m) {
  PovmReport report;
  if (m.elements.empty()) {
    report.completeness_residual = 1.0;
    return report;
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m.dim, m.dim);
  for (const auto& e : m.elements) {
    if (e.rows() != m.dim || e.cols() != m.dim) {
      throw std::invalid_argument("POVM element dimension mismatch");
    }
    double asym = (e - e.adjoint()).cwiseAbs().maxCoeff();
    Eigen::MatrixXcd herm = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    double neg = std::max(0.0, -es.eigenvalues().minCoeff());
    report.psd_violation = std::max({report.psd_violation, neg, asym});
    sum += e;
  }
  sum -= Eigen::MatrixXcd::Identity(m.dim, m.dim);
  Eigen::MatrixXcd herm = 0.5 * (sum + sum.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  report.completeness_residual = es.eigenvalues().cwiseAbs().maxCoeff();
  return report;
}

Povm checked_povm(int dim, std::vector<Eigen::MatrixXcd> elements,
                  std::vector<std::string> labels) {
  if (labels.size() != elements.size()) {
    throw std::invalid_argument("one label per POVM element required");
  }
  Povm m{dim, std::move(elements), std::move(labels)};
  PovmReport r = povm_validate(m);
  if (r.psd_violation > kStructuralTol || r.completeness_residual > kStructuralTol) {
    throw std::runtime_error("POVM validation failed: psd violation " +
                             std::to_string(r.psd_violation) + ", completeness residual " +
                             std::to_string(r.completeness_residual));
  }
  return m;
}

Povm projective_povm(const OrthonormalBasis& basis) {
  std::vector<Eigen::MatrixXcd> elems;
  std::vector<std::string> labels;
  elems.reserve(basis.dim());
  for (int s = 0; s < basis.dim(); ++s) {
    Eigen::VectorXcd v = basis.matrix().col(s);
    elems.push_back(v * v.adjoint());
    labels.push_back(std::to_string(s));
  }
  return checked_povm(basis.dim(), std::move(elems), std::move(labels));
}

std::vector<std::uint8_t> serialize_vector(const Eigen::VectorXcd& v) {
  std::vector<std::uint8_t> out;
  out.reserve(4 + 16 * static_cast<std::size_t>(v.size()));
  append_u32(out, static_cast<std::uint32_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    append_double(out, v(i).real());
    append_double(out, v(i).imag());
  }
  return out;
}

Eigen::VectorXcd deserialize_vector(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  std::uint32_t dim = read_u32(bytes, pos);
  Eigen::VectorXcd v(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    double re = read_double(bytes, pos);
    double im = read_double(bytes, pos);
    v(i) = Cx(re, im);
  }
  if (pos != bytes.size()) throw std::runtime_error("trailing bytes after vector");
  return v;
}

std::vector<std::uint8_t> serialize_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("only square matrices serialize");
  std::vector<std::uint8_t> out;
  out.reserve(4 + 16 * static_cast<std::size_t>(m.size()));
  append_u32(out, static_cast<std::uint32_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      append_double(out, m(r, c).real());
      append_double(out, m(r, c).imag());
    }
  }
  return out;
}

Eigen::MatrixXcd deserialize_matrix(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  std::uint32_t dim = read_u32(bytes, pos);
  Eigen::MatrixXcd m(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      double re = read_double(bytes, pos);
      double im = read_double(bytes, pos);
      m(r, c) = Cx(re, im);
    }
  }
  if (pos != bytes.size()) throw std::runtime_error("trailing bytes after matrix");
  return m;
}

}  // namespace mubkit
