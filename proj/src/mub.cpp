// SPDX-License-Identifier: Apache-2.0
#include "mubkit/mub.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mubkit/random.hpp"

namespace mubkit {

namespace {

constexpr int kMaxWfDegree = 8;
constexpr int kMaxFamilyDegree = 6;
constexpr int kFullCheckDegree = 3;
constexpr int kSampleCount = 1024;

const Cx kIPow[4] = {Cx(1, 0), Cx(0, 1), Cx(-1, 0), Cx(0, -1)};

}  // namespace

double check_unbiased(const OrthonormalBasis& a, const OrthonormalBasis& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  double target = 1.0 / a.dim();
  Eigen::MatrixXcd cross = a.matrix().adjoint() * b.matrix();
  double worst = 0.0;
  for (Eigen::Index r = 0; r < cross.rows(); ++r) {
    for (Eigen::Index c = 0; c < cross.cols(); ++c) {
      worst = std::max(worst, std::abs(std::norm(cross(r, c)) - target));
    }
  }
  return worst;
}

StateVector wf_vector(int n, const AlphaTensor& alpha, std::uint32_t r, std::uint32_t s) {
  if (n < 1 || n > kMaxWfDegree) throw std::invalid_argument("phase bases support n up to 8");
  if (alpha.n != n) throw std::invalid_argument("alpha tensor degree mismatch");
  std::uint32_t dim = 1u << n;
  if (r >= dim || s >= dim) throw std::invalid_argument("basis or vector label out of range");

  // M = sum_m r_m alpha^(m) over the integers; entries only matter mod 4.
  int m[kMaxWfDegree][kMaxWfDegree] = {};
  for (int k = 1; k <= n; ++k) {
    if (!bit_of(r, k, n)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] += alpha.a[k - 1][i][j];
  }

  double scale = std::pow(2.0, -0.5 * n);
  Eigen::VectorXcd v(dim);
  for (std::uint32_t l = 0; l < dim; ++l) {
    int q = 0;
    for (int i = 1; i <= n; ++i) {
      if (!bit_of(l, i, n)) continue;
      for (int j = 1; j <= n; ++j) {
        if (bit_of(l, j, n)) q += m[i - 1][j - 1];
      }
    }
    int sign = std::popcount(s & l) & 1;
    Cx phase = kIPow[q & 3];
    v(l) = scale * (sign ? -phase : phase);
  }
  return StateVector(std::move(v));
}

OrthonormalBasis wf_basis(int n, const AlphaTensor& alpha, std::uint32_t r) {
  std::uint32_t dim = 1u << n;
  Eigen::MatrixXcd cols(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    cols.col(s) = wf_vector(n, alpha, r, s).amps();
  }
  return OrthonormalBasis(std::move(cols));
}

MubFamily mub_family(int n, const FieldContext& ctx) {
  return mub_family(n, ctx, n <= kFullCheckDegree, 0);
}

MubFamily mub_family(int n, const FieldContext& ctx, bool full_check, std::uint64_t seed) {
  if (n < 1 || n > kMaxFamilyDegree) {
    throw std::invalid_argument("family construction supports n up to 6");
  }
  if (ctx.n != n) throw std::invalid_argument("field degree mismatch");

  AlphaTensor alpha = alpha_tensor(ctx);
  MubFamily fam;
  fam.n = n;
  std::uint32_t count = 1u << n;
  fam.bases.reserve(count + 1);
  for (std::uint32_t r = 0; r < count; ++r) fam.bases.push_back(wf_basis(n, alpha, r));
  fam.bases.push_back(OrthonormalBasis::computational(1 << n));

  UnbiasednessCertificate cert;
  cert.sampled = !full_check;
  if (full_check) {
    for (std::size_t a = 0; a < fam.bases.size(); ++a) {
      for (std::size_t b = a + 1; b < fam.bases.size(); ++b) {
        cert.max_deviation =
            std::max(cert.max_deviation, check_unbiased(fam.bases[a], fam.bases[b]));
        cert.pairs_checked += static_cast<long>(1u << n) * (1u << n);
      }
    }
  } else {
    Rng rng(seed);
    std::uint32_t dim = 1u << n;
    double target = 1.0 / dim;
    for (int trial = 0; trial < kSampleCount; ++trial) {
      auto a = static_cast<std::size_t>(rng.integer(fam.bases.size()));
      auto b = static_cast<std::size_t>(rng.integer(fam.bases.size() - 1));
      if (b >= a) ++b;
      auto su = static_cast<std::uint32_t>(rng.integer(dim));
      auto sv = static_cast<std::uint32_t>(rng.integer(dim));
      Cx ip = fam.bases[a].matrix().col(su).adjoint() * fam.bases[b].matrix().col(sv);
      cert.max_deviation = std::max(cert.max_deviation, std::abs(std::norm(ip) - target));
      ++cert.pairs_checked;
    }
  }
  if (cert.max_deviation > kStructuralTol) {
    throw std::runtime_error("basis family failed the unbiasedness check: deviation " +
                             std::to_string(cert.max_deviation));
  }
  fam.certificate = cert;
  return fam;
}

}  // namespace mubkit
