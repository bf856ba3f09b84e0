// SPDX-License-Identifier: Apache-2.0
#include "mubkit/gf2n.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace mubkit {

namespace {

constexpr int kMaxDegree = 16;

// Default moduli for small degrees. Everything here is verified irreducible
// again in make_field, so a typo cannot slip through silently.
constexpr std::uint32_t kDefaultModulus[9] = {
    0,     // unused
    0x3,   // x + 1
    0x7,   // x^2 + x + 1
    0xB,   // x^3 + x + 1
    0x13,  // x^4 + x + 1
    0x25,  // x^5 + x^2 + 1
    0x43,  // x^6 + x + 1
    0x83,  // x^7 + x + 1
    0x11B  // x^8 + x^4 + x^3 + x + 1
};

std::string hex(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

// Remainder of polynomial division over GF(2).
std::uint32_t poly_rem(std::uint64_t num, std::uint32_t den) {
  int dd = poly_degree(den);
  while ((num >> dd) != 0) {
    int shift = (63 - std::countl_zero(num)) - dd;
    num ^= static_cast<std::uint64_t>(den) << shift;
  }
  return static_cast<std::uint32_t>(num);
}

std::uint32_t smallest_irreducible(int n) {
  for (std::uint32_t p = (1u << n) | 1; p < (1u << (n + 1)); p += 2) {
    if (find_poly_factor(p) == 0) return p;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

// Rows of the inverse of the GF(2) matrix whose columns are the basis
// elements. row r dotted (popcount parity) with an element mask gives the
// r-th coordinate over the basis.
std::vector<std::uint32_t> basis_inverse_rows(const FieldContext& ctx) {
  int n = ctx.n;
  // Gauss-Jordan on [B | I] stored per row as 2n-bit masks.
  std::vector<std::uint64_t> rows(n);
  for (int r = 0; r < n; ++r) {
    std::uint64_t lhs = 0;
    for (int c = 0; c < n; ++c) lhs |= static_cast<std::uint64_t>((ctx.basis[c] >> r) & 1u) << c;
    rows[r] = lhs | (std::uint64_t{1} << (n + r));
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if ((rows[r] >> col) & 1) { pivot = r; break; }
    }
    if (pivot < 0) throw std::invalid_argument("field basis is linearly dependent");
    std::swap(rows[col], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != col && ((rows[r] >> col) & 1)) rows[r] ^= rows[col];
    }
  }
  std::vector<std::uint32_t> inv(n);
  for (int r = 0; r < n; ++r) inv[r] = static_cast<std::uint32_t>(rows[r] >> n);
  return inv;
}

std::uint32_t coords_over_basis(const std::vector<std::uint32_t>& inv_rows, std::uint32_t v) {
  std::uint32_t c = 0;
  for (std::size_t r = 0; r < inv_rows.size(); ++r) {
    c |= static_cast<std::uint32_t>(std::popcount(inv_rows[r] & v) & 1) << r;
  }
  return c;
}

}  // namespace

int poly_degree(std::uint32_t p) {
  return p == 0 ? -1 : 31 - std::countl_zero(p);
}

std::uint32_t find_poly_factor(std::uint32_t p) {
  int d = poly_degree(p);
  if (d < 1) return 0;
  for (std::uint32_t f = 2; poly_degree(f) <= d / 2; ++f) {
    if (poly_rem(p, f) == 0) return f;
  }
  return 0;
}

FieldContext make_field(int n) {
  std::uint32_t mod = (n >= 1 && n <= 8) ? kDefaultModulus[n]
                      : (n >= 9 && n <= kMaxDegree) ? smallest_irreducible(n)
                                                    : 0;
  return make_field(n, mod);
}

FieldContext make_field(int n, std::uint32_t modulus) {
  std::vector<std::uint32_t> basis(n > 0 ? n : 0);
  for (int i = 0; i < n; ++i) basis[i] = 1u << i;
  return make_field(n, modulus, std::move(basis));
}

FieldContext make_field(int n, std::uint32_t modulus, std::vector<std::uint32_t> basis) {
  if (n < 1 || n > kMaxDegree) {
    throw std::invalid_argument("field degree must be between 1 and 16");
  }
  if (poly_degree(modulus) != n) {
    throw std::invalid_argument("modulus " + hex(modulus) + " does not have degree " +
                                std::to_string(n));
  }
  if (std::uint32_t f = find_poly_factor(modulus)) {
    throw std::invalid_argument("modulus " + hex(modulus) + " is reducible: factor " + hex(f));
  }
  if (static_cast<int>(basis.size()) != n) {
    throw std::invalid_argument("basis must contain exactly n elements");
  }
  for (std::uint32_t b : basis) {
    if (b == 0 || poly_degree(b) >= n) {
      throw std::invalid_argument("basis element " + hex(b) + " is not a field element");
    }
  }
  FieldContext ctx{n, modulus, std::move(basis)};
  basis_inverse_rows(ctx);  // throws when linearly dependent
  return ctx;
}

std::uint32_t field_mul(const FieldContext& ctx, std::uint32_t a, std::uint32_t b) {
  if (poly_degree(a) >= ctx.n || poly_degree(b) >= ctx.n) {
    throw std::invalid_argument("operand outside the field");
  }
  std::uint64_t acc = 0;
  for (int i = 0; i <= poly_degree(b); ++i) {
    if ((b >> i) & 1u) acc ^= static_cast<std::uint64_t>(a) << i;
  }
  return poly_rem(acc, ctx.modulus);
}

AlphaTensor alpha_tensor(const FieldContext& ctx) {
  int n = ctx.n;
  auto inv_rows = basis_inverse_rows(ctx);
  AlphaTensor t;
  t.n = n;
  t.a.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::uint32_t prod = field_mul(ctx, ctx.basis[i], ctx.basis[j]);
      std::uint32_t coords = coords_over_basis(inv_rows, prod);
      for (int m = 0; m < n; ++m) {
        int bit = (coords >> m) & 1;
        t.a[m][i][j] = bit;
        t.a[m][j][i] = bit;
      }
    }
  }
  return t;
}

}  // namespace mubkit
