// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace mubkit {

/// Binary extension field GF(2^n) presented by an irreducible modulus
/// polynomial and a basis. Elements are bit masks over the polynomial
/// basis of the quotient ring: bit i is the coefficient of x^i.
struct FieldContext {
  int n = 0;                    ///< extension degree, 1 <= n <= 16
  std::uint32_t modulus = 0;    ///< irreducible polynomial of degree n (bit n set)
  std::vector<std::uint32_t> basis;  ///< n linearly independent field elements
};

/// Multiplication table of a field basis f_0..f_{n-1}, expanded back over
/// that basis:  f_i * f_j = sum_m a[m][i][j] * f_m  with entries in {0,1}.
/// Symmetric in i and j.
struct AlphaTensor {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> a;  ///< a[m][i][j], all 0-based
};

/// Degree of a polynomial mask; -1 for the zero polynomial.
int poly_degree(std::uint32_t p);

/// Exhaustive trial division by every polynomial of degree 1..deg(p)/2.
/// Returns 0 when p is irreducible, otherwise a nontrivial factor.
std::uint32_t find_poly_factor(std::uint32_t p);

/// Build GF(2^n) with the default modulus and the polynomial basis
/// {1, x, ..., x^{n-1}}. Default moduli for n <= 8 are the usual low-weight
/// choices (x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1,
/// x^8+x^4+x^3+x+1); for larger n the smallest irreducible of degree n.
FieldContext make_field(int n);

/// Same, with an explicit modulus. Throws std::invalid_argument when the
/// modulus has the wrong degree or is reducible (the message names a factor).
FieldContext make_field(int n, std::uint32_t modulus);

/// Same, with an explicit basis, which must be linearly independent.
FieldContext make_field(int n, std::uint32_t modulus, std::vector<std::uint32_t> basis);

/// Carry-less product reduced by the field modulus.
std::uint32_t field_mul(const FieldContext& ctx, std::uint32_t a, std::uint32_t b);

/// Expand every pairwise basis product over the basis itself.
AlphaTensor alpha_tensor(const FieldContext& ctx);

}  // namespace mubkit
