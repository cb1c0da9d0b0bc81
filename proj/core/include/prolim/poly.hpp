#pragma once

#include <optional>
#include <vector>

#include "prolim/matrix.hpp"

namespace prolim {

/// Dense integer polynomial, coefficient i multiplies x^i. The zero
/// polynomial is the empty vector; otherwise the last coefficient is nonzero.
using Polynomial = std::vector<Integer>;

Polynomial trim(Polynomial p);
long degree(const Polynomial& p);  // -1 for the zero polynomial

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial derivative(const Polynomial& p);
Integer content(const Polynomial& p);
/// Primitive part with positive leading coefficient.
Polynomial primitive_part(const Polynomial& p);
/// Quotient a / b if b divides a in Z[x].
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
/// Primitive gcd in Z[x], positive leading coefficient.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// det(x I - A), monic of degree rows(A).
Polynomial characteristic_polynomial(const Matrix& a);
/// Product of the distinct irreducible factors of p (primitive).
Polynomial squarefree_part(const Polynomial& p);
/// Distinct irreducible factors over Z of a nonconstant polynomial, each
/// primitive with positive leading coefficient.
std::vector<Polynomial> irreducible_factors(const Polynomial& p);

/// p(A) for a square matrix A.
Matrix evaluate(const Polynomial& p, const Matrix& a);

}  // namespace prolim
