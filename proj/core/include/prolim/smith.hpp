#pragma once

#include <optional>
#include <vector>

#include "prolim/matrix.hpp"

namespace prolim {

/// Smith normal form U * M * V = D with U, V unimodular and
/// D = diag(d_1, ..., d_rank, 0, ...), d_i > 0, d_1 | d_2 | ... | d_rank.
/// The inverses of U and V are tracked alongside so that callers can move
/// between old and new coordinates without re-inverting.
struct SmithForm {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inverse;
  Matrix V_inverse;
  std::size_t rank = 0;

  Vector invariant_factors() const;
};

SmithForm smith_normal_form(const Matrix& m);

/// Basis (as columns) of the integer kernel {z : M z = 0}. The lattice
/// returned is saturated, since it is spanned by columns of a unimodular V.
Matrix integer_kernel(const Matrix& m);

/// Some z with M z = y over the integers, or nullopt.
std::optional<Vector> solve_integer(const Matrix& m, const Vector& y);
std::optional<Vector> solve_integer(const SmithForm& smith, const Vector& y);

/// Echelon basis of the lattice spanned by the given columns: every returned
/// vector has a positive pivot at a strictly increasing coordinate, and all
/// coordinates before the pivot vanish.
std::vector<Vector> echelon_basis(const std::vector<Vector>& generators, std::size_t dimension);

}  // namespace prolim
