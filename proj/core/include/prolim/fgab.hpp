#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prolim/matrix.hpp"

namespace prolim {

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_k in
/// invariant-factor form: every d_i >= 2 and d_1 | d_2 | ... | d_k.
/// Generators are ordered free first, then torsion by increasing factor.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::size_t free_rank, Vector torsion);

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(std::size_t rank) { return {rank, {}}; }
  static FgAbGroup cyclic(const Integer& order);
  /// Normal form of Z^free_rank + sum of Z/m_i for arbitrary moduli m_i >= 1.
  static FgAbGroup from_moduli(std::size_t free_rank, const Vector& moduli);

  std::size_t free_rank() const { return free_rank_; }
  const Vector& torsion() const { return torsion_; }
  /// Number of canonical generators.
  std::size_t rank() const { return free_rank_ + torsion_.size(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return rank() == 0; }
  std::optional<Integer> order() const;

  /// 0 for a free coordinate, d_i for a torsion coordinate.
  Integer modulus(std::size_t coordinate) const;
  /// Columns d_i e_i for the torsion coordinates (rank x |torsion|).
  Matrix relations() const;

  Vector reduce(Vector coords) const;
  bool is_reduced(const Vector& coords) const;
  Vector zero() const { return Vector(rank()); }
  Vector add(const Vector& a, const Vector& b) const;
  Vector subtract(const Vector& a, const Vector& b) const;
  Vector negate(const Vector& a) const;
  Vector scale(const Integer& k, const Vector& a) const;
  Vector basis_vector(std::size_t i) const;

  /// Every element in canonical order. Finite groups only; throws
  /// MathError when the order exceeds `cap`.
  std::vector<Vector> elements(std::size_t cap) const;
  /// The first `count` elements of the canonical enumeration: free
  /// coordinates run 0, 1, -1, 2, -2, ... shell by shell, torsion
  /// coordinates 0..d-1. Works for infinite groups.
  std::vector<Vector> first_elements(std::size_t count) const;

  std::string to_string() const;

  bool operator==(const FgAbGroup&) const = default;

 private:
  std::size_t free_rank_ = 0;
  Vector torsion_;
};

/// Homomorphism given by a target.rank() x source.rank() matrix whose
/// column j is the image of source generator j.
class GroupHom {
 public:
  GroupHom() = default;
  /// Reduces the matrix modulo the target and checks well-definedness.
  GroupHom(FgAbGroup source, FgAbGroup target, Matrix matrix);

  /// Reason the matrix fails to define a homomorphism, if any.
  static std::optional<std::string> check(const FgAbGroup& source, const FgAbGroup& target, const Matrix& matrix);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Vector apply(const Vector& x) const;
  bool is_zero() const { return matrix_.is_zero(); }

  bool operator==(const GroupHom&) const = default;

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  Matrix matrix_;
};

/// after o before
GroupHom compose(const GroupHom& after, const GroupHom& before);
GroupHom hom_power(const GroupHom& endo, std::size_t exponent);

/// Z^k / (column span of `relations`) in normal form. `to_normal` maps
/// Z^k coordinates to normal-form coordinates (reduce afterwards);
/// `from_normal` has as column j a Z^k representative of generator j.
struct Presentation {
  FgAbGroup group;
  Matrix to_normal;
  Matrix from_normal;
};

Presentation present_cokernel(const Matrix& relations);

/// Subgroup of `ambient` generated by a list of elements. The isomorphism
/// type and coordinates are computed on first use and cached.
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, std::vector<Vector> generators);

  static Subgroup whole(const FgAbGroup& g);
  static Subgroup trivial(const FgAbGroup& g);

  const FgAbGroup& ambient() const { return ambient_; }
  const std::vector<Vector>& generators() const { return generators_; }

  const FgAbGroup& normal_form() const;
  /// normal_form() -> ambient
  const GroupHom& inclusion() const;
  bool contains(const Vector& y) const;
  /// Coordinates of y in normal_form(), or nullopt if y is not a member.
  std::optional<Vector> coordinates_of(const Vector& y) const;
  bool is_whole() const;
  bool is_trivial() const { return normal_form().is_trivial(); }

 private:
  struct Cache;
  const Cache& cache() const;

  FgAbGroup ambient_;
  std::vector<Vector> generators_;
  std::shared_ptr<std::once_flag> once_;
  std::shared_ptr<Cache> cache_;
};

/// b is contained in a.
bool subgroup_contains(const Subgroup& a, const Subgroup& b);
/// Mutual containment. Throws std::invalid_argument for different ambients.
bool subgroup_equal(const Subgroup& a, const Subgroup& b);
/// [big : small] for small contained in big; nullopt when infinite.
std::optional<Integer> subgroup_index(const Subgroup& big, const Subgroup& small);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

struct KernelResult {
  Subgroup subgroup;
  GroupHom inclusion;
};

KernelResult kernel(const GroupHom& h);
Subgroup image(const GroupHom& h);
bool is_surjective(const GroupHom& h);
bool is_injective(const GroupHom& h);
/// h(s)
Subgroup map_subgroup(const GroupHom& h, const Subgroup& s);
/// {x : h(x) in s}
Subgroup preimage(const GroupHom& h, const Subgroup& s);
/// Some x with h(x) = y, or nullopt.
std::optional<Vector> solve_preimage(const GroupHom& h, const Vector& y);

struct QuotientResult {
  FgAbGroup group;
  GroupHom projection;
};

QuotientResult quotient(const FgAbGroup& ambient, const Subgroup& s);

/// Restriction of h to subgroups: source_sub -> target_sub, in their normal
/// forms. Throws MathError if h(source_sub) is not inside target_sub.
GroupHom restrict_hom(const GroupHom& h, const Subgroup& source_sub, const Subgroup& target_sub);

/// Normalized direct sum. Concatenated coordinates of the parts map to
/// canonical coordinates by `to_canonical`; `from_canonical` goes back.
struct DirectSum {
  std::vector<FgAbGroup> parts;
  std::vector<std::size_t> offsets;
  FgAbGroup group;
  Matrix to_canonical;
  Matrix from_canonical;

  GroupHom injection(std::size_t i) const;
  GroupHom projection(std::size_t i) const;
  /// Canonical element from one vector per part.
  Vector pack(const std::vector<Vector>& pieces) const;
  std::vector<Vector> unpack(const Vector& x) const;
  std::size_t concatenated_rank() const;
};

DirectSum direct_sum(std::vector<FgAbGroup> parts);
/// Hom between direct sums given by a block matrix in concatenated
/// coordinates (rows: target parts, columns: source parts).
GroupHom direct_sum_hom(const DirectSum& source, const DirectSum& target, const Matrix& concatenated);

/// Lexicographically least element of the coset x + s, using the order
/// 0 < 1 < -1 < 2 < -2 < ... on free coordinates and 0 < 1 < ... on
/// torsion coordinates.
Vector least_in_coset(const Subgroup& s, const Vector& x);

}  // namespace prolim
