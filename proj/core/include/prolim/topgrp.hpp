#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prolim/fgab.hpp"

namespace prolim {

/// Subset of a finite group's elements, bit i standing for elements()[i].
using ElementSet = std::uint64_t;

/// Finite abelian group (at most 64 elements) with an explicit family of
/// open sets, validated as a group topology on construction.
class FiniteTopAbGroup {
 public:
  static constexpr std::size_t kMaxOrder = 64;

  /// Throws std::invalid_argument with the failed axiom.
  FiniteTopAbGroup(FgAbGroup group, std::vector<ElementSet> opens);
  /// Reason the family is not a group topology, if any.
  static std::optional<std::string> check(const FgAbGroup& group, const std::vector<ElementSet>& opens);

  static FiniteTopAbGroup discrete(const FgAbGroup& g);
  static FiniteTopAbGroup indiscrete(const FgAbGroup& g);
  /// Opens are the unions of cosets of n.
  static FiniteTopAbGroup coset_topology(const FgAbGroup& g, const Subgroup& n);

  const FgAbGroup& group() const { return group_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Vector>& elements() const { return elements_; }
  const std::vector<ElementSet>& opens() const { return opens_; }
  ElementSet full() const;

  std::size_t index_of(const Vector& x) const;
  std::size_t add(std::size_t a, std::size_t b) const { return add_[a * order() + b]; }
  std::size_t negate(std::size_t a) const { return neg_[a]; }
  ElementSet translate(std::size_t g, ElementSet s) const;

  bool is_open(ElementSet s) const;
  /// Intersection of the opens containing x.
  ElementSet minimal_neighbourhood(std::size_t x) const { return minimal_[x]; }

 private:
  FiniteTopAbGroup() = default;
  void build_tables();

  FgAbGroup group_;
  std::vector<Vector> elements_;
  std::vector<std::size_t> add_;
  std::vector<std::size_t> neg_;
  std::vector<ElementSet> opens_;
  std::vector<ElementSet> minimal_;
};

/// Smallest closed set containing 0; throws std::logic_error if it is not a
/// subgroup (impossible for a group topology).
Subgroup closure_of_zero(const FiniteTopAbGroup& g);
ElementSet closure_of_zero_set(const FiniteTopAbGroup& g);

struct QuotientTopology {
  FiniteTopAbGroup group;
  /// Coset index of every element of the original group.
  std::vector<std::size_t> projection;
};

/// G / cl{0} with the images of the opens of G.
QuotientTopology quotient_topology(const FiniteTopAbGroup& g);

/// For each element of G / cl{0} (in its element order) an element index of G.
struct SectionMap {
  std::vector<std::size_t> table;
};

/// Throws std::invalid_argument unless s picks one element of every coset.
void validate_section(const FiniteTopAbGroup& g, const QuotientTopology& q, const SectionMap& s);
std::vector<SectionMap> all_sections(const FiniteTopAbGroup& g, const QuotientTopology& q);

/// f(x, h) = s(x) + h from G / cl{0} x cl{0} to G, checked by exhaustion.
struct SplittingReport {
  bool bijective = false;
  bool continuous = false;
  bool inverse_continuous = false;
  /// f^-1(g + V) = pi(g + V) x cl{0} for every g and every open V containing 0.
  bool sandwich = false;
  std::size_t opens_checked = 0;
  std::size_t basic_opens_checked = 0;

  bool ok() const { return bijective && continuous && inverse_continuous && sandwich; }
};

SplittingReport splitting_check(const FiniteTopAbGroup& g, const SectionMap& s);

/// True iff {g + V : V in basis} is a neighbourhood basis at every g.
/// Throws std::invalid_argument when basis is not one at 0.
bool translated_basis_check(const FiniteTopAbGroup& g, const std::vector<ElementSet>& basis);

/// Invariant-factor lists of all abelian groups of the given order.
std::vector<FgAbGroup> abelian_groups_of_order(std::size_t order);
/// Every subgroup of a finite group.
std::vector<Subgroup> all_subgroups(const FgAbGroup& g);

std::vector<std::string> split_demo_names();
/// "indiscrete-z2", "discrete-z4" or "mixed-z2-z3"; std::invalid_argument otherwise.
FiniteTopAbGroup split_demo_group(const std::string& name);

}  // namespace prolim
