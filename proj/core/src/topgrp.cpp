#include "prolim/topgrp.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace prolim {

namespace {

bool has(ElementSet s, std::size_t i) { return (s >> i) & 1U; }
ElementSet bit(std::size_t i) { return ElementSet{1} << i; }
ElementSet full_set(std::size_t n) { return n == 64 ? ~ElementSet{0} : bit(n) - 1; }

struct Tables {
  std::vector<Vector> elements;
  std::vector<std::size_t> add;
  std::vector<std::size_t> neg;
};

Tables make_tables(const FgAbGroup& g) {
  if (!g.is_finite()) throw std::invalid_argument("finite topological group: group is infinite");
  if (*g.order() > FiniteTopAbGroup::kMaxOrder) {
    throw std::invalid_argument("finite topological group: order above " +
                                std::to_string(FiniteTopAbGroup::kMaxOrder));
  }
  Tables t;
  t.elements = g.elements(FiniteTopAbGroup::kMaxOrder);
  const std::size_t n = t.elements.size();
  auto index = [&](const Vector& v) {
    return static_cast<std::size_t>(std::find(t.elements.begin(), t.elements.end(), v) - t.elements.begin());
  };
  t.add.resize(n * n);
  t.neg.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    t.neg[a] = index(g.negate(t.elements[a]));
    for (std::size_t b = 0; b < n; ++b) t.add[a * n + b] = index(g.add(t.elements[a], t.elements[b]));
  }
  return t;
}

ElementSet translate_with(const Tables& t, std::size_t g, ElementSet s) {
  const std::size_t n = t.elements.size();
  ElementSet out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (has(s, i)) out |= bit(t.add[g * n + i]);
  }
  return out;
}

std::vector<ElementSet> minimal_sets(std::size_t n, const std::vector<ElementSet>& opens) {
  std::vector<ElementSet> m(n, full_set(n));
  for (ElementSet o : opens) {
    for (std::size_t x = 0; x < n; ++x) {
      if (has(o, x)) m[x] &= o;
    }
  }
  return m;
}

// A set is open in the finite topology with minimal neighbourhoods m iff it
// contains m[x] for each of its points x.
bool is_up_set(const std::vector<ElementSet>& m, ElementSet s) {
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (has(s, x) && (m[x] & ~s) != 0) return false;
  }
  return true;
}

std::optional<std::string> check_with(const Tables& t, const std::vector<ElementSet>& opens) {
  const std::size_t n = t.elements.size();
  const ElementSet all = full_set(n);
  const std::unordered_set<ElementSet> family(opens.begin(), opens.end());
  if (!family.count(0)) return "the empty set is not open";
  if (!family.count(all)) return "the whole group is not open";
  for (ElementSet o : opens) {
    if ((o & ~all) != 0) return "an open set contains elements outside the group";
  }

  // Closed under unions and intersections exactly when the family is the
  // set of all unions of minimal neighbourhoods, each of which is open.
  const std::vector<ElementSet> m = minimal_sets(n, opens);
  for (std::size_t x = 0; x < n; ++x) {
    if (!family.count(m[x])) return "not closed under intersection";
  }
  std::unordered_set<ElementSet> unions{0};
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<ElementSet> grown;
    for (ElementSet u : unions) grown.push_back(u | m[x]);
    unions.insert(grown.begin(), grown.end());
    if (unions.size() > family.size()) return "not closed under union";
  }
  for (ElementSet u : unions) {
    if (!family.count(u)) return "not closed under union";
  }

  for (std::size_t g = 0; g < n; ++g) {
    for (ElementSet o : family) {
      if (!family.count(translate_with(t, g, o))) return "a translate of an open set is not open";
    }
  }

  // (x, y) -> x - y is continuous iff m[x] - m[y] lies in m[x - y].
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const ElementSet target = m[t.add[x * n + t.neg[y]]];
      for (std::size_t a = 0; a < n; ++a) {
        if (!has(m[x], a)) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (has(m[y], b) && !has(target, t.add[a * n + t.neg[b]])) return "subtraction is not continuous";
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> FiniteTopAbGroup::check(const FgAbGroup& group, const std::vector<ElementSet>& opens) {
  return check_with(make_tables(group), opens);
}

FiniteTopAbGroup::FiniteTopAbGroup(FgAbGroup group, std::vector<ElementSet> opens) : group_(std::move(group)) {
  build_tables();
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  Tables t{elements_, add_, neg_};
  if (auto reason = check_with(t, opens)) throw std::invalid_argument("not a group topology: " + *reason);
  opens_ = std::move(opens);
  minimal_ = minimal_sets(order(), opens_);
}

void FiniteTopAbGroup::build_tables() {
  Tables t = make_tables(group_);
  elements_ = std::move(t.elements);
  add_ = std::move(t.add);
  neg_ = std::move(t.neg);
}

ElementSet FiniteTopAbGroup::full() const { return full_set(order()); }

std::size_t FiniteTopAbGroup::index_of(const Vector& x) const {
  const Vector r = group_.reduce(x);
  const auto it = std::find(elements_.begin(), elements_.end(), r);
  if (it == elements_.end()) throw std::invalid_argument("index_of: not an element");
  return static_cast<std::size_t>(it - elements_.begin());
}

ElementSet FiniteTopAbGroup::translate(std::size_t g, ElementSet s) const {
  ElementSet out = 0;
  for (std::size_t i = 0; i < order(); ++i) {
    if (has(s, i)) out |= bit(add(g, i));
  }
  return out;
}

bool FiniteTopAbGroup::is_open(ElementSet s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

FiniteTopAbGroup FiniteTopAbGroup::coset_topology(const FgAbGroup& g, const Subgroup& n) {
  if (n.ambient() != g) throw std::invalid_argument("coset_topology: subgroup of a different group");
  const Tables t = make_tables(g);
  const std::size_t size = t.elements.size();
  ElementSet nset = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (n.contains(t.elements[i])) nset |= bit(i);
  }
  std::vector<ElementSet> cosets;
  ElementSet covered = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (has(covered, i)) continue;
    const ElementSet c = translate_with(t, i, nset);
    cosets.push_back(c);
    covered |= c;
  }
  if (cosets.size() > 20) throw std::invalid_argument("coset_topology: too many cosets to list every open set");
  std::vector<ElementSet> opens;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cosets.size()); ++mask) {
    ElementSet u = 0;
    for (std::size_t c = 0; c < cosets.size(); ++c) {
      if (has(mask, c)) u |= cosets[c];
    }
    opens.push_back(u);
  }
  return {g, std::move(opens)};
}

FiniteTopAbGroup FiniteTopAbGroup::discrete(const FgAbGroup& g) { return coset_topology(g, Subgroup::trivial(g)); }

FiniteTopAbGroup FiniteTopAbGroup::indiscrete(const FgAbGroup& g) { return coset_topology(g, Subgroup::whole(g)); }

ElementSet closure_of_zero_set(const FiniteTopAbGroup& g) {
  const std::size_t zero = g.index_of(g.group().zero());
  ElementSet c = g.full();
  for (ElementSet o : g.opens()) {
    const ElementSet closed = g.full() & ~o;
    if (has(closed, zero)) c &= closed;
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (!has(c, a)) continue;
    if (!has(c, g.negate(a))) throw std::logic_error("closure_of_zero: not closed under negation");
    for (std::size_t b = 0; b < g.order(); ++b) {
      if (has(c, b) && !has(c, g.add(a, b))) throw std::logic_error("closure_of_zero: not closed under addition");
    }
  }
  return c;
}

Subgroup closure_of_zero(const FiniteTopAbGroup& g) {
  const ElementSet c = closure_of_zero_set(g);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (has(c, i)) gens.push_back(g.elements()[i]);
  }
  return {g.group(), gens};
}

QuotientTopology quotient_topology(const FiniteTopAbGroup& g) {
  const QuotientResult q = quotient(g.group(), closure_of_zero(g));
  const std::vector<Vector> qelems = q.group.elements(FiniteTopAbGroup::kMaxOrder);
  std::vector<std::size_t> proj(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Vector image = q.projection.apply(g.elements()[i]);
    proj[i] = static_cast<std::size_t>(std::find(qelems.begin(), qelems.end(), image) - qelems.begin());
  }
  std::set<ElementSet> images;
  for (ElementSet o : g.opens()) {
    ElementSet s = 0;
    for (std::size_t i = 0; i < g.order(); ++i) {
      if (has(o, i)) s |= bit(proj[i]);
    }
    images.insert(s);
  }
  return {FiniteTopAbGroup(q.group, {images.begin(), images.end()}), std::move(proj)};
}

void validate_section(const FiniteTopAbGroup& g, const QuotientTopology& q, const SectionMap& s) {
  if (s.table.size() != q.group.order()) throw std::invalid_argument("section: one entry per coset required");
  for (std::size_t x = 0; x < s.table.size(); ++x) {
    if (s.table[x] >= g.order()) throw std::invalid_argument("section: element index out of range");
    if (q.projection[s.table[x]] != x) {
      throw std::invalid_argument("section: entry " + std::to_string(x) + " lies in the wrong coset");
    }
  }
}

std::vector<SectionMap> all_sections(const FiniteTopAbGroup& g, const QuotientTopology& q) {
  std::vector<std::vector<std::size_t>> fibres(q.group.order());
  for (std::size_t i = 0; i < g.order(); ++i) fibres[q.projection[i]].push_back(i);
  std::vector<SectionMap> out;
  std::vector<std::size_t> pick(fibres.size(), 0);
  while (true) {
    SectionMap s;
    for (std::size_t x = 0; x < fibres.size(); ++x) s.table.push_back(fibres[x][pick[x]]);
    out.push_back(std::move(s));
    std::size_t x = 0;
    while (x < fibres.size() && ++pick[x] == fibres[x].size()) pick[x++] = 0;
    if (x == fibres.size()) break;
  }
  return out;
}

SplittingReport splitting_check(const FiniteTopAbGroup& g, const SectionMap& s) {
  const QuotientTopology q = quotient_topology(g);
  validate_section(g, q, s);
  const ElementSet cl = closure_of_zero_set(g);
  std::vector<std::size_t> h_elems;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (has(cl, i)) h_elems.push_back(i);
  }
  const std::size_t nq = q.group.order();
  const std::size_t nh = h_elems.size();
  if (nq * nh > 64) throw std::logic_error("splitting_check: product too large");

  // Product point (x, j) has index x * nh + j. Topologies: quotient as given,
  // cl{0} with the subspace topology.
  std::vector<ElementSet> h_minimal(nh, full_set(nh));
  for (ElementSet o : g.opens()) {
    ElementSet trace = 0;
    for (std::size_t j = 0; j < nh; ++j) {
      if (has(o, h_elems[j])) trace |= bit(j);
    }
    for (std::size_t j = 0; j < nh; ++j) {
      if (has(trace, j)) h_minimal[j] &= trace;
    }
  }
  std::vector<ElementSet> p_minimal(nq * nh, 0);
  for (std::size_t x = 0; x < nq; ++x) {
    const ElementSet mq = q.group.minimal_neighbourhood(x);
    for (std::size_t j = 0; j < nh; ++j) {
      ElementSet m = 0;
      for (std::size_t y = 0; y < nq; ++y) {
        if (!has(mq, y)) continue;
        for (std::size_t k = 0; k < nh; ++k) {
          if (has(h_minimal[j], k)) m |= bit(y * nh + k);
        }
      }
      p_minimal[x * nh + j] = m;
    }
  }

  std::vector<std::size_t> f(nq * nh);
  for (std::size_t x = 0; x < nq; ++x) {
    for (std::size_t j = 0; j < nh; ++j) f[x * nh + j] = g.add(s.table[x], h_elems[j]);
  }
  std::vector<std::size_t> finv(g.order(), nq * nh);
  for (std::size_t p = 0; p < f.size(); ++p) finv[f[p]] = p;

  SplittingReport r;
  r.bijective = f.size() == g.order() && std::none_of(finv.begin(), finv.end(), [&](std::size_t p) { return p == f.size(); });
  // The inverse is g -> (pi(g), g - s(pi(g))).
  for (std::size_t i = 0; r.bijective && i < g.order(); ++i) {
    const std::size_t x = q.projection[i];
    const std::size_t h = g.add(i, g.negate(s.table[x]));
    r.bijective = finv[i] / nh == x && h_elems[finv[i] % nh] == h;
  }
  if (!r.bijective) return r;

  auto preimage = [&](ElementSet o) {
    ElementSet out = 0;
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (has(o, f[p])) out |= bit(p);
    }
    return out;
  };

  r.continuous = true;
  for (ElementSet o : g.opens()) {
    ++r.opens_checked;
    if (!is_up_set(p_minimal, preimage(o))) r.continuous = false;
  }

  // Every open of the product is a union of minimal neighbourhoods; push
  // each union forward.
  std::unordered_set<ElementSet> product_opens{0};
  for (ElementSet m : p_minimal) {
    std::vector<ElementSet> grown;
    for (ElementSet u : product_opens) grown.push_back(u | m);
    product_opens.insert(grown.begin(), grown.end());
  }
  r.inverse_continuous = true;
  for (ElementSet u : product_opens) {
    ++r.opens_checked;
    ElementSet image = 0;
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (has(u, p)) image |= bit(f[p]);
    }
    if (!g.is_open(image)) r.inverse_continuous = false;
  }

  const std::size_t zero = g.index_of(g.group().zero());
  r.sandwich = true;
  for (ElementSet v : g.opens()) {
    if (!has(v, zero)) continue;
    for (std::size_t a = 0; a < g.order(); ++a) {
      ++r.basic_opens_checked;
      const ElementSet w = g.translate(a, v);
      ElementSet expected = 0;
      for (std::size_t i = 0; i < g.order(); ++i) {
        if (!has(w, i)) continue;
        for (std::size_t j = 0; j < nh; ++j) expected |= bit(q.projection[i] * nh + j);
      }
      if (preimage(w) != expected) r.sandwich = false;
    }
  }
  return r;
}

bool translated_basis_check(const FiniteTopAbGroup& g, const std::vector<ElementSet>& basis) {
  const std::size_t zero = g.index_of(g.group().zero());
  for (ElementSet v : basis) {
    if (!g.is_open(v) || !has(v, zero)) throw std::invalid_argument("basis: every member must be an open set containing 0");
  }
  for (ElementSet o : g.opens()) {
    if (!has(o, zero)) continue;
    const bool refined = std::any_of(basis.begin(), basis.end(), [&](ElementSet v) { return (v & ~o) == 0; });
    if (!refined) throw std::invalid_argument("basis: not a neighbourhood basis at 0");
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (ElementSet o : g.opens()) {
      if (!has(o, a)) continue;
      const bool found = std::any_of(basis.begin(), basis.end(), [&](ElementSet v) {
        const ElementSet w = g.translate(a, v);
        return g.is_open(w) && (w & ~o) == 0;
      });
      if (!found) return false;
    }
  }
  return true;
}

std::vector<FgAbGroup> abelian_groups_of_order(std::size_t order) {
  if (order == 0) throw std::invalid_argument("abelian_groups_of_order: order must be positive");
  std::vector<FgAbGroup> out;
  // Invariant factors d_1 | ... | d_k, built from the largest down.
  std::vector<Integer> factors;
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t bound) -> void {
    if (remaining == 1) {
      Vector t(factors.rbegin(), factors.rend());
      out.emplace_back(0, std::move(t));
      return;
    }
    for (std::size_t d = 2; d <= remaining; ++d) {
      if (remaining % d != 0) continue;
      if (bound != 0 && bound % d != 0) continue;
      factors.push_back(d);
      self(self, remaining / d, d);
      factors.pop_back();
    }
  };
  rec(rec, order, 0);
  return out;
}

std::vector<Subgroup> all_subgroups(const FgAbGroup& g) {
  const Tables t = make_tables(g);
  const std::size_t n = t.elements.size();
  auto close = [&](ElementSet s) {
    ElementSet c = s | bit(0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a) {
        if (!has(c, a)) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (has(c, b) && !has(c, t.add[a * n + b])) {
            c |= bit(t.add[a * n + b]);
            changed = true;
          }
        }
      }
    }
    return c;
  };
  std::set<ElementSet> found{close(0)};
  std::vector<ElementSet> frontier{close(0)};
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (ElementSet h : frontier) {
      for (std::size_t x = 0; x < n; ++x) {
        if (has(h, x)) continue;
        const ElementSet k = close(h | bit(x));
        if (found.insert(k).second) next.push_back(k);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (ElementSet s : found) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      if (has(s, i)) gens.push_back(t.elements[i]);
    }
    out.emplace_back(g, std::move(gens));
  }
  return out;
}

std::vector<std::string> split_demo_names() { return {"indiscrete-z2", "discrete-z4", "mixed-z2-z3"}; }

FiniteTopAbGroup split_demo_group(const std::string& name) {
  if (name == "indiscrete-z2") return FiniteTopAbGroup::indiscrete(FgAbGroup::cyclic(2));
  if (name == "discrete-z4") return FiniteTopAbGroup::discrete(FgAbGroup::cyclic(4));
  if (name == "mixed-z2-z3") {
    // Z/2 x Z/3 = Z/6; the indiscrete factor Z/3 is the subgroup {0, 2, 4}.
    const FgAbGroup g = FgAbGroup::cyclic(6);
    return FiniteTopAbGroup::coset_topology(g, Subgroup(g, {Vector{2}}));
  }
  throw std::invalid_argument("unknown demo '" + name + "'");
}

}  // namespace prolim
