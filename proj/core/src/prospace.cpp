#include "prolim/prospace.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <string>

#include "prolim/errors.hpp"

namespace prolim {

namespace {

std::atomic<std::uint64_t> next_space_id{1};

std::string level_name(std::size_t n) { return "level " + std::to_string(n); }

}  // namespace

std::string MetricValue::to_string() const {
  switch (kind) {
    case MetricKind::Zero: return "0";
    case MetricKind::Exact: return "2^-" + std::to_string(exponent);
    case MetricKind::AtMost: return "<=2^-" + std::to_string(exponent);
  }
  throw std::logic_error("MetricValue: unknown kind");
}

LimitSpace::LimitSpace(InverseSystem s) : system_(std::move(s)), id_(next_space_id++) {}

const Surjectivization& LimitSpace::surjectivization() const {
  std::call_once(lazy_->once, [this] {
    lazy_->surj = surjectivize_with_data(system_);
    const Stabilization st = stabilizes(lazy_->surj->system);
    if (st.stabilizes) lazy_->stable = st.index;
  });
  return *lazy_->surj;
}

std::optional<std::size_t> LimitSpace::stable_index() const {
  if (system_.is_finite_chain()) return system_.length();
  surjectivization();
  return lazy_->stable;
}

Subgroup LimitSpace::limit_image(std::size_t n) const {
  if (system_.is_finite_chain()) {
    const std::size_t top = system_.length();
    if (n == 0 || n > top) throw std::invalid_argument("limit_image: " + level_name(n) + " out of range");
    return map_subgroup(system_.map_between(n, top), Subgroup::whole(system_.group_at(top)));
  }
  return surjectivization().image_at(system_, n);
}

void LimitSpace::check_same(const CoherentTuple& x) const {
  if (x.space_id != id_) throw std::invalid_argument("tuple belongs to a different system");
}

CoherentTuple LimitSpace::make_tuple(std::vector<Vector> entries) const {
  for (std::size_t n = 1; n <= entries.size(); ++n) {
    const FgAbGroup& g = system_.group_at(n);
    if (entries[n - 1].size() != g.rank()) {
      throw std::invalid_argument("tuple " + level_name(n) + ": expected " + std::to_string(g.rank()) +
                                  " coordinates, got " + std::to_string(entries[n - 1].size()));
    }
    entries[n - 1] = g.reduce(std::move(entries[n - 1]));
  }
  for (std::size_t n = 1; n < entries.size(); ++n) {
    if (system_.map_at(n).apply(entries[n]) != entries[n - 1]) {
      throw std::invalid_argument("tuple " + level_name(n) + ": entry is not the image of " + level_name(n + 1));
    }
  }
  return {id_, std::move(entries)};
}

CoherentTuple LimitSpace::from_top(std::size_t level, const Vector& top) const {
  if (level == 0) return {id_, {}};
  const FgAbGroup& g = system_.group_at(level);
  if (top.size() != g.rank()) throw std::invalid_argument("from_top: wrong number of coordinates");
  std::vector<Vector> entries(level);
  entries[level - 1] = g.reduce(top);
  for (std::size_t n = level - 1; n >= 1; --n) entries[n - 1] = system_.map_at(n).apply(entries[n]);
  return {id_, std::move(entries)};
}

CoherentTuple LimitSpace::extend(const CoherentTuple& x, std::size_t to_level) const {
  check_same(x);
  if (to_level < x.level()) throw std::invalid_argument("extend: target level below the tuple's level");
  if (x.level() == 0) throw std::invalid_argument("extend: empty tuple");
  CoherentTuple out = x;
  for (std::size_t n = x.level(); n < to_level; ++n) {
    const GroupHom f = system_.map_at(n);
    const auto z = solve_preimage(f, out.entries.back());
    if (!z) throw MathError("extend: no preimage at " + level_name(n + 1) + " of the entry at " + level_name(n));
    out.entries.push_back(least_in_coset(kernel(f).subgroup, *z));
  }
  return out;
}

CoherentTuple LimitSpace::add(const CoherentTuple& x, const CoherentTuple& y) const {
  check_same(x);
  check_same(y);
  if (x.level() != y.level()) throw std::invalid_argument("add: tuples of different levels");
  CoherentTuple out{id_, {}};
  for (std::size_t n = 1; n <= x.level(); ++n) out.entries.push_back(system_.group_at(n).add(x.entries[n - 1], y.entries[n - 1]));
  return out;
}

MetricValue LimitSpace::metric(const CoherentTuple& x, const CoherentTuple& y) const {
  check_same(x);
  check_same(y);
  const std::size_t top = std::min(x.level(), y.level());
  for (std::size_t n = 1; n <= top; ++n) {
    if (x.entries[n - 1] != y.entries[n - 1]) return {MetricKind::Exact, n};
  }
  // Agreement at a level where the limit has already stabilized pins down
  // a single point, provided both tuples come from the limit.
  if (top > 0) {
    const auto s = stable_index();
    if (s && *s <= top) {
      const Subgroup img = limit_image(top);
      if (img.contains(x.entries[top - 1])) return {MetricKind::Zero, 0};
    }
  }
  return {MetricKind::AtMost, top};
}

Cylinder LimitSpace::cylinder_of(const CoherentTuple& x, std::size_t n) const {
  check_same(x);
  if (n > x.level()) {
    throw std::invalid_argument("cylinder_of: " + level_name(n) + " exceeds the tuple's level " +
                                std::to_string(x.level()));
  }
  if (n == 0) return {0, {}};
  return {n, x.entries[n - 1]};
}

bool LimitSpace::contains(const Cylinder& c, const CoherentTuple& y) const {
  check_same(y);
  if (c.level == 0) return true;
  if (y.level() < c.level) throw std::invalid_argument("contains: tuple too short for the cylinder");
  return y.entries[c.level - 1] == c.base_point;
}

Cylinder LimitSpace::separating_clopen(const CoherentTuple& x, const CoherentTuple& y) const {
  const MetricValue d = metric(x, y);
  if (d.kind != MetricKind::Exact) {
    throw MathError("separating_clopen: tuples agree on every stored level; extend them to a higher level");
  }
  Cylinder c = cylinder_of(y, d.exponent);
  if (!contains(c, y) || contains(c, x)) throw std::logic_error("separating_clopen: membership check failed");
  return c;
}

std::vector<CoherentTuple> LimitSpace::dense_family(std::size_t budget, std::size_t cap) const {
  std::vector<CoherentTuple> out;
  std::set<std::vector<Vector>> seen;
  if (budget == 0) return out;
  for (std::size_t j = 1; j <= budget; ++j) {
    const FgAbGroup& g = system_.group_at(j);
    const std::vector<Vector> elems = g.is_finite() ? g.elements(cap) : g.first_elements(cap);
    for (const auto& e : elems) {
      CoherentTuple t = extend(from_top(j, e), budget);
      if (seen.insert(t.entries).second) {
        out.push_back(std::move(t));
        if (out.size() > cap) throw MathError("dense_family: more than " + std::to_string(cap) + " tuples");
      }
    }
  }
  return out;
}

CoherentTuple LimitSpace::cauchy_limit(const std::vector<CoherentTuple>& seq, std::size_t level) const {
  if (seq.empty()) throw std::invalid_argument("cauchy_limit: empty sequence");
  for (const auto& t : seq) check_same(t);
  std::vector<Vector> entries;
  for (std::size_t n = 1; n <= level; ++n) {
    std::vector<const CoherentTuple*> long_enough;
    for (const auto& t : seq) {
      if (t.level() >= n) long_enough.push_back(&t);
    }
    const std::size_t need = std::min<std::size_t>(2, seq.size());
    if (long_enough.size() < need) {
      throw MathError("cauchy_limit: too few tuples reach " + level_name(n));
    }
    const Vector& last = long_enough.back()->entries[n - 1];
    if (long_enough.size() >= 2 && long_enough[long_enough.size() - 2]->entries[n - 1] != last) {
      throw MathError("cauchy_limit: coordinate at " + level_name(n) + " has not settled");
    }
    entries.push_back(last);
  }
  return make_tuple(std::move(entries));
}

std::vector<CoherentTuple> LimitSpace::tuples_at(std::size_t level, std::size_t cap) const {
  const FgAbGroup& g = system_.group_at(level);
  if (!g.is_finite()) throw MathError("tuples_at: " + level_name(level) + " is infinite");
  std::vector<CoherentTuple> out;
  for (const auto& e : g.elements(cap)) out.push_back(from_top(level, e));
  return out;
}

std::vector<CoherentTuple> LimitSpace::limit_tuples_at(std::size_t level, std::size_t cap) const {
  const Subgroup img = limit_image(level);
  const FgAbGroup& h = img.normal_form();
  if (!h.is_finite()) throw MathError("limit_tuples_at: image at " + level_name(level) + " is infinite");
  std::vector<CoherentTuple> out;
  for (const auto& e : h.elements(cap)) out.push_back(from_top(level, img.inclusion().apply(e)));
  return out;
}

CoherentTuple cofinal_restrict_tuple(const LimitSpace& original, const LimitSpace& restricted, std::size_t stride,
                                     std::size_t offset, const CoherentTuple& x) {
  if (x.space_id != original.id()) throw std::invalid_argument("cofinal_restrict_tuple: foreign tuple");
  const InverseSystem& s = original.system();
  std::vector<Vector> entries;
  for (std::size_t i = 1;; ++i) {
    const std::size_t n = s.original_level(stride, offset, i);
    if (n > x.level()) break;
    entries.push_back(x.entries[n - 1]);
  }
  return restricted.make_tuple(std::move(entries));
}

CoherentTuple cofinal_expand_tuple(const LimitSpace& original, const LimitSpace& restricted, std::size_t stride,
                                   std::size_t offset, const CoherentTuple& y) {
  if (y.space_id != restricted.id()) throw std::invalid_argument("cofinal_expand_tuple: foreign tuple");
  if (y.level() == 0) return {original.id(), {}};
  const std::size_t top = original.system().original_level(stride, offset, y.level());
  CoherentTuple x = original.from_top(top, y.entries.back());
  if (cofinal_restrict_tuple(original, restricted, stride, offset, x) != y) {
    throw std::logic_error("cofinal_expand_tuple: round trip failed");
  }
  return x;
}

}  // namespace prolim
