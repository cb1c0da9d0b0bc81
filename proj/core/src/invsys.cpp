#include "prolim/invsys.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "prolim/errors.hpp"
#include "prolim/poly.hpp"
#include "prolim/smith.hpp"

namespace prolim {

// -------------------------------------------------------------------- Tower

std::size_t Tower::exponent(std::size_t level) const {
  if (level < start) return 0;
  return initial + step * (level - start);
}

FgAbGroup Tower::group_at(std::size_t level) const {
  const std::size_t e = exponent(level);
  if (kind == Kind::Cyclic) {
    return FgAbGroup::cyclic(boost::multiprecision::pow(base, static_cast<unsigned>(e)));
  }
  if (base == 0) return FgAbGroup::free(e);
  return FgAbGroup(0, Vector(e, base));
}

GroupHom Tower::map_at(std::size_t level) const {
  const FgAbGroup source = group_at(level + 1);
  const FgAbGroup target = group_at(level);
  Matrix m(target.rank(), source.rank());
  for (std::size_t i = 0; i < target.rank(); ++i) m(i, i) = 1;
  return {source, target, m};
}

FgAbGroup Tower::kernel_at(std::size_t level) const {
  if (level <= 1) return group_at(1);
  const std::size_t gained = exponent(level) - exponent(level - 1);
  if (kind == Kind::Cyclic) {
    return FgAbGroup::cyclic(boost::multiprecision::pow(base, static_cast<unsigned>(gained)));
  }
  if (base == 0) return FgAbGroup::free(gained);
  return FgAbGroup(0, Vector(gained, base));
}

// ------------------------------------------------------------ InverseSystem

InverseSystem InverseSystem::periodic(std::vector<FgAbGroup> prefix, std::vector<FgAbGroup> cycle,
                                      std::vector<GroupHom> maps, std::vector<Tower> towers) {
  InverseSystem s;
  s.prefix_ = std::move(prefix);
  s.cycle_ = std::move(cycle);
  s.has_cycle_ = true;
  s.maps_ = std::move(maps);
  s.towers_ = std::move(towers);
  s.validate();
  return s;
}

InverseSystem InverseSystem::finite_chain(std::vector<FgAbGroup> groups, std::vector<GroupHom> maps) {
  InverseSystem s;
  s.prefix_ = std::move(groups);
  s.has_cycle_ = false;
  s.maps_ = std::move(maps);
  s.validate();
  return s;
}

InverseSystem InverseSystem::constant(const FgAbGroup& g, const GroupHom& endo) { return periodic({}, {g}, {endo}); }

InverseSystem InverseSystem::zero() {
  return constant(FgAbGroup::trivial(), GroupHom::identity(FgAbGroup::trivial()));
}

std::size_t InverseSystem::length() const {
  if (has_cycle_) throw std::logic_error("InverseSystem::length: system is not a finite chain");
  return prefix_.size();
}

void InverseSystem::validate() const {
  if (has_cycle_) {
    if (cycle_.empty()) throw std::invalid_argument("cycle: must contain at least one group");
    if (maps_.size() != prefix_.size() + cycle_.size()) {
      throw std::invalid_argument("maps: expected " + std::to_string(prefix_.size() + cycle_.size()) +
                                  " maps (prefix length + period), got " + std::to_string(maps_.size()));
    }
  } else {
    if (prefix_.empty()) throw std::invalid_argument("prefix: a finite chain needs at least one group");
    if (maps_.size() + 1 != prefix_.size()) {
      throw std::invalid_argument("maps: expected " + std::to_string(prefix_.size() - 1) + " maps, got " +
                                  std::to_string(maps_.size()));
    }
    if (!towers_.empty()) throw std::invalid_argument("towers: not allowed on a finite chain");
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const std::size_t n = i + 1;
    if (maps_[i].source() != base_group(n + 1)) {
      throw std::invalid_argument("maps[" + std::to_string(i) + "]: source is not the group at level " +
                                  std::to_string(n + 1));
    }
    if (maps_[i].target() != base_group(n)) {
      throw std::invalid_argument("maps[" + std::to_string(i) + "]: target is not the group at level " +
                                  std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < towers_.size(); ++i) {
    const Tower& t = towers_[i];
    const std::string where = "towers[" + std::to_string(i) + "]: ";
    if (t.start < 1) throw std::invalid_argument(where + "start must be at least 1");
    if (t.kind == Tower::Kind::Cyclic && t.base < 2) throw std::invalid_argument(where + "base must be at least 2");
    if (t.kind == Tower::Kind::Power && t.base != 0 && t.base < 2) {
      throw std::invalid_argument(where + "base must be 0 or at least 2");
    }
  }
}

void InverseSystem::check_level(std::size_t n) const {
  if (n < 1) throw std::out_of_range("levels start at 1");
  if (!has_cycle_ && n > prefix_.size()) {
    throw std::out_of_range("level " + std::to_string(n) + " is beyond the finite chain of length " +
                            std::to_string(prefix_.size()));
  }
}

FgAbGroup InverseSystem::base_group(std::size_t n) const {
  check_level(n);
  const std::size_t k = prefix_.size();
  if (n <= k) return prefix_[n - 1];
  return cycle_[(n - k - 1) % cycle_.size()];
}

const GroupHom& InverseSystem::base_map(std::size_t n) const {
  check_level(n + 1);
  const std::size_t k = prefix_.size();
  if (!has_cycle_ || n <= k + cycle_.size()) return maps_[n - 1];
  return maps_[k + (n - k - 1) % cycle_.size()];
}

const LevelLayout& InverseSystem::layout(std::size_t n) const {
  check_level(n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->layouts.find(n);
  if (it == cache_->layouts.end()) {
    std::vector<FgAbGroup> parts{base_group(n)};
    for (const auto& t : towers_) parts.push_back(t.group_at(n));
    auto made = std::make_shared<const LevelLayout>(LevelLayout{direct_sum(std::move(parts))});
    it = cache_->layouts.emplace(n, std::move(made)).first;
  }
  return *it->second;
}

const FgAbGroup& InverseSystem::group_at(std::size_t n) const { return layout(n).sum.group; }

GroupHom InverseSystem::map_at(std::size_t n) const {
  if (towers_.empty()) return base_map(n);
  const DirectSum& src = layout(n + 1).sum;
  const DirectSum& dst = layout(n).sum;
  Matrix block(dst.concatenated_rank(), src.concatenated_rank());
  auto place = [&](std::size_t part, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        block(dst.offsets[part] + r, src.offsets[part] + c) = m(r, c);
      }
    }
  };
  place(0, base_map(n).matrix());
  for (std::size_t i = 0; i < towers_.size(); ++i) place(i + 1, towers_[i].map_at(n).matrix());
  return direct_sum_hom(src, dst, block);
}

GroupHom InverseSystem::map_between(std::size_t n, std::size_t m) const {
  if (n > m) throw std::invalid_argument("map_between: requires n <= m");
  check_level(m);
  GroupHom result = GroupHom::identity(group_at(m));
  for (std::size_t j = m; j > n; --j) {
    result = compose(map_at(j - 1), result);
  }
  return result;
}

std::size_t InverseSystem::tower_horizon() const {
  std::size_t h = 0;
  for (const auto& t : towers_) h = std::max(h, t.start);
  return h;
}

std::size_t InverseSystem::tail_start() const {
  if (!has_cycle_) return prefix_.size() + 1;
  return std::max(prefix_.size() + 2, tower_horizon() + 1);
}

std::size_t InverseSystem::window() const {
  if (!has_cycle_) return prefix_.size();
  return tail_start() + cycle_.size() - 1;
}

std::size_t InverseSystem::original_level(std::size_t stride, std::size_t offset, std::size_t i) const {
  return offset + 1 + stride * (i - 1);
}

bool InverseSystem::operator==(const InverseSystem& other) const {
  return has_cycle_ == other.has_cycle_ && prefix_ == other.prefix_ && cycle_ == other.cycle_ &&
         maps_ == other.maps_ && towers_ == other.towers_;
}

// ------------------------------------------------------------ helpers

namespace {

void require_periodic(const InverseSystem& s, const char* what) {
  if (s.is_finite_chain()) {
    throw MathError(std::string(what) + ": a finite chain is a truncated system, not an eventually periodic one");
  }
}

GroupHom base_between(const InverseSystem& s, std::size_t n, std::size_t m) {
  GroupHom result = GroupHom::identity(s.base_group(m));
  for (std::size_t j = m; j > n; --j) {
    result = compose(s.base_map(j - 1), result);
  }
  return result;
}

}  // namespace

// ------------------------------------------------------------ eventual image

EventualImage eventual_image(const GroupHom& endo) {
  if (endo.source() != endo.target()) {
    throw std::invalid_argument("eventual_image: not an endomorphism");
  }
  const FgAbGroup& g = endo.source();

  std::size_t j = 0;
  GroupHom power_j = GroupHom::identity(g);
  while (true) {
    const GroupHom power_next = compose(endo, power_j);
    if (subgroup_contains(kernel(power_j).subgroup, kernel(power_next).subgroup)) break;
    power_j = power_next;
    ++j;
  }

  // E restricted to I = Im E^j is injective; write it in I's coordinates.
  Subgroup img = image(power_j);
  const GroupHom r = restrict_hom(endo, img, img);
  const FgAbGroup& h = img.normal_form();
  const std::size_t f = h.free_rank();
  const Matrix a = r.matrix().block(0, 0, f, f);
  const Integer index = f == 0 ? Integer(1) : abs_value(a.determinant());

  EventualImage out{img, j, index};
  if (index == 1) return out;

  // The stable part of the free block is the sum of the primary components
  // of the irreducible factors of char(A) with constant term +-1; torsion
  // is permuted bijectively and stays whole.
  Polynomial unit_part{1};
  for (const auto& factor : irreducible_factors(characteristic_polynomial(a))) {
    if (abs_value(factor.front()) == 1) unit_part = poly_mul(unit_part, factor);
  }
  std::vector<Vector> gens;
  const GroupHom& incl = img.inclusion();
  if (degree(unit_part) > 0) {
    const Matrix lattice = integer_kernel(power(evaluate(unit_part, a), f));
    for (const auto& col : lattice.columns()) {
      Vector v = col;
      v.resize(h.rank());
      gens.push_back(incl.apply(v));
    }
  }
  for (std::size_t i = f; i < h.rank(); ++i) gens.push_back(incl.apply(h.basis_vector(i)));
  out.subgroup = Subgroup(g, gens);
  return out;
}

// ------------------------------------------------------------ surjectivize

Subgroup Surjectivization::image_at(const InverseSystem& original, std::size_t n) const {
  const std::size_t k = original.prefix_length();
  const std::size_t p = original.period();
  const std::size_t idx = n <= k + p ? n - 1 : k + (n - k - 1) % p;
  const Subgroup& base = base_images.at(idx);
  if (!original.has_towers()) return base;
  const DirectSum& sum = original.layout(n).sum;
  std::vector<Vector> gens;
  const GroupHom inj = sum.injection(0);
  for (const auto& g : base.generators()) gens.push_back(inj.apply(g));
  for (std::size_t t = 1; t < sum.parts.size(); ++t) {
    const GroupHom tinj = sum.injection(t);
    for (std::size_t i = 0; i < sum.parts[t].rank(); ++i) gens.push_back(tinj.apply(sum.parts[t].basis_vector(i)));
  }
  return {sum.group, gens};
}

GroupHom Surjectivization::inclusion(const InverseSystem& original, std::size_t n) const {
  const std::size_t k = original.prefix_length();
  const std::size_t p = original.period();
  const std::size_t idx = n <= k + p ? n - 1 : k + (n - k - 1) % p;
  const GroupHom& base_incl = base_images.at(idx).inclusion();
  if (!original.has_towers()) return base_incl;
  const DirectSum& src = system.layout(n).sum;
  const DirectSum& dst = original.layout(n).sum;
  Matrix block(dst.concatenated_rank(), src.concatenated_rank());
  const Matrix& bm = base_incl.matrix();
  for (std::size_t r = 0; r < bm.rows(); ++r) {
    for (std::size_t c = 0; c < bm.cols(); ++c) block(r, c) = bm(r, c);
  }
  for (std::size_t i = src.offsets[1]; i < src.concatenated_rank(); ++i) {
    block(dst.offsets[1] + (i - src.offsets[1]), i) = 1;
  }
  return direct_sum_hom(src, dst, block);
}

Surjectivization surjectivize_with_data(const InverseSystem& s) {
  require_periodic(s, "surjectivize");
  const std::size_t k = s.prefix_length();
  const std::size_t p = s.period();

  std::vector<Subgroup> images;
  images.reserve(k + p);
  for (std::size_t n = 1; n <= k + p; ++n) images.push_back(Subgroup::trivial(s.base_group(n)));
  for (std::size_t n = k + 1; n <= k + p; ++n) {
    images[n - 1] = eventual_image(base_between(s, n, n + p)).subgroup;
  }
  for (std::size_t n = k; n >= 1; --n) {
    images[n - 1] = map_subgroup(s.base_map(n), images[n]);
  }

  std::vector<FgAbGroup> prefix, cycle;
  for (std::size_t n = 1; n <= k; ++n) prefix.push_back(images[n - 1].normal_form());
  for (std::size_t n = k + 1; n <= k + p; ++n) cycle.push_back(images[n - 1].normal_form());
  std::vector<GroupHom> maps;
  for (std::size_t n = 1; n <= k + p; ++n) {
    const Subgroup& above = n == k + p ? images[k] : images[n];
    maps.push_back(restrict_hom(s.base_map(n), above, images[n - 1]));
  }
  return {InverseSystem::periodic(std::move(prefix), std::move(cycle), std::move(maps), s.towers()),
          std::move(images)};
}

InverseSystem surjectivize(const InverseSystem& s) { return surjectivize_with_data(s).system; }

// ------------------------------------------------------------ Mittag-Leffler

MLCertificate is_mittag_leffler(const InverseSystem& s) {
  require_periodic(s, "is_mittag_leffler");
  const std::size_t k = s.prefix_length();
  const std::size_t p = s.period();

  MLCertificate cert;
  std::vector<MLLevel> tail;
  for (std::size_t n = k + 1; n <= k + p; ++n) {
    const EventualImage ei = eventual_image(base_between(s, n, n + p));
    const std::size_t m = n + ei.kernel_exponent * p;
    if (!ei.stable()) {
      // The index is constant from m on; recompute it on the actual image
      // chain for two consecutive periods.
      const Subgroup i0 = image(base_between(s, n, m));
      const Subgroup i1 = image(base_between(s, n, m + p));
      const Subgroup i2 = image(base_between(s, n, m + 2 * p));
      const auto c1 = subgroup_index(i0, i1);
      const auto c2 = subgroup_index(i1, i2);
      if (!c1 || !c2 || *c1 != ei.index || *c2 != ei.index) {
        throw std::logic_error("is_mittag_leffler: image index is not reproduced");
      }
      cert.verdict = false;
    }
    tail.push_back({n, m, ei.index});
  }
  if (cert.verdict) {
    for (std::size_t n = 1; n <= k; ++n) cert.per_level.push_back({n, tail.front().witness, 1});
  }
  for (auto& e : tail) cert.per_level.push_back(std::move(e));
  return cert;
}

// ------------------------------------------------------------ cofinal restriction

InverseSystem restrict_cofinal(const InverseSystem& s, std::size_t stride, std::size_t offset) {
  if (stride < 1) throw std::invalid_argument("restrict_cofinal: stride must be positive");
  auto old = [&](std::size_t i) { return s.original_level(stride, offset, i); };

  if (s.is_finite_chain()) {
    std::vector<FgAbGroup> groups;
    std::vector<GroupHom> maps;
    for (std::size_t i = 1; old(i) <= s.length(); ++i) {
      groups.push_back(s.base_group(old(i)));
      if (i > 1) maps.push_back(base_between(s, old(i - 1), old(i)));
    }
    if (groups.empty()) throw std::invalid_argument("restrict_cofinal: offset is beyond the finite chain");
    return InverseSystem::finite_chain(std::move(groups), std::move(maps));
  }

  const std::size_t k = s.prefix_length();
  const std::size_t p = s.period();
  const std::size_t new_k = offset + 1 > k ? 0 : (k - offset - 1) / stride + 1;
  const std::size_t new_p = p / std::gcd(p, stride);

  std::vector<FgAbGroup> prefix, cycle;
  std::vector<GroupHom> maps;
  for (std::size_t i = 1; i <= new_k + new_p; ++i) {
    (i <= new_k ? prefix : cycle).push_back(s.base_group(old(i)));
    maps.push_back(base_between(s, old(i), old(i + 1)));
  }

  std::vector<Tower> towers;
  for (const auto& t : s.towers()) {
    Tower r = t;
    r.start = offset + 1 >= t.start ? 1 : (t.start - offset - 1 + stride - 1) / stride + 1;
    r.initial = t.exponent(old(r.start));
    r.step = t.step * stride;
    towers.push_back(r);
  }
  return InverseSystem::periodic(std::move(prefix), std::move(cycle), std::move(maps), std::move(towers));
}

// ------------------------------------------------------------ kernels

std::vector<KernelEntry> kernel_sequence(const InverseSystem& s) {
  std::vector<KernelEntry> out;
  const std::size_t w = s.window();
  for (std::size_t n = 1; n <= w; ++n) {
    FgAbGroup x;
    if (n == 1) {
      x = s.group_at(1);
    } else {
      const GroupHom f = s.map_at(n - 1);
      if (!is_surjective(f)) {
        throw MathError("bonding map G_" + std::to_string(n) + " -> G_" + std::to_string(n - 1) +
                        " is not surjective; surjectivize the system first");
      }
      x = kernel(f).subgroup.normal_form();
    }
    const bool finite = x.is_finite();
    out.push_back({n, std::move(x), finite});
  }
  return out;
}

Stabilization stabilizes(const std::vector<KernelEntry>& kernels, std::size_t tail_start) {
  std::size_t last = 1;
  for (const auto& e : kernels) {
    if (e.group.is_trivial()) continue;
    if (e.level >= tail_start) return {false, std::nullopt};
    last = std::max(last, e.level);
  }
  return {true, last};
}

Stabilization stabilizes(const InverseSystem& s) { return stabilizes(kernel_sequence(s), s.tail_start()); }

}  // namespace prolim
