#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "prolim/errors.hpp"
#include "prolim/prospace.hpp"

using namespace prolim;
using prolim::testing::Rng;

namespace {

const FgAbGroup Z = FgAbGroup::free(1);

InverseSystem cyclic_tower(long long base, std::size_t step = 1) {
  Tower t;
  t.kind = Tower::Kind::Cyclic;
  t.base = base;
  t.step = step;
  const FgAbGroup zero;
  return InverseSystem::periodic({}, {zero}, {GroupHom::identity(zero)}, {t});
}

// Smaller is closer: Zero < AtMost(2^-N) < Exact(2^-m) ordered by -exponent.
double as_number(const MetricValue& d) {
  if (d.kind == MetricKind::Zero) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(d.exponent));
}

// One finite tower with bonding maps of degree 2 or 3, so that levels stay
// enumerable.
InverseSystem small_tower_system(Rng& rng) {
  Tower t;
  t.kind = testing::coin(rng) ? Tower::Kind::Cyclic : Tower::Kind::Power;
  t.base = testing::uniform(rng, 2, 3);
  t.start = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
  const FgAbGroup zero;
  return InverseSystem::periodic({}, {zero}, {GroupHom::identity(zero)}, {t});
}

bool in_ball(const MetricValue& d, std::size_t n) {
  return d.kind != MetricKind::Exact || d.exponent >= n;
}

}  // namespace

TEST_SUITE("prospace") {
  TEST_CASE("extend picks the least lift") {
    const LimitSpace t(cyclic_tower(2));
    const CoherentTuple x = t.make_tuple({{1}});
    CHECK(t.extend(x, 3).entries == std::vector<Vector>{{1}, {1}, {1}});
    CHECK(t.extend(x, 1) == x);
    const LimitSpace bad(InverseSystem::constant(Z, GroupHom(Z, Z, Matrix{{2}})));
    CHECK_THROWS_AS(bad.extend(bad.make_tuple({{1}}), 2), MathError);
    CHECK_THROWS_AS(t.extend(t.extend(x, 3), 2), std::invalid_argument);
  }

  TEST_CASE("make_tuple validates coherence") {
    const LimitSpace t(cyclic_tower(2));
    CHECK_NOTHROW(t.make_tuple({{1}, {3}, {7}}));
    CHECK_THROWS_AS(t.make_tuple({{1}, {2}}), std::invalid_argument);
    CHECK_THROWS_AS(t.make_tuple({{1, 0}}), std::invalid_argument);
    // Entries are reduced first: 9 is 1 in Z/8.
    CHECK(t.make_tuple({{1}, {1}, {9}}).entries[2] == Vector{1});
  }

  TEST_CASE("metric examples") {
    const LimitSpace t(cyclic_tower(2));
    const CoherentTuple x = t.make_tuple({{1}, {1}, {1}});
    const CoherentTuple y = t.make_tuple({{1}, {1}, {5}});
    const MetricValue d = t.metric(x, y);
    CHECK(d.kind == MetricKind::Exact);
    CHECK(d.exponent == 3);
    CHECK(d.to_string() == "2^-3");
    const CoherentTuple a = t.make_tuple({{1}, {1}});
    CHECK(t.metric(a, a).to_string() == "<=2^-2");

    const FgAbGroup c2 = FgAbGroup::cyclic(2);
    const LimitSpace s(InverseSystem::constant(c2, GroupHom::identity(c2)));
    const CoherentTuple u = s.make_tuple({{1}, {1}});
    CHECK(s.metric(u, u).kind == MetricKind::Zero);
    CHECK(s.metric(u, u).to_string() == "0");

    const LimitSpace other(cyclic_tower(2));
    CHECK_THROWS_AS(t.metric(x, other.make_tuple({{1}, {1}, {1}})), std::invalid_argument);
  }

  TEST_CASE("cylinders") {
    const LimitSpace t(cyclic_tower(2));
    const CoherentTuple x = t.make_tuple({{1}, {1}, {1}});
    const Cylinder c = t.cylinder_of(x, 2);
    CHECK(c.level == 2);
    CHECK(c.base_point == Vector{1});
    std::size_t inside = 0;
    for (const auto& y : t.tuples_at(3)) inside += t.contains(c, y);
    CHECK(inside == 2);
    CHECK(t.contains(c, x));
    CHECK(t.cylinder_of(x, 0).level == 0);
    CHECK(t.contains(t.cylinder_of(x, 0), t.make_tuple({{0}, {2}, {6}})));
    CHECK_THROWS_AS(t.cylinder_of(x, 4), std::invalid_argument);

    const FgAbGroup zero;
    const LimitSpace triv(InverseSystem::constant(zero, GroupHom::identity(zero)));
    const CoherentTuple o = triv.make_tuple({{}});
    CHECK(triv.tuples_at(1).size() == 1);
    CHECK(triv.contains(triv.cylinder_of(o, 1), triv.tuples_at(1)[0]));
  }

  TEST_CASE("ball-cylinder identity on finite towers") {
    for (const long long base : {2, 3}) {
      const LimitSpace t(cyclic_tower(base));
      for (std::size_t level = 1; level <= 4; ++level) {
        const auto all = t.tuples_at(level);
        if (all.size() > 81) continue;
        for (const auto& x : all) {
          for (const auto& y : all) {
            const MetricValue d = t.metric(x, y);
            for (std::size_t n = 1; n <= level; ++n) {
              CHECK(t.contains(t.cylinder_of(x, n - 1), y) == in_ball(d, n));
            }
          }
        }
      }
    }
  }

  TEST_CASE("metric is an ultrametric") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const LimitSpace s(small_tower_system(rng));
      const auto all = s.tuples_at(4, 100000);
      for (int i = 0; i < 30; ++i) {
        const auto& x = all[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long long>(all.size()) - 1))];
        const auto& y = all[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long long>(all.size()) - 1))];
        const auto& z = all[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long long>(all.size()) - 1))];
        const MetricValue xy = s.metric(x, y), yx = s.metric(y, x), xz = s.metric(x, z), yz = s.metric(y, z);
        CHECK(xy == yx);
        CHECK((xy.kind == MetricKind::Exact) == (x != y));
        CHECK(as_number(xz) <= std::max(as_number(xy), as_number(yz)));
        CHECK(as_number(xz) <= as_number(xy) + as_number(yz));
      }
    }
  }

  TEST_CASE("sums of coherent tuples are coherent") {
    Rng rng(42);
    testing::SystemShape shape;
    shape.max_free = 1;
    shape.tower_probability = 0.4;
    for (int trial = 0; trial < 50; ++trial) {
      const InverseSystem s = testing::random_system(rng, shape);
      const LimitSpace space(s);
      const Vector a = testing::random_element(rng, s.group_at(4));
      const Vector b = testing::random_element(rng, s.group_at(4));
      const CoherentTuple x = space.from_top(4, a), y = space.from_top(4, b);
      const CoherentTuple sum = space.add(x, y);
      CHECK_NOTHROW(space.make_tuple(sum.entries));
      CHECK(sum.entries.back() == s.group_at(4).add(a, b));
    }
  }

  TEST_CASE("cofinal restriction is a bijection on tuples") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      const InverseSystem s = small_tower_system(rng);
      const std::size_t stride = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
      const std::size_t offset = static_cast<std::size_t>(testing::uniform(rng, 0, 2));
      const LimitSpace original(s);
      const LimitSpace restricted(restrict_cofinal(s, stride, offset));
      const std::size_t n = 2;
      const std::size_t top = s.original_level(stride, offset, n);
      const auto xs = original.tuples_at(top, 100000);
      std::set<std::vector<Vector>> images;
      for (const auto& x : xs) {
        const CoherentTuple y = cofinal_restrict_tuple(original, restricted, stride, offset, x);
        CHECK(y.level() == n);
        for (std::size_t i = 1; i <= n; ++i) CHECK(y.entries[i - 1] == x.entries[s.original_level(stride, offset, i) - 1]);
        CHECK(cofinal_expand_tuple(original, restricted, stride, offset, y) == x);
        images.insert(y.entries);
      }
      CHECK(images.size() == xs.size());
      CHECK(images.size() == restricted.tuples_at(n, 100000).size());
    }
  }

  TEST_CASE("limit tuples are the surjectivized tuples") {
    Rng rng(44);
    for (int trial = 0; trial < 60; ++trial) {
      const InverseSystem s = testing::random_finite_system(rng, 12, 2, 2);
      const LimitSpace space(s);
      const std::size_t level = 3;
      const std::size_t horizon = level + s.prefix_length() + 6 * s.period() + 8;
      const oracle::ElementSet tops = oracle::image_between(s, level, horizon);
      const auto limit = space.limit_tuples_at(level);
      CHECK(limit.size() == tops.size());
      const Surjectivization data = surjectivize_with_data(s);
      for (const auto& x : limit) {
        CHECK(tops.count(x.entries.back()) == 1);
        for (std::size_t n = 1; n <= level; ++n) CHECK(data.image_at(s, n).contains(x.entries[n - 1]));
      }
    }
  }

  TEST_CASE("dense families") {
    const LimitSpace t(cyclic_tower(2));
    const auto f = t.dense_family(2);
    CHECK(f.size() == 4);
    std::set<Vector> seen;
    for (const auto& x : f) seen.insert(x.entries[1]);
    CHECK(seen.size() == 4);

    const FgAbGroup zero;
    const LimitSpace triv(InverseSystem::constant(zero, GroupHom::identity(zero)));
    CHECK(triv.dense_family(3).size() == 1);

    const LimitSpace z(InverseSystem::constant(Z, GroupHom::identity(Z)));
    const auto fz = z.dense_family(1, 5);
    std::vector<Vector> reps;
    for (const auto& x : fz) reps.push_back(x.entries[0]);
    CHECK(reps == std::vector<Vector>{{0}, {1}, {-1}, {2}, {-2}});

    CHECK_THROWS_AS(t.dense_family(4, 10), MathError);

    // Every coordinate of every level up to the budget is hit.
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
      const LimitSpace s(small_tower_system(rng));
      const auto fam = s.dense_family(3, 100000);
      for (std::size_t j = 1; j <= 3; ++j) {
        std::set<Vector> hit;
        for (const auto& x : fam) hit.insert(x.entries[j - 1]);
        CHECK(hit.size() == *s.system().group_at(j).order());
      }
    }
  }

  TEST_CASE("separating clopen sets") {
    const LimitSpace t(cyclic_tower(2));
    const CoherentTuple x = t.make_tuple({{1}, {1}, {1}});
    const CoherentTuple y = t.make_tuple({{1}, {1}, {5}});
    const Cylinder c = t.separating_clopen(x, y);
    CHECK(c.level == 3);
    CHECK(c.base_point == Vector{5});
    CHECK(t.contains(c, y));
    CHECK_FALSE(t.contains(c, x));
    CHECK_THROWS_AS(t.separating_clopen(x, x), MathError);
    const Cylinder c1 = t.separating_clopen(x, t.make_tuple({{0}, {2}, {2}}));
    CHECK(c1.level == 1);
    CHECK(c1.base_point == Vector{0});
  }

  TEST_CASE("Cauchy limits") {
    const LimitSpace t(cyclic_tower(2));
    const CoherentTuple x = t.make_tuple({{1}, {3}, {7}});
    CHECK(t.cauchy_limit({x, x, x}, 3) == x);

    // x^i agrees with (1, 3, 7, 15, ...) up to level i and is 0-padded above.
    std::vector<CoherentTuple> seq;
    const std::vector<Vector> diag{{1}, {3}, {7}, {15}, {31}};
    for (std::size_t i = 1; i <= 5; ++i) {
      CoherentTuple lifted = t.extend(t.make_tuple({diag.begin(), diag.begin() + static_cast<long>(i)}), 5);
      seq.push_back(lifted);
    }
    seq.push_back(seq.back());
    CHECK(t.cauchy_limit(seq, 4).entries == std::vector<Vector>{{1}, {3}, {7}, {15}});

    const CoherentTuple a = t.make_tuple({{0}}), b = t.make_tuple({{1}});
    CHECK_THROWS_AS(t.cauchy_limit({a, b, a, b}, 1), MathError);
  }
}
