#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "prolim/errors.hpp"
#include "prolim/invsys.hpp"

using namespace prolim;
using prolim::testing::Rng;

namespace {

const FgAbGroup Z = FgAbGroup::free(1);

InverseSystem z_times(long long k) { return InverseSystem::constant(Z, GroupHom(Z, Z, Matrix{{k}})); }

// Z/2 <- Z/4 <- Z/8 <- ... with reductions.
InverseSystem two_adic_tower() {
  Tower t;
  t.kind = Tower::Kind::Cyclic;
  t.base = 2;
  const FgAbGroup zero;
  return InverseSystem::periodic({}, {zero}, {GroupHom::identity(zero)}, {t});
}

// Z <- Z^2 <- Z^3 <- ... dropping the last coordinate.
InverseSystem power_tower_z() {
  Tower t;
  t.kind = Tower::Kind::Power;
  t.base = 0;
  const FgAbGroup zero;
  return InverseSystem::periodic({}, {zero}, {GroupHom::identity(zero)}, {t});
}

// Z/2 <- Z/4 <- Z/4 <- ... : one reduction, then identities.
InverseSystem z2_under_z4() {
  const FgAbGroup c2 = FgAbGroup::cyclic(2), c4 = FgAbGroup::cyclic(4);
  return InverseSystem::periodic({c2}, {c4}, {GroupHom(c4, c2, Matrix{{1}}), GroupHom::identity(c4)});
}

void check_apply_agrees(const GroupHom& composite, const std::vector<GroupHom>& steps, Rng& rng) {
  for (int i = 0; i < 20; ++i) {
    const Vector x = testing::random_element(rng, composite.source());
    Vector y = x;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) y = it->apply(y);
    CHECK(composite.apply(x) == y);
  }
}

}  // namespace

TEST_SUITE("invsys") {
  TEST_CASE("group_at follows the periodicity rule") {
    CHECK(InverseSystem::constant(Z, GroupHom::identity(Z)).group_at(7) == Z);
    const FgAbGroup c2 = FgAbGroup::cyclic(2), c4 = FgAbGroup::cyclic(4), c8 = FgAbGroup::cyclic(8);
    const InverseSystem s = InverseSystem::periodic(
        {c2}, {c4, c8},
        {GroupHom(c4, c2, Matrix{{1}}), GroupHom(c8, c4, Matrix{{1}}), GroupHom(c4, c8, Matrix{{2}})});
    CHECK(s.group_at(2) == c4);
    CHECK(s.group_at(3) == c8);
    CHECK(s.group_at(4) == c4);
    CHECK(s.map_at(5) == s.map_at(3));

    const InverseSystem chain = InverseSystem::finite_chain({c2, c2, c2}, {GroupHom::identity(c2), GroupHom::identity(c2)});
    CHECK(chain.is_finite_chain());
    CHECK(chain.group_at(3) == c2);
    CHECK_THROWS_AS(chain.group_at(5), std::out_of_range);
    CHECK_THROWS_AS(s.group_at(0), std::out_of_range);
  }

  TEST_CASE("construction rejects inconsistent data") {
    const FgAbGroup c2 = FgAbGroup::cyclic(2), c3 = FgAbGroup::cyclic(3);
    // Wrong number of maps.
    CHECK_THROWS_AS(InverseSystem::periodic({}, {c2}, {}), std::invalid_argument);
    // Source/target mismatch.
    CHECK_THROWS_AS(InverseSystem::periodic({c3}, {c2}, {GroupHom::zero(c3, c3), GroupHom::identity(c2)}),
                    std::invalid_argument);
  }

  TEST_CASE("map_between examples") {
    const InverseSystem s = z_times(2);
    CHECK(s.map_between(3, 3) == GroupHom::identity(Z));
    CHECK(s.map_between(1, 4).matrix() == Matrix{{8}});
    CHECK_THROWS_AS(s.map_between(4, 1), std::invalid_argument);

    Rng rng(31);
    testing::SystemShape shape;
    shape.max_prefix = 3;
    shape.max_period = 3;
    shape.max_free = 1;
    shape.tower_probability = 0.3;
    for (int t = 0; t < 30; ++t) {
      const InverseSystem m = testing::random_system(rng, shape);
      std::vector<GroupHom> steps;
      for (std::size_t l = 2; l < 8; ++l) steps.push_back(m.map_at(l));
      check_apply_agrees(m.map_between(2, 8), steps, rng);
    }
  }

  TEST_CASE("map_between composes") {
    Rng rng(32);
    testing::SystemShape shape;
    shape.max_prefix = 3;
    shape.max_period = 3;
    shape.max_free = 2;
    shape.tower_probability = 0.3;
    for (int t = 0; t < 100; ++t) {
      const InverseSystem s = testing::random_system(rng, shape);
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const std::size_t m = n + static_cast<std::size_t>(testing::uniform(rng, 0, 4));
      const std::size_t q = m + static_cast<std::size_t>(testing::uniform(rng, 0, 4));
      const GroupHom a = s.map_between(n, m), b = s.map_between(m, q), c = s.map_between(n, q);
      for (int i = 0; i < 20; ++i) {
        const Vector x = testing::random_element(rng, s.group_at(q));
        CHECK(a.apply(b.apply(x)) == c.apply(x));
      }
    }
  }

  TEST_CASE("towers") {
    const InverseSystem t = two_adic_tower();
    CHECK(t.group_at(1) == FgAbGroup::cyclic(2));
    CHECK(t.group_at(5) == FgAbGroup::cyclic(32));
    CHECK(t.map_at(3).apply({13}) == Vector{5});
    const InverseSystem p = power_tower_z();
    CHECK(p.group_at(3) == FgAbGroup::free(3));
    CHECK(p.map_at(2).apply({4, -1, 9}) == Vector{4, -1});
  }

  TEST_CASE("eventual image of an endomorphism") {
    const EventualImage e2 = eventual_image(GroupHom(Z, Z, Matrix{{2}}));
    CHECK_FALSE(e2.stable());
    CHECK(e2.index == 2);
    const EventualImage id = eventual_image(GroupHom::identity(Z));
    CHECK(id.stable());
    CHECK(id.subgroup.is_whole());
    const FgAbGroup c12 = FgAbGroup::cyclic(12);
    // x -> 2x on Z/12: images 2Z/12 (order 6), 4Z/12 (order 3), then stable.
    const EventualImage e = eventual_image(GroupHom(c12, c12, Matrix{{2}}));
    CHECK(e.stable());
    CHECK(*e.subgroup.normal_form().order() == 3);
  }

  TEST_CASE("surjectivize examples") {
    CHECK(surjectivize(z_times(2)) == InverseSystem::zero());
    CHECK(surjectivize(InverseSystem::constant(Z, GroupHom::identity(Z))) ==
          InverseSystem::constant(Z, GroupHom::identity(Z)));
    const FgAbGroup c4 = FgAbGroup::cyclic(4);
    CHECK(surjectivize(InverseSystem::constant(c4, GroupHom(c4, c4, Matrix{{2}}))) == InverseSystem::zero());
    // x -> 3x on Z/4 is an automorphism.
    const InverseSystem aut = InverseSystem::constant(c4, GroupHom(c4, c4, Matrix{{3}}));
    CHECK(surjectivize(aut).group_at(1) == c4);
    CHECK_THROWS_AS(surjectivize(InverseSystem::finite_chain({Z}, {})), MathError);
  }

  TEST_CASE("surjectivized systems: onto, idempotent, ML") {
    Rng rng(33);
    testing::SystemShape shape;
    shape.max_prefix = 2;
    shape.max_period = 2;
    shape.max_free = 2;
    shape.tower_probability = 0.2;
    for (int t = 0; t < 100; ++t) {
      const InverseSystem s = testing::random_system(rng, shape);
      const InverseSystem sj = surjectivize(s);
      for (std::size_t n = 1; n <= sj.window() + 1; ++n) CHECK(is_surjective(sj.map_at(n)));
      CHECK(surjectivize(sj) == sj);
      CHECK(is_mittag_leffler(sj).verdict);
    }
  }

  TEST_CASE("surjectivization equals brute-force stable images") {
    Rng rng(34);
    for (int t = 0; t < 100; ++t) {
      const InverseSystem s = testing::random_finite_system(rng, 12, 2, 2);
      const Surjectivization data = surjectivize_with_data(s);
      // Chains of subgroups of a group of order <= 12 have length <= 3.
      const std::size_t horizon = s.prefix_length() + 6 * s.period() + 8;
      for (std::size_t n = 1; n <= s.window() + 1; ++n) {
        const oracle::ElementSet brute = oracle::image_between(s, n, n + horizon);
        const Subgroup img = data.image_at(s, n);
        for (const auto& x : oracle::enumerate(s.group_at(n))) CHECK(img.contains(x) == (brute.count(x) == 1));
        CHECK(*data.system.group_at(n).order() == brute.size());
        CHECK(subgroup_equal(image(data.inclusion(s, n)), img));
      }
    }
  }

  TEST_CASE("Mittag-Leffler examples") {
    CHECK(is_mittag_leffler(InverseSystem::constant(Z, GroupHom::identity(Z))).verdict);
    const MLCertificate c = is_mittag_leffler(z_times(2));
    CHECK_FALSE(c.verdict);
    REQUIRE(c.per_level.size() == 1);
    CHECK(c.per_level[0].level == 1);
    CHECK(c.per_level[0].index == 2);
    CHECK(is_mittag_leffler(two_adic_tower()).verdict);
    CHECK(is_mittag_leffler(power_tower_z()).verdict);
  }

  TEST_CASE("ML certificates are reproducible") {
    Rng rng(35);
    testing::SystemShape shape;
    shape.max_free = 2;
    shape.max_torsion_order = 6;
    for (int t = 0; t < 100; ++t) {
      const InverseSystem s = testing::random_system(rng, shape);
      const MLCertificate c = is_mittag_leffler(s);
      for (const auto& lv : c.per_level) {
        const std::size_t p = s.period();
        const Subgroup a = image(s.map_between(lv.level, lv.witness));
        const Subgroup b = image(s.map_between(lv.level, lv.witness + p));
        const Subgroup d = image(s.map_between(lv.level, lv.witness + 2 * p));
        if (c.verdict) {
          CHECK(lv.stable());
          CHECK(subgroup_equal(a, b));
        } else {
          CHECK(lv.index >= 2);
          CHECK(subgroup_index(a, b) == lv.index);
          CHECK(subgroup_index(b, d) == lv.index);
        }
      }
    }
  }

  TEST_CASE("systems of finite groups are ML") {
    Rng rng(36);
    for (int t = 0; t < 200; ++t) {
      CHECK(is_mittag_leffler(testing::random_finite_system(rng, 16, 3, 3)).verdict);
    }
  }

  TEST_CASE("restrict_cofinal examples") {
    const InverseSystem s = z_times(2);
    CHECK(restrict_cofinal(s, 1, 0) == s);
    const InverseSystem r = restrict_cofinal(s, 2, 0);
    CHECK(r.map_at(1).matrix() == Matrix{{4}});
    CHECK(r.map_at(9).matrix() == Matrix{{4}});

    const InverseSystem t = two_adic_tower();
    const InverseSystem r3 = restrict_cofinal(t, 3, 0);
    for (std::size_t i = 1; i <= 4; ++i) {
      CHECK(r3.group_at(i) == t.group_at(3 * i - 2));
      CHECK(r3.map_at(i) == t.map_between(3 * i - 2, 3 * i + 1));
    }
    const InverseSystem off = restrict_cofinal(t, 2, 1);
    CHECK(off.group_at(1) == FgAbGroup::cyclic(4));
    CHECK_THROWS_AS(restrict_cofinal(s, 0, 0), std::invalid_argument);
  }

  TEST_CASE("restrict_cofinal matches map_between on random systems") {
    Rng rng(37);
    testing::SystemShape shape;
    shape.max_prefix = 3;
    shape.max_period = 3;
    shape.max_free = 1;
    shape.tower_probability = 0.3;
    for (int t = 0; t < 50; ++t) {
      const InverseSystem s = testing::random_system(rng, shape);
      const std::size_t stride = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
      const std::size_t offset = static_cast<std::size_t>(testing::uniform(rng, 0, 3));
      const InverseSystem r = restrict_cofinal(s, stride, offset);
      for (std::size_t i = 1; i <= 6; ++i) {
        const std::size_t lo = s.original_level(stride, offset, i);
        CHECK(lo == offset + 1 + stride * (i - 1));
        CHECK(r.group_at(i) == s.group_at(lo));
        CHECK(r.map_at(i) == s.map_between(lo, lo + stride));
      }
    }
  }

  TEST_CASE("kernel_sequence examples") {
    const auto k2 = kernel_sequence(two_adic_tower());
    REQUIRE(k2.size() >= 2);
    CHECK(k2[0].group == FgAbGroup::cyclic(2));
    for (std::size_t i = 1; i < k2.size(); ++i) CHECK(k2[i].group == FgAbGroup::cyclic(2));

    const auto kz = kernel_sequence(InverseSystem::constant(Z, GroupHom::identity(Z)));
    CHECK(kz[0].group == Z);
    CHECK_FALSE(kz[0].finite);
    for (std::size_t i = 1; i < kz.size(); ++i) CHECK(kz[i].group.is_trivial());

    const auto kp = kernel_sequence(power_tower_z());
    for (const auto& e : kp) {
      CHECK(e.group == Z);
      CHECK_FALSE(e.finite);
    }
    CHECK_THROWS_AS(kernel_sequence(z_times(2)), MathError);
  }

  TEST_CASE("stabilizes examples") {
    const Stabilization a = stabilizes(InverseSystem::constant(Z, GroupHom::identity(Z)));
    CHECK(a.stabilizes);
    CHECK(a.index == std::size_t{1});
    CHECK_FALSE(stabilizes(two_adic_tower()).stabilizes);
    const Stabilization b = stabilizes(z2_under_z4());
    CHECK(b.stabilizes);
    CHECK(b.index == std::size_t{2});
    CHECK_THROWS_AS(stabilizes(z_times(3)), MathError);
  }
}
