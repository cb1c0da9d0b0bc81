#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "prolim/poly.hpp"
#include "prolim/smith.hpp"

using namespace prolim;
using prolim::testing::Rng;

namespace {

bool is_diagonal_chain(const Matrix& d, std::size_t rank) {
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
    }
  }
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (i < rank && d(i, i) <= 0) return false;
    if (i >= rank && d(i, i) != 0) return false;
    if (i + 1 < rank && d(i + 1, i + 1) % d(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("integer helpers") {
    CHECK(mod_floor(-7, 3) == 2);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(gcd(-12, 18) == 6);
    CHECK(lcm(4, 6) == 12);
    const ExtendedGcd e = extended_gcd(240, 46);
    CHECK(e.g == 2);
    CHECK(240 * e.x + 46 * e.y == 2);
    CHECK(to_int64(Integer(1) << 70) == std::nullopt);
    CHECK(to_string(Integer(-42)) == "-42");
  }

  TEST_CASE("determinant agrees with cofactor expansion") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
      const Matrix a = testing::random_matrix(rng, n, n, 6);
      CHECK(a.determinant() == oracle::laplace_det(a));
    }
  }

  TEST_CASE("smith normal form: small cases") {
    const SmithForm s1 = smith_normal_form(Matrix{{2}});
    CHECK(s1.U == Matrix{{1}});
    CHECK(s1.D == Matrix{{2}});
    CHECK(s1.V == Matrix{{1}});

    CHECK(smith_normal_form(Matrix{{0}}).D == Matrix{{0}});

    const Matrix m{{2, 4}, {6, 8}};
    const SmithForm s = smith_normal_form(m);
    CHECK(s.D == Matrix{{2, 0}, {0, 4}});
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs_value(oracle::laplace_det(s.U)) == 1);
    CHECK(abs_value(oracle::laplace_det(s.V)) == 1);
  }

  TEST_CASE("smith normal form: random matrices up to 4x4") {
    Rng rng(12);
    for (int t = 0; t < 300; ++t) {
      const std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const std::size_t c = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const Matrix m = testing::random_matrix(rng, r, c, 5);
      const SmithForm s = smith_normal_form(m);
      REQUIRE(s.U * m * s.V == s.D);
      CHECK(abs_value(oracle::laplace_det(s.U)) == 1);
      CHECK(abs_value(oracle::laplace_det(s.V)) == 1);
      CHECK(s.U * s.U_inverse == Matrix::identity(r));
      CHECK(s.V * s.V_inverse == Matrix::identity(c));
      CHECK(is_diagonal_chain(s.D, s.rank));
      CHECK(s.invariant_factors() == oracle::invariant_factors_by_minors(m));
    }
  }

  TEST_CASE("integer kernel and solving") {
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
      const std::size_t r = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const std::size_t c = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const Matrix m = testing::random_matrix(rng, r, c, 4);
      const Matrix k = integer_kernel(m);
      CHECK((m * k).is_zero());
      CHECK(k.cols() + smith_normal_form(m).rank == c);

      Vector x(c);
      for (auto& v : x) v = testing::uniform(rng, -6, 6);
      const Vector y = m * x;
      const auto z = solve_integer(m, y);
      REQUIRE(z.has_value());
      CHECK(m * *z == y);
    }
    // 2x = 1 has no integer solution.
    CHECK_FALSE(solve_integer(Matrix{{2}}, Vector{1}).has_value());
  }

  TEST_CASE("echelon basis spans the same lattice") {
    const std::vector<Vector> gens{{4, 6}, {6, 9}, {2, 0}};
    const std::vector<Vector> basis = echelon_basis(gens, 2);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0][0] > 0);
    CHECK(basis[1][0] == 0);
    CHECK(basis[1][1] > 0);
    // Lattice index is |det| = gcd of 2x2 minors of the generators = 6.
    CHECK(abs_value(basis[0][0] * basis[1][1]) == 6);
  }

  TEST_CASE("polynomial factorization") {
    const Polynomial f = poly_mul(poly_mul(Polynomial{-1, 1}, Polynomial{-2, 1}),
                                  poly_mul(Polynomial{-2, 0, 1}, Polynomial{1, 1, 1}));
    const std::vector<Polynomial> expect{{-2, 1}, {-1, 1}, {-2, 0, 1}, {1, 1, 1}};
    std::vector<Polynomial> got = irreducible_factors(f);
    std::vector<Polynomial> want = expect;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    // x^4 - 1 = (x - 1)(x + 1)(x^2 + 1); times x^2 + 3.
    CHECK(irreducible_factors(poly_mul(Polynomial{-1, 0, 0, 0, 1}, Polynomial{3, 0, 1})).size() == 4);
    // x^4 + 1 is irreducible over Z but splits modulo every prime.
    CHECK(irreducible_factors(Polynomial{1, 0, 0, 0, 1}).size() == 1);
  }

  TEST_CASE("factor products recover the squarefree part") {
    Rng rng(14);
    for (int t = 0; t < 60; ++t) {
      Polynomial p{1};
      const int parts = static_cast<int>(testing::uniform(rng, 1, 3));
      for (int i = 0; i < parts; ++i) {
        Polynomial q{testing::uniform(rng, -4, 4), testing::uniform(rng, -3, 3), 1};
        if (testing::coin(rng)) q = {testing::uniform(rng, -5, 5), 1};
        p = poly_mul(p, q);
      }
      Polynomial prod{1};
      for (const auto& g : irreducible_factors(p)) {
        CHECK(exact_divide(p, g).has_value());
        prod = poly_mul(prod, g);
      }
      CHECK(prod == squarefree_part(p));
    }
  }

  TEST_CASE("Cayley-Hamilton") {
    Rng rng(15);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const Matrix a = testing::random_matrix(rng, n, n, 3);
      const Polynomial chi = characteristic_polynomial(a);
      CHECK(degree(chi) == static_cast<long>(n));
      CHECK(evaluate(chi, a).is_zero());
    }
    CHECK(characteristic_polynomial(Matrix{{1, 1}, {1, 0}}) == Polynomial{-1, -1, 1});
  }
}
