#include "oracles.hpp"

#include "specls/constructions.hpp"
#include "specls/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace specls;

namespace {

Polynomial poly(std::initializer_list<long> c)
{
  std::vector<BigRational> v;
  for (long x : c)
    v.emplace_back(x);
  return Polynomial(v);
}

std::vector<mpq_class> to_mpq(const Polynomial &p)
{
  return {p.coeffs().begin(), p.coeffs().end()};
}

} // namespace

TEST_SUITE("polynomial")
{
  TEST_CASE("arithmetic")
  {
    Polynomial a = poly({-1, 0, 1}); // x^2 - 1
    Polynomial b = poly({1, 1});     // x + 1
    auto [q, r] = a.divmod(b);
    CHECK(q == poly({-1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(a, b * b).monic() == b);
    CHECK(a.derivative() == poly({0, 2}));
    CHECK(a(BigRational(3)) == 8);
  }

  TEST_CASE("Sturm counts distinct roots")
  {
    // (x-1)^2 (x-3)
    Polynomial p = poly({-3, 7, -5, 1});
    SturmSequence s(p);
    CHECK(s.count_roots(0, 5) == 2);
    CHECK(s.count_roots(1, 5) == 1);
    CHECK(s.count_roots(3, 5) == 0);
    auto b = isolate_largest_root(p);
    REQUIRE(b.has_value());
    CHECK(b->lo < 3);
    CHECK(b->hi >= 3);
    CHECK_FALSE(isolate_largest_root(poly({1, 0, 1})).has_value());
  }

  TEST_CASE("compare_largest_roots")
  {
    CHECK(compare_largest_roots(poly({-2, 0, 1}), poly({-3, 0, 1})) == std::strong_ordering::less);
    CHECK(compare_largest_roots(poly({-4, 0, 1}), poly({-2, 1})) == std::strong_ordering::equal);
    CHECK(compare_largest_roots(poly({-5, 0, 1}), poly({-2, 1})) == std::strong_ordering::greater);
  }

  TEST_CASE("characteristic polynomial matches LeVerrier oracle")
  {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + static_cast<int>(rng() % 9);
      Graph g = oracle::random_graph(n, 0.5, rng);
      auto expect = oracle::charpoly(g);
      Polynomial p = characteristic_polynomial(g);
      REQUIRE(p.degree() == n);
      for (int i = 0; i <= n; ++i)
        CHECK(p.coeff(i) == mpq_class(expect[static_cast<std::size_t>(i)]));
    }
  }

  TEST_CASE("family polynomials at fixed n")
  {
    // x^3 - x^2 - 9x + 3
    CHECK(family_polynomial(FamilyTag::YEven, 6).poly == poly({3, -9, -1, 1}));
    // x^3 - x^2 + (1 - n^2) x / 4 + n^2/4 - n + 3/4 at n = 7 is x^3 - x^2 - 12x + 6
    auto odd = family_polynomial(FamilyTag::YOdd, 7).poly;
    CHECK(odd.coeff(0) == 6);
    CHECK(odd.coeff(1) == -12);
    CHECK(odd.coeff(2) == -1);
    CHECK(odd.coeff(3) == 1);
    CHECK_THROWS_AS(family_polynomial(FamilyTag::YEven, 7), std::invalid_argument);
    CHECK_THROWS_AS(family_polynomial(FamilyTag::YOdd, 6), std::invalid_argument);
  }

  TEST_CASE("family roots agree with dense eigenvalues of the built graphs")
  {
    BigRational tol("1/1000000000000");
    for (int n = 6; n <= 24; ++n) {
      FamilyTag tag = n % 2 ? FamilyTag::YOdd : FamilyTag::YEven;
      auto root = family_lambda(tag, n, tol);
      double e = oracle::eigen_lambda(y_n2q(n, 1));
      CHECK(root.interval.lo <= e + 1e-9);
      CHECK(root.interval.hi >= e - 1e-9);
      CHECK(root.interval.width() <= 1e-11);

      // independent bisection on the same cubic
      auto c = to_mpq(family_polynomial(tag, n).poly);
      long double r = oracle::largest_root(c, n / 2.0L, static_cast<long double>(n));
      CHECK(static_cast<double>(r) == doctest::Approx(e).epsilon(1e-12));
    }
    for (int n = 9; n <= 25; n += 2) {
      auto star = family_lambda(FamilyTag::TStar4, n, tol);
      double e = oracle::eigen_lambda(t_n2q(n, 4));
      CHECK(star.interval.lo <= e + 1e-9);
      CHECK(star.interval.hi >= e - 1e-9);

      auto c4 = family_lambda(FamilyTag::C4Embed, n, tol);
      double e4 = oracle::eigen_lambda(embed_into_turan2(n, HDescriptor::cycle(4).graph(), Side::Larger));
      CHECK(c4.interval.lo <= e4 + 1e-9);
      CHECK(c4.interval.hi >= e4 - 1e-9);
    }
  }

  TEST_CASE("parse_rational")
  {
    CHECK(parse_rational("0.125") == BigRational(1, 8));
    CHECK(parse_rational("1e-3") == BigRational(1, 1000));
    CHECK(parse_rational("3/4") == BigRational(3, 4));
    CHECK(parse_rational("010") == 10);
    CHECK(parse_rational("-2.50") == BigRational(-5, 2));
    CHECK_THROWS(parse_rational("abc"));
  }
}
