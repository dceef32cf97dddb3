#pragma once

#include "specls/exact.hpp"
#include "specls/graph.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace specls {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class Polynomial
{
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRational> coeffs);

  static Polynomial monomial(const BigRational &c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const BigRational &coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<BigRational> &coeffs() const { return c_; }
  const BigRational &leading() const { return c_.back(); }

  BigRational operator()(const BigRational &x) const;
  int sign_at(const BigRational &x) const { return sgn((*this)(x)); }

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  bool operator==(const Polynomial &o) const { return c_ == o.c_; }

  /// Quotient and remainder of Euclidean division by a nonzero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial &divisor) const;

  std::string to_string() const;

private:
  void trim();
  std::vector<BigRational> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial &p);

/// Sturm chain of the squarefree part; counts distinct real roots.
class SturmSequence
{
public:
  explicit SturmSequence(const Polynomial &p);
  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const BigRational &a, const BigRational &b) const;
  int variations(const BigRational &x) const;
  const Polynomial &base() const { return chain_.front(); }

private:
  std::vector<Polynomial> chain_;
};

/// (lo, hi] containing exactly one distinct real root and no root above hi.
struct RootBracket
{
  BigRational lo;
  BigRational hi;
  BigRational width() const { return hi - lo; }
};

BigRational cauchy_bound(const Polynomial &p);

/// Isolates the largest real root; nullopt when p has no real root.
std::optional<RootBracket> isolate_largest_root(const Polynomial &p);
/// Same, but requires the largest root to lie in (lo, hi].
std::optional<RootBracket> isolate_largest_root(const Polynomial &p, const BigRational &lo, const BigRational &hi);
/// Halves the bracket until its width is at most `width`.
void refine(const SturmSequence &s, RootBracket &b, const BigRational &width);

/// Exact ordering of the largest real roots of two polynomials.
std::strong_ordering compare_largest_roots(const Polynomial &p, const Polynomial &r);

/// Characteristic polynomial det(xI - A) of the adjacency matrix, by
/// Faddeev-LeVerrier over exact integers.
Polynomial characteristic_polynomial(const Graph &g);

/// Exact rational from a decimal literal such as "1e-9" or "0.125".
BigRational parse_rational(const std::string &text);
BigRational to_big(const Rational &r);

// ---------------------------------------------------------------------------
// Closed-form characteristic factors of the extremal families.

enum class FamilyTag
{
  YEven,   ///< T_{n,2} plus one edge, n even
  YOdd,    ///< T_{n,2} plus one edge, n odd
  TStar4,  ///< T_{n,2} plus K_{1,4} in the larger part, n odd
  C4Embed, ///< T_{n,2} plus C_4 in the larger part, n odd
};

std::string to_string(FamilyTag tag);
FamilyTag family_tag_from_string(const std::string &s);

struct FamilyPolynomial
{
  FamilyTag tag;
  int n;
  Polynomial poly;
};

/// Throws std::invalid_argument when n is outside the family's range.
FamilyPolynomial family_polynomial(FamilyTag tag, int n);

struct FamilyRoot
{
  RootBracket bracket;
  Interval interval;
};

/// Largest root, isolated by exact bisection inside (n/2, n].
FamilyRoot family_lambda(FamilyTag tag, int n, const BigRational &tol);

} // namespace specls
