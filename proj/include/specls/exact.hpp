#pragma once

#include <boost/rational.hpp>
#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace specls {

/// Small exact rational for combinatorial quantities (t, m, degrees, n).
using Rational = boost::rational<std::int64_t>;
/// Arbitrary-precision rational for polynomial work.
using BigRational = mpq_class;
using BigInt = mpz_class;

inline std::string to_string(const Rational &r)
{
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long double to_long_double(const Rational &r)
{
  return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
}

inline Rational floor_div(std::int64_t a, std::int64_t b) { return Rational(a / b); }

inline long double down(long double v) { return std::nextafter(v, -HUGE_VALL); }
inline long double up(long double v) { return std::nextafter(v, HUGE_VALL); }

/// Closed real interval with outward rounding on every operation.
///
/// Each arithmetic result is computed in round-to-nearest and then widened
/// by one ulp in each direction, which bounds the half-ulp rounding error.
struct Interval
{
  long double lo = 0;
  long double hi = 0;

  static Interval point(long double v) { return {v, v}; }
  static Interval exact(const Rational &r)
  {
    long double v = to_long_double(r);
    if (r.denominator() == 1 && std::fabs(v) < 0x1p63L)
      return {v, v};
    return {down(v), up(v)};
  }
  static Interval around(long double v) { return {down(v), up(v)}; }

  long double width() const { return hi - lo; }
  long double mid() const { return lo + (hi - lo) / 2; }
  bool contains(long double v) const { return lo <= v && v <= hi; }
  bool overlaps(const Interval &o) const { return !(hi < o.lo || o.hi < lo); }

  friend Interval operator+(const Interval &a, const Interval &b)
  {
    return {down(a.lo + b.lo), up(a.hi + b.hi)};
  }
  friend Interval operator-(const Interval &a, const Interval &b)
  {
    return {down(a.lo - b.hi), up(a.hi - b.lo)};
  }
  friend Interval operator*(const Interval &a, const Interval &b)
  {
    long double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    long double lo = p[0], hi = p[0];
    for (long double v : p) {
      lo = std::fmin(lo, v);
      hi = std::fmax(hi, v);
    }
    return {down(lo), up(hi)};
  }
  /// Division by an interval that excludes zero.
  friend Interval operator/(const Interval &a, const Interval &b)
  {
    long double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    long double lo = p[0], hi = p[0];
    for (long double v : p) {
      lo = std::fmin(lo, v);
      hi = std::fmax(hi, v);
    }
    return {down(lo), up(hi)};
  }
};

/// Outward conversion of an exact rational to a long double interval.
Interval enclose(const BigRational &q);

} // namespace specls
