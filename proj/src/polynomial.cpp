#include "specls/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace specls {

Interval enclose(const BigRational &q)
{
  // Two-term expansion: the residual after the leading double is itself
  // truncated to a double, so the sum is within 2^-100 relative of q.
  double d1 = q.get_d();
  BigRational rest = q - BigRational(d1);
  double d2 = rest.get_d();
  long double v = static_cast<long double>(d1) + static_cast<long double>(d2);
  return {down(down(v)), up(up(v))};
}

Polynomial::Polynomial(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const BigRational &c, int degree)
{
  std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1, BigRational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim()
{
  while (!c_.empty() && sgn(c_.back()) == 0)
    c_.pop_back();
}

BigRational Polynomial::operator()(const BigRational &x) const
{
  BigRational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const
{
  if (c_.size() <= 1)
    return {};
  std::vector<BigRational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const
{
  if (c_.empty())
    return {};
  std::vector<BigRational> v = c_;
  BigRational lead = c_.back();
  for (auto &x : v)
    x /= lead;
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial &a, const Polynomial &b)
{
  std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial &a, const Polynomial &b)
{
  std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    v[i] -= b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<BigRational> v(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial &divisor) const
{
  if (divisor.is_zero())
    throw std::domain_error("polynomial division by zero");
  std::vector<BigRational> rem = c_;
  const int dd = divisor.degree();
  if (degree() < dd)
    return {Polynomial{}, *this};
  std::vector<BigRational> quo(static_cast<std::size_t>(degree() - dd + 1), BigRational(0));
  for (int k = degree(); k >= dd; --k) {
    BigRational f = rem[k] / divisor.leading();
    quo[k - dd] = f;
    if (sgn(f) == 0)
      continue;
    for (int j = 0; j <= dd; ++j)
      rem[k - dd + j] -= f * divisor.c_[j];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string() const
{
  if (c_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigRational &a = c_[k];
    if (sgn(a) == 0)
      continue;
    BigRational mag = abs(a);
    os << (sgn(a) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (k == 0 || mag != 1)
      os << mag.get_str() << (k > 0 ? "*" : "");
    if (k >= 1)
      os << "x";
    if (k >= 2)
      os << "^" << k;
    first = false;
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b)
{
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial &p)
{
  if (p.degree() <= 0)
    return p;
  Polynomial g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

SturmSequence::SturmSequence(const Polynomial &p)
{
  Polynomial s = squarefree_part(p);
  chain_.push_back(s);
  if (s.degree() <= 0)
    return;
  chain_.push_back(s.derivative());
  while (chain_.back().degree() > 0) {
    auto r = chain_[chain_.size() - 2].divmod(chain_.back()).second;
    if (r.is_zero())
      break;
    chain_.push_back(Polynomial{} - r);
  }
}

int SturmSequence::variations(const BigRational &x) const
{
  int count = 0, last = 0;
  for (const auto &p : chain_) {
    int s = p.sign_at(x);
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count_roots(const BigRational &a, const BigRational &b) const
{
  return variations(a) - variations(b);
}

BigRational cauchy_bound(const Polynomial &p)
{
  BigRational best = 0;
  for (int i = 0; i < p.degree(); ++i) {
    BigRational r = abs(p.coeff(i) / p.leading());
    if (r > best)
      best = r;
  }
  return best + 1;
}

void refine(const SturmSequence &s, RootBracket &b, const BigRational &width)
{
  while (b.width() > width) {
    BigRational mid = (b.lo + b.hi) / 2;
    if (s.count_roots(mid, b.hi) >= 1)
      b.lo = mid;
    else
      b.hi = mid;
  }
}

namespace {

std::optional<RootBracket> isolate_in(const SturmSequence &s, BigRational lo, BigRational hi)
{
  if (s.count_roots(lo, hi) == 0)
    return std::nullopt;
  while (s.count_roots(lo, hi) > 1) {
    BigRational mid = (lo + hi) / 2;
    if (s.count_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return RootBracket{lo, hi};
}

} // namespace

std::optional<RootBracket> isolate_largest_root(const Polynomial &p)
{
  if (p.degree() < 1)
    return std::nullopt;
  BigRational b = cauchy_bound(p);
  return isolate_in(SturmSequence(p), -b, b);
}

std::optional<RootBracket> isolate_largest_root(const Polynomial &p, const BigRational &lo, const BigRational &hi)
{
  if (p.degree() < 1)
    return std::nullopt;
  SturmSequence s(p);
  BigRational b = cauchy_bound(p);
  if (b > hi && s.count_roots(hi, b) > 0)
    return std::nullopt;
  return isolate_in(s, lo, hi);
}

std::strong_ordering compare_largest_roots(const Polynomial &p, const Polynomial &r)
{
  auto bp = isolate_largest_root(p);
  auto br = isolate_largest_root(r);
  if (!bp || !br)
    throw std::invalid_argument("compare_largest_roots: polynomial without real roots");
  SturmSequence sp(p), sr(r);
  Polynomial g = gcd(squarefree_part(p), squarefree_part(r));
  std::optional<SturmSequence> sg;
  if (g.degree() >= 1)
    sg.emplace(g);
  for (;;) {
    if (bp->hi <= br->lo)
      return std::strong_ordering::less;
    if (br->hi <= bp->lo)
      return std::strong_ordering::greater;
    if (sg) {
      BigRational lo = std::max(bp->lo, br->lo);
      BigRational hi = std::min(bp->hi, br->hi);
      if (sg->count_roots(lo, hi) >= 1)
        return std::strong_ordering::equal;
    }
    refine(sp, *bp, bp->width() / 2);
    refine(sr, *br, br->width() / 2);
  }
}

Polynomial characteristic_polynomial(const Graph &g)
{
  const int n = g.order();
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto r = g.row(v);
    for (int i = 0; i < g.words(); ++i)
      for (Word w = r[i]; w; w &= w - 1)
        nbr[v].push_back(i * 64 + std::countr_zero(w));
  }
  // p(x) = sum c[k] x^k with c[n] = 1; M_k = A M_{k-1} + c[n-k+1] I,
  // c[n-k] = -tr(A M_k) / k.
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, BigInt(0));
  c[n] = 1;
  using Matrix = std::vector<BigInt>;
  Matrix M(static_cast<std::size_t>(n) * n, BigInt(0)), AM(static_cast<std::size_t>(n) * n);
  for (int k = 1; k <= n; ++k) {
    // AM = A * M
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BigInt s = 0;
        for (int l : nbr[i])
          s += M[static_cast<std::size_t>(l) * n + j];
        AM[static_cast<std::size_t>(i) * n + j] = s;
      }
    for (int i = 0; i < n; ++i)
      AM[static_cast<std::size_t>(i) * n + i] += c[n - k + 1];
    M.swap(AM);
    BigInt tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l : nbr[i])
        tr += M[static_cast<std::size_t>(l) * n + i];
    c[n - k] = -tr / k;
  }
  std::vector<BigRational> q(c.begin(), c.end());
  return Polynomial(std::move(q));
}

BigRational parse_rational(const std::string &text)
{
  std::string mant = text, exp_part;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    exp_part = text.substr(e + 1);
  }
  bool neg = !mant.empty() && mant[0] == '-';
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+'))
    mant.erase(0, 1);
  if (auto slash = mant.find('/'); slash != std::string::npos) {
    BigRational r(mant);
    r.canonicalize();
    return neg ? BigRational(-r) : r;
  }
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  for (char ch : mant) {
    if (ch == '.') {
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("not a number: " + text);
    digits.push_back(ch);
    if (seen_dot)
      ++scale;
  }
  if (digits.empty())
    throw std::invalid_argument("not a number: " + text);
  long e = exp_part.empty() ? 0 : std::stol(exp_part);
  BigInt num(digits, 10);
  BigInt ten_pow;
  long shift = e - scale;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  BigRational r = shift < 0 ? BigRational(num, ten_pow) : BigRational(num * ten_pow);
  r.canonicalize();
  return neg ? BigRational(-r) : r;
}

BigRational to_big(const Rational &r)
{
  BigRational q(BigInt(static_cast<long>(r.numerator())), BigInt(static_cast<long>(r.denominator())));
  q.canonicalize();
  return q;
}

std::string to_string(FamilyTag tag)
{
  switch (tag) {
  case FamilyTag::YEven: return "Y_even";
  case FamilyTag::YOdd: return "Y_odd";
  case FamilyTag::TStar4: return "T_star4";
  case FamilyTag::C4Embed: return "C4_embed";
  }
  return "?";
}

FamilyTag family_tag_from_string(const std::string &s)
{
  for (auto t : {FamilyTag::YEven, FamilyTag::YOdd, FamilyTag::TStar4, FamilyTag::C4Embed})
    if (to_string(t) == s)
      return t;
  throw std::invalid_argument("unknown family polynomial tag: " + s);
}

FamilyPolynomial family_polynomial(FamilyTag tag, int n)
{
  auto q = [](long num, long den = 1) {
    BigRational r(num, den);
    r.canonicalize();
    return r;
  };
  const BigRational N(n);
  const BigRational N2 = N * N;
  std::vector<BigRational> c;
  switch (tag) {
  case FamilyTag::YEven:
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("Y_even requires even n >= 4");
    // x^3 - x^2 - (n^2/4) x + n^2/4 - n
    c = {N2 / 4 - N, -N2 / 4, q(-1), q(1)};
    break;
  case FamilyTag::YOdd:
    if (n < 3 || n % 2 == 0)
      throw std::invalid_argument("Y_odd requires odd n >= 3");
    // x^3 - x^2 + ((1 - n^2)/4) x + n^2/4 - n + 3/4
    c = {N2 / 4 - N + q(3, 4), (1 - N2) / 4, q(-1), q(1)};
    break;
  case FamilyTag::TStar4:
    if (n < 9 || n % 2 == 0)
      throw std::invalid_argument("T_star4 requires odd n >= 9");
    // x^4 - (15/4 + n^2/4) x^2 + (4 - 4n) x + 9 - 10n + n^2
    c = {9 - 10 * N + N2, 4 - 4 * N, -q(15, 4) - N2 / 4, q(0), q(1)};
    break;
  case FamilyTag::C4Embed:
    if (n < 7 || n % 2 == 0)
      throw std::invalid_argument("C4_embed requires odd n >= 7");
    // x^3 - 2x^2 + (1/4 - n^2/4) x + 7/2 - 4n + n^2/2
    c = {q(7, 2) - 4 * N + N2 / 2, q(1, 4) - N2 / 4, q(-2), q(1)};
    break;
  }
  return {tag, n, Polynomial(std::move(c))};
}

FamilyRoot family_lambda(FamilyTag tag, int n, const BigRational &tol)
{
  if (sgn(tol) <= 0)
    throw std::invalid_argument("family_lambda: tolerance must be positive");
  FamilyPolynomial fp = family_polynomial(tag, n);
  BigRational lo(n, 2), hi(n);
  lo.canonicalize();
  auto bracket = isolate_largest_root(fp.poly, lo, hi);
  if (!bracket)
    throw std::invalid_argument("no root of " + to_string(tag) + " in (n/2, n] for n=" + std::to_string(n));
  refine(SturmSequence(fp.poly), *bracket, tol);
  Interval iv{enclose(bracket->lo).lo, enclose(bracket->hi).hi};
  return {*bracket, iv};
}

} // namespace specls
