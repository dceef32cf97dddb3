#pragma once

// Independent reference implementations for cross-checking the library.
// Everything here is deliberately naive.

#include "specls/graph.hpp"

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using specls::Graph;

inline Graph random_graph(int n, double p, std::mt19937_64 &rng)
{
  std::bernoulli_distribution coin(p);
  specls::GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng))
        b.add_edge(i, j);
  return b.build();
}

inline std::vector<std::vector<int>> matrix(const Graph &g)
{
  int n = g.order();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[i][j] = g.adjacent(i, j) ? 1 : 0;
  return a;
}

inline std::int64_t triangles(const Graph &g)
{
  auto a = matrix(g);
  int n = g.order();
  std::int64_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        t += a[i][j] & a[j][k] & a[k][i];
  return t / 6;
}

inline bool hits_all_triangles(const Graph &g, std::uint32_t mask)
{
  int n = g.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (g.adjacent(i, j) && g.adjacent(j, k) && g.adjacent(i, k) &&
            !((mask >> i) & 1U) && !((mask >> j) & 1U) && !((mask >> k) & 1U))
          return false;
  return true;
}

/// Smallest triangle cover by trying every vertex subset (n <= 16).
inline int tau3(const Graph &g)
{
  int n = g.order();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    int c = std::popcount(mask);
    if (c < best && hits_all_triangles(g, mask))
      best = c;
  }
  return best;
}

/// Largest cut over every vertex subset (n <= 20).
inline std::int64_t maxcut(const Graph &g)
{
  int n = g.order();
  auto edges = g.edges();
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::int64_t cut = 0;
    for (auto [u, v] : edges)
      cut += ((mask >> u) & 1U) != ((mask >> v) & 1U);
    best = std::max(best, cut);
  }
  return best;
}

inline bool has_clique(const Graph &g, int k)
{
  int n = g.order();
  std::vector<int> pick(k);
  std::function<bool(int, int)> rec = [&](int depth, int from) {
    if (depth == k)
      return true;
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int i = 0; i < depth && ok; ++i)
        ok = g.adjacent(pick[i], v);
      if (!ok)
        continue;
      pick[depth] = v;
      if (rec(depth + 1, v + 1))
        return true;
    }
    return false;
  };
  return rec(0, 0);
}

/// Isomorphism by trying every permutation (n <= 8).
inline bool isomorphic(const Graph &g, const Graph &h)
{
  if (g.order() != h.order() || g.size() != h.size())
    return false;
  int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = g.adjacent(i, j) == h.adjacent(p[i], p[j]);
    if (ok)
      return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// det(xI - A) by Faddeev-LeVerrier in exact integers, lowest degree first.
inline std::vector<mpz_class> charpoly(const Graph &g)
{
  int n = g.order();
  using M = std::vector<std::vector<mpz_class>>;
  M a(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[i][j] = g.adjacent(i, j) ? 1 : 0;
  std::vector<mpz_class> c(n + 1, 0);
  c[n] = 1;
  M mk(n, std::vector<mpz_class>(n, 0));
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    M next(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (int l = 0; l < n; ++l)
          s += a[i][l] * mk[l][j];
        next[i][j] = s;
      }
    for (int i = 0; i < n; ++i)
      next[i][i] += c[n - k + 1];
    mk = next;
    mpz_class tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        tr += a[i][l] * mk[l][i];
    c[n - k] = -tr / k;
  }
  return c;
}

inline mpq_class eval(const std::vector<mpz_class> &c, const mpq_class &x)
{
  mpq_class r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    r = r * x + mpq_class(*it);
  return r;
}

inline double eigen_lambda(const Graph &g)
{
  int n = g.order();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = g.adjacent(i, j) ? 1.0 : 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

struct Bracket
{
  long double lo;
  long double hi;
};

/// Spectral radius from the dense eigensolver, refined by exact rational
/// bisection on the LeVerrier polynomial when the root has odd multiplicity.
inline Bracket lambda(const Graph &g)
{
  if (g.size() == 0)
    return {0, 0};
  double e = eigen_lambda(g);
  auto c = charpoly(g);
  mpq_class lo(e - 1e-7), hi(e + 1e-7);
  if (sgn(eval(c, lo)) >= 0 || sgn(eval(c, hi)) <= 0)
    return {static_cast<long double>(lo.get_d()), static_cast<long double>(hi.get_d())};
  for (int i = 0; i < 60; ++i) {
    mpq_class mid = (lo + hi) / 2;
    if (sgn(eval(c, mid)) > 0)
      hi = mid;
    else
      lo = mid;
  }
  // get_d rounds to the nearest double; widen past that error
  long double slack = 4e-16L * (1 + e);
  return {lo.get_d() - slack, hi.get_d() + slack};
}

/// Root of c in [lo, hi] by sign bisection; the caller picks a bracket that
/// holds only the largest root.
inline long double largest_root(const std::vector<mpq_class> &c, long double lo, long double hi)
{
  auto f = [&](long double x) {
    mpq_class xv(static_cast<double>(x)), r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      r = r * xv + *it;
    return sgn(r);
  };
  int top = f(hi);
  for (int i = 0; i < 80; ++i) {
    long double mid = (lo + hi) / 2;
    if (f(mid) == top)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

} // namespace oracle
