#include "specls/isomorphism.hpp"

#include "specls/polynomial.hpp"
#include "specls/triangles.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

namespace specls {

Fingerprint fingerprint(const Graph &g)
{
  Fingerprint f;
  f.degrees = degree_sequence(g);
  std::sort(f.degrees.begin(), f.degrees.end());
  f.triangles = triangles_per_vertex(g);
  std::sort(f.triangles.begin(), f.triangles.end());
  if (g.order() <= kFingerprintCharpolyLimit) {
    Polynomial p = characteristic_polynomial(g);
    for (const auto &c : p.coeffs())
      f.charpoly.push_back(c.get_str());
  }
  return f;
}

namespace {

/// Disjoint union of g and h sharing one colour space, so both sides are
/// refined with identical colour names.
class PairRefiner
{
public:
  PairRefiner(const Graph &g, const Graph &h) : n_(g.order()), adj_(static_cast<std::size_t>(2 * n_))
  {
    for (int side = 0; side < 2; ++side) {
      const Graph &x = side ? h : g;
      for (int v = 0; v < n_; ++v) {
        auto r = x.row(v);
        for (int i = 0; i < x.words(); ++i)
          for (Word w = r[i]; w; w &= w - 1)
            adj_[side * n_ + v].push_back(side * n_ + i * 64 + std::countr_zero(w));
      }
    }
  }

  int n() const { return n_; }

  /// Refines to the coarsest equitable colouring; false when the two sides
  /// end with different colour histograms.
  bool refine(std::vector<int> &colour) const
  {
    const int total = 2 * n_;
    int classes = count_classes(colour);
    for (;;) {
      std::map<std::pair<int, std::vector<int>>, int> names;
      std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(total));
      for (int v = 0; v < total; ++v) {
        std::vector<int> nb;
        nb.reserve(adj_[v].size());
        for (int w : adj_[v])
          nb.push_back(colour[w]);
        std::sort(nb.begin(), nb.end());
        sig[v] = {colour[v], std::move(nb)};
        names.emplace(sig[v], 0);
      }
      int next = 0;
      for (auto &kv : names)
        kv.second = next++;
      for (int v = 0; v < total; ++v)
        colour[v] = names[sig[v]];
      if (!balanced(colour))
        return false;
      if (next == classes)
        return true;
      classes = next;
    }
  }

  bool balanced(const std::vector<int> &colour) const
  {
    std::map<int, int> diff;
    for (int v = 0; v < n_; ++v) {
      ++diff[colour[v]];
      --diff[colour[n_ + v]];
    }
    return std::all_of(diff.begin(), diff.end(), [](const auto &kv) { return kv.second == 0; });
  }

  bool verify(const Graph &g, const Graph &h, const std::vector<int> &map) const
  {
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (g.adjacent(u, v) != h.adjacent(map[u], map[v]))
          return false;
    return true;
  }

private:
  static int count_classes(const std::vector<int> &colour)
  {
    std::vector<int> c = colour;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  int n_;
  std::vector<std::vector<int>> adj_;
};

struct SearchState
{
  const Graph &g;
  const Graph &h;
  const PairRefiner &refiner;
  std::int64_t budget;
  std::int64_t nodes = 0;
  bool exhausted = false;
};

/// Pairs the i-th vertex of each g cell with the i-th of the h cell. Cheap,
/// and enough whenever the remaining cells are homogeneous.
std::optional<std::vector<int>> cellwise_map(const SearchState &st, const std::vector<int> &colour, int n)
{
  std::map<int, std::vector<int>> images;
  for (int w = 0; w < n; ++w)
    images[colour[n + w]].push_back(w);
  std::map<int, std::size_t> used;
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    map[v] = images[colour[v]][used[colour[v]]++];
  if (st.refiner.verify(st.g, st.h, map))
    return map;
  return std::nullopt;
}

std::optional<std::vector<int>> individualise(SearchState &st, std::vector<int> colour)
{
  if (st.budget > 0 && ++st.nodes > st.budget) {
    st.exhausted = true;
    return std::nullopt;
  }
  if (!st.refiner.refine(colour))
    return std::nullopt;
  const int n = st.refiner.n();
  std::map<int, std::vector<int>> cells;
  for (int v = 0; v < n; ++v)
    cells[colour[v]].push_back(v);
  int target = -1;
  std::size_t smallest = 0;
  for (const auto &[c, members] : cells)
    if (members.size() > 1 && (target < 0 || members.size() < smallest)) {
      target = c;
      smallest = members.size();
    }
  if (target < 0) {
    std::map<int, int> image;
    for (int w = 0; w < n; ++w)
      image[colour[n + w]] = w;
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      map[v] = image[colour[v]];
    if (st.refiner.verify(st.g, st.h, map))
      return map;
    return std::nullopt;
  }
  if (auto m = cellwise_map(st, colour, n))
    return m;
  const int v = cells[target].front();
  const int fresh = 2 * n + 1;
  for (int w = 0; w < n; ++w) {
    if (colour[n + w] != target)
      continue;
    std::vector<int> next = colour;
    next[v] = fresh;
    next[n + w] = fresh;
    if (auto m = individualise(st, std::move(next)))
      return m;
    if (st.exhausted)
      return std::nullopt;
  }
  return std::nullopt;
}

} // namespace

std::optional<bool> similar_vertices(const Graph &g, int u, int v, int exhaustive_limit, std::int64_t node_budget)
{
  const int n = g.order();
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw GraphError("vertex out of range");
  if (u == v)
    return true;
  PairRefiner refiner(g, g);
  std::vector<int> colour(static_cast<std::size_t>(2 * n), 0);
  colour[u] = 1;
  colour[n + v] = 1;
  SearchState st{g, g, refiner, n <= exhaustive_limit ? 0 : node_budget};
  if (individualise(st, colour))
    return true;
  if (st.exhausted)
    return std::nullopt;
  return false;
}

IsomorphismResult test_isomorphism(const Graph &g, const Graph &h, int exhaustive_limit, std::int64_t node_budget)
{
  IsomorphismResult out;
  if (g.order() != h.order() || g.size() != h.size()) {
    out.certified = true;
    out.method = "invariant";
    return out;
  }
  const int n = g.order();
  PairRefiner refiner(g, h);
  std::vector<int> colour(static_cast<std::size_t>(2 * n), 0);
  if (!refiner.refine(colour)) {
    out.certified = true;
    out.method = "invariant";
    return out;
  }
  SearchState st{g, h, refiner, n <= exhaustive_limit ? 0 : node_budget};
  auto map = individualise(st, colour);
  if (map) {
    out.isomorphic = true;
    out.certified = true;
    out.mapping = std::move(*map);
    out.method = "search";
    return out;
  }
  if (!st.exhausted) {
    out.certified = true;
    out.method = "search";
    return out;
  }
  out.isomorphic = fingerprint(g) == fingerprint(h);
  out.certified = !out.isomorphic;
  out.method = "fingerprint";
  return out;
}

} // namespace specls
