#include "specls/triangles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <thread>

namespace specls {

namespace {

/// Mask of labels strictly above v within word v >> 6.
inline Word above(int v) { return (v & 63) == 63 ? Word{0} : ~Word{0} << ((v & 63) + 1); }

template <typename F>
void for_each_bit(std::span<const Word> row, int from_word, F &&f)
{
  for (int i = from_word; i < static_cast<int>(row.size()); ++i)
    for (Word w = row[i]; w; w &= w - 1)
      f(i * 64 + std::countr_zero(w));
}

template <typename F>
void for_each_triangle(const Graph &g, F &&f)
{
  const int words = g.words();
  for (int u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    for_each_bit(ru, u >> 6, [&](int v) {
      if (v <= u)
        return;
      auto rv = g.row(v);
      for (int i = v >> 6; i < words; ++i) {
        Word w = ru[i] & rv[i];
        if (i == (v >> 6))
          w &= above(v);
        for (; w; w &= w - 1)
          f(u, v, i * 64 + std::countr_zero(w));
      }
    });
  }
}

} // namespace

std::int64_t triangle_count(const Graph &g)
{
  const int words = g.words();
  std::int64_t t = 0;
  for (int u = 0; u < g.order(); ++u) {
    auto ru = g.row(u);
    for_each_bit(ru, u >> 6, [&](int v) {
      if (v <= u)
        return;
      auto rv = g.row(v);
      t += std::popcount(ru[v >> 6] & rv[v >> 6] & above(v));
      for (int i = (v >> 6) + 1; i < words; ++i)
        t += std::popcount(ru[i] & rv[i]);
    });
  }
  return t;
}

std::vector<Triangle> list_triangles(const Graph &g, std::size_t budget)
{
  std::vector<Triangle> out;
  for_each_triangle(g, [&](int u, int v, int w) {
    if (out.size() >= budget)
      throw BudgetExceeded("triangle list exceeds budget; use heuristic-only mode");
    out.push_back({u, v, w});
  });
  return out;
}

std::vector<std::int64_t> triangles_per_vertex(const Graph &g)
{
  std::vector<std::int64_t> c(static_cast<std::size_t>(g.order()), 0);
  for_each_triangle(g, [&](int u, int v, int w) {
    ++c[u];
    ++c[v];
    ++c[w];
  });
  return c;
}

std::map<Edge, std::int64_t> triangles_per_edge(const Graph &g)
{
  std::map<Edge, std::int64_t> c;
  for (const auto &e : g.edges())
    c[e] = 0;
  for_each_triangle(g, [&](int u, int v, int w) {
    ++c[{u, v}];
    ++c[{u, w}];
    ++c[{v, w}];
  });
  return c;
}

TriangleStats triangle_stats(const Graph &g, bool with_per_edge, bool with_tau3)
{
  TriangleStats s;
  s.t = triangle_count(g);
  if (with_per_edge)
    s.per_edge = triangles_per_edge(g);
  if (with_tau3) {
    auto c = tau3(g);
    s.tau3 = c.size;
    s.cover_witness = std::move(c.witness);
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

class CoverSearch
{
public:
  CoverSearch(int n, std::vector<Triangle> tris, std::size_t budget)
      : tris_(std::move(tris)), chosen_(static_cast<std::size_t>(n), 0), excluded_(chosen_), used_(chosen_),
        incidence_(static_cast<std::size_t>(n), 0), budget_(budget)
  {
    for (const auto &t : tris_)
      for (int v : t)
        ++incidence_[v];
  }

  std::vector<int> greedy()
  {
    std::vector<char> in(chosen_.size(), 0);
    std::vector<int> pick;
    for (;;) {
      std::vector<std::int64_t> hits(chosen_.size(), 0);
      bool any = false;
      for (const auto &t : tris_) {
        if (in[t[0]] || in[t[1]] || in[t[2]])
          continue;
        any = true;
        for (int v : t)
          ++hits[v];
      }
      if (!any)
        return pick;
      int best = static_cast<int>(std::max_element(hits.begin(), hits.end()) - hits.begin());
      in[best] = 1;
      pick.push_back(best);
    }
  }

  void run()
  {
    best_ = greedy();
    std::vector<int> current;
    search(current);
  }

  const std::vector<int> &best() const { return best_; }
  std::int64_t nodes() const { return nodes_; }

private:
  bool covered(const Triangle &t) const { return chosen_[t[0]] || chosen_[t[1]] || chosen_[t[2]]; }

  int packing_bound()
  {
    std::fill(used_.begin(), used_.end(), 0);
    int k = 0;
    for (const auto &t : tris_) {
      if (covered(t) || used_[t[0]] || used_[t[1]] || used_[t[2]])
        continue;
      used_[t[0]] = used_[t[1]] = used_[t[2]] = 1;
      ++k;
    }
    return k;
  }

  void search(std::vector<int> &current)
  {
    if (++nodes_ > static_cast<std::int64_t>(budget_))
      throw BudgetExceeded("triangle cover search exceeds node budget; use heuristic-only mode");
    const Triangle *open = nullptr;
    for (const auto &t : tris_)
      if (!covered(t)) {
        open = &t;
        break;
      }
    if (!open) {
      if (current.size() < best_.size())
        best_ = current;
      return;
    }
    if (current.size() + static_cast<std::size_t>(packing_bound()) >= best_.size())
      return;
    Triangle order = *open;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return incidence_[a] > incidence_[b]; });
    std::vector<int> newly_excluded;
    for (int v : order) {
      if (excluded_[v])
        continue;
      chosen_[v] = 1;
      current.push_back(v);
      search(current);
      current.pop_back();
      chosen_[v] = 0;
      excluded_[v] = 1;
      newly_excluded.push_back(v);
      if (current.size() + 1 >= best_.size())
        break;
    }
    for (int v : newly_excluded)
      excluded_[v] = 0;
  }

  std::vector<Triangle> tris_;
  std::vector<char> chosen_;
  std::vector<char> excluded_;
  std::vector<char> used_;
  std::vector<std::int64_t> incidence_;
  std::vector<int> best_;
  std::size_t budget_;
  std::int64_t nodes_ = 0;
};

} // namespace

TriangleCover tau3(const Graph &g, std::size_t budget)
{
  TriangleCover out;
  out.witness = VertexSet(g.order());
  auto tris = list_triangles(g, budget);
  if (tris.empty())
    return out;
  CoverSearch search(g.order(), std::move(tris), budget);
  search.run();
  for (int v : search.best())
    out.witness.set(v);
  out.size = static_cast<int>(search.best().size());
  out.nodes = search.nodes();
  return out;
}

bool is_triangle_cover(const Graph &g, const VertexSet &cover)
{
  bool ok = true;
  for_each_triangle(g, [&](int u, int v, int w) {
    if (!cover.test(u) && !cover.test(v) && !cover.test(w))
      ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------

PartitionWitness partition_stats(const Graph &g, const VertexSet &s)
{
  if (s.universe() != g.order())
    throw GraphError("partition set has the wrong universe");
  PartitionWitness p;
  p.S = s;
  p.T = s.complement();
  std::int64_t in_s = 0, in_t = 0, cross = 0;
  for (int v = 0; v < g.order(); ++v) {
    auto r = g.row(v);
    std::int64_t to_s = 0;
    for (int i = 0; i < g.words(); ++i)
      to_s += std::popcount(r[i] & s.words()[i]);
    std::int64_t to_t = degree(g, v) - to_s;
    if (s.test(v)) {
      in_s += to_s;
      cross += to_t;
    } else {
      in_t += to_t;
    }
  }
  p.eS = in_s / 2;
  p.eT = in_t / 2;
  p.eST = cross;
  return p;
}

VertexSet cover_from_partition(const Graph &g, const PartitionWitness &p)
{
  VertexSet cover(g.order());
  for (const auto &[u, v] : g.edges()) {
    bool inside = p.S.test(u) == p.S.test(v);
    if (inside && !cover.test(u) && !cover.test(v))
      cover.set(u);
  }
  return cover;
}

namespace {

struct CutBest
{
  std::int64_t cut = -1;
  std::uint32_t mask = 0;

  void offer(std::int64_t c, std::uint32_t m)
  {
    if (c > cut || (c == cut && m < mask)) {
      cut = c;
      mask = m;
    }
  }
};

/// Enumerates masks (high << low_bits) ^ gray(i) over the low bits.
CutBest gray_shard(const std::vector<std::uint32_t> &rows, int low_bits, std::uint32_t high)
{
  const int n = static_cast<int>(rows.size());
  const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1);
  std::uint32_t mask = high << low_bits;
  std::int64_t cut = 0;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1U)
      cut += std::popcount(rows[v] & ~mask & all);
  CutBest best;
  best.offer(cut, mask);
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    int v = std::countr_zero(i);
    std::uint32_t bit = 1U << v;
    int same, other;
    if (mask & bit) {
      same = std::popcount(rows[v] & mask);
      other = std::popcount(rows[v] & ~mask & all);
    } else {
      same = std::popcount(rows[v] & ~mask & all);
      other = std::popcount(rows[v] & mask);
    }
    cut += same - other;
    mask ^= bit;
    best.offer(cut, mask);
  }
  return best;
}

BipartiteDistance exact_distance(const Graph &g, int workers)
{
  const int n = g.order();
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    rows[v] = static_cast<std::uint32_t>(g.row(v)[0]);
  const int free_bits = n - 1;
  int high_bits = 0;
  while (high_bits < 4 && (1 << high_bits) < workers && high_bits < free_bits)
    ++high_bits;
  const int low_bits = free_bits - high_bits;
  const std::uint32_t shards = 1U << high_bits;
  std::vector<CutBest> results(shards);
  std::atomic<std::uint32_t> next{0};
  auto work = [&] {
    for (std::uint32_t s; (s = next.fetch_add(1)) < shards;)
      results[s] = gray_shard(rows, low_bits, s);
  };
  if (workers <= 1 || shards == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(shards)); ++w)
      pool.emplace_back(work);
    for (auto &t : pool)
      t.join();
  }
  CutBest best;
  for (const auto &r : results)
    best.offer(r.cut, r.mask);
  VertexSet s(n);
  for (int v = 0; v < n; ++v)
    if ((best.mask >> v) & 1U)
      s.set(v);
  BipartiteDistance out;
  out.witness = partition_stats(g, s);
  out.epsilon = out.witness.internal();
  out.exact = true;
  return out;
}

std::uint64_t splitmix(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

BipartiteDistance heuristic_distance(const Graph &g, std::uint64_t seed)
{
  const int n = g.order();
  const int restarts = 16;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for_each_bit(g.row(v), 0, [&](int w) { adj[v].push_back(w); });

  std::vector<char> best_side;
  std::int64_t best_internal = -1;
  for (int r = 0; r < restarts; ++r) {
    std::vector<char> side(static_cast<std::size_t>(n), 0);
    if (r == 0) {
      // BFS layering: the natural split for near-bipartite inputs.
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      for (int s = 0; s < n; ++s) {
        if (seen[s])
          continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
          for (int w : adj[queue[h]])
            if (!seen[w]) {
              seen[w] = 1;
              side[w] = static_cast<char>(!side[queue[h]]);
              queue.push_back(w);
            }
      }
    } else {
      std::mt19937_64 rng(splitmix(seed ^ static_cast<std::uint64_t>(r)));
      for (int v = 0; v < n; ++v)
        side[v] = static_cast<char>(rng() & 1U);
    }
    std::vector<int> same(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      for (int w : adj[v])
        same[v] += side[v] == side[w];
    for (bool improved = true; improved;) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        int deg = static_cast<int>(adj[v].size());
        if (2 * same[v] <= deg)
          continue;
        for (int w : adj[v])
          same[w] += side[w] == side[v] ? -1 : 1;
        same[v] = deg - same[v];
        side[v] = static_cast<char>(!side[v]);
        improved = true;
      }
    }
    std::int64_t internal = 0;
    for (int v = 0; v < n; ++v)
      internal += same[v];
    internal /= 2;
    if (best_internal < 0 || internal < best_internal) {
      best_internal = internal;
      best_side = side;
    }
  }
  VertexSet s(n);
  for (int v = 0; v < n; ++v)
    if (best_side[v])
      s.set(v);
  BipartiteDistance out;
  out.witness = partition_stats(g, s);
  out.epsilon = out.witness.internal();
  out.exact = false;
  return out;
}

} // namespace

BipartiteDistance bipartite_distance(const Graph &g, int exact_limit, int workers, std::uint64_t seed)
{
  const int n = g.order();
  if (n <= 1) {
    BipartiteDistance out;
    out.witness = partition_stats(g, VertexSet(n));
    out.exact = true;
    return out;
  }
  if (n <= std::min(exact_limit, kExactMaxCutLimit))
    return exact_distance(g, std::max(1, workers));
  return heuristic_distance(g, seed);
}

std::optional<PartitionWitness> find_cut_partition(const Graph &g, std::int64_t min_cut,
                                                   std::int64_t max_imbalance_sq)
{
  const int n = g.order();
  if (n > kExactMaxCutLimit)
    throw std::invalid_argument("exhaustive partition search needs n <= 30");
  auto accept = [&](std::int64_t cut, int size_s) {
    std::int64_t d = n - 2 * size_s;
    return cut >= min_cut && d * d <= max_imbalance_sq;
  };
  auto witness = [&](std::uint32_t mask) {
    VertexSet s(n);
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1U)
        s.set(v);
    return partition_stats(g, s);
  };
  if (n <= 1)
    return accept(0, 0) ? std::optional(witness(0)) : std::nullopt;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    rows[v] = static_cast<std::uint32_t>(g.row(v)[0]);
  const std::uint32_t all = (1U << n) - 1;
  std::uint32_t mask = 0;
  std::int64_t cut = 0;
  if (accept(cut, 0))
    return witness(mask);
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    int v = std::countr_zero(i);
    std::uint32_t bit = 1U << v;
    int same = (mask & bit) ? std::popcount(rows[v] & mask) : std::popcount(rows[v] & ~mask & all);
    cut += same - (std::popcount(rows[v]) - same);
    mask ^= bit;
    if (accept(cut, std::popcount(mask)))
      return witness(mask);
  }
  return std::nullopt;
}

std::int64_t degree_square_sum(const Graph &g)
{
  std::int64_t s = 0;
  for (int v = 0; v < g.order(); ++v) {
    std::int64_t d = degree(g, v);
    s += d * d;
  }
  return s;
}

std::int64_t multipartite_triangles(const std::vector<int> &parts)
{
  // Elementary symmetric polynomial e3 by the standard recurrence.
  std::int64_t e1 = 0, e2 = 0, e3 = 0;
  for (int p : parts) {
    if (p < 0)
      throw std::invalid_argument("negative part size");
    e3 += e2 * p;
    e2 += e1 * p;
    e1 += p;
  }
  return e3;
}

} // namespace specls
