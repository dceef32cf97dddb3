#include "specls/search.hpp"

#include "specls/graph6.hpp"
#include "specls/spectral.hpp"
#include "specls/triangles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

namespace specls {

int slot_count(int n) { return n * (n - 1) / 2; }

Edge slot_pair(int slot)
{
  if (slot < 0)
    throw std::invalid_argument("negative edge slot");
  int j = 1;
  while ((j + 1) * j / 2 <= slot)
    ++j;
  return {slot - j * (j - 1) / 2, j};
}

Graph graph_from_mask(int n, std::uint64_t edges)
{
  if (n < 0 || n > kMaxMaskOrder)
    throw std::invalid_argument("mask graphs need n <= " + std::to_string(kMaxMaskOrder));
  GraphBuilder b(n);
  for (std::uint64_t w = edges; w; w &= w - 1) {
    auto [u, v] = slot_pair(std::countr_zero(w));
    b.add_edge(u, v);
  }
  return b.build();
}

namespace {

std::int64_t binomial(int n, int k)
{
  if (k < 0 || k > n)
    return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max())
      return std::numeric_limits<std::int64_t>::max();
  }
  return static_cast<std::int64_t>(r);
}

/// One unit of enumeration work: masks with k bits whose highest bit is h.
struct Shard
{
  int k = 0;
  int h = -1;
};

std::vector<Shard> shards_for(int slots, int k_min, int k_max)
{
  std::vector<Shard> out;
  for (int k = std::max(k_min, 0); k <= std::min(k_max, slots); ++k) {
    if (k == 0) {
      out.push_back({0, -1});
      continue;
    }
    for (int h = k - 1; h < slots; ++h)
      out.push_back({k, h});
  }
  return out;
}

template <class F>
std::int64_t for_each_in_shard(const Shard &s, F &&f)
{
  if (s.k == 0) {
    f(std::uint64_t{0});
    return 1;
  }
  const std::uint64_t top = std::uint64_t{1} << s.h;
  if (s.k == 1) {
    f(top);
    return 1;
  }
  std::int64_t count = 0;
  std::uint64_t x = (std::uint64_t{1} << (s.k - 1)) - 1;
  while (x < top) {
    f(top | x);
    ++count;
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return count;
}

void check_order(int n)
{
  if (n < 1 || n > kMaxMaskOrder)
    throw SearchError("labeled enumeration needs 1 <= n <= " + std::to_string(kMaxMaskOrder));
}

void check_ceiling(int n, int k_min, int k_max, std::int64_t ceiling)
{
  const std::int64_t estimate = subset_count(n, k_min, k_max);
  if (estimate > ceiling)
    throw SearchError("enumeration of " + std::to_string(estimate) + " labeled graphs on n=" + std::to_string(n) +
                      " exceeds the ceiling " + std::to_string(ceiling));
}

std::int64_t enumerate_range(int n, int k_min, int k_max, bool complement,
                             const std::function<void(std::uint64_t)> &visitor, std::int64_t ceiling)
{
  check_order(n);
  check_ceiling(n, k_min, k_max, ceiling);
  const int slots = slot_count(n);
  const std::uint64_t full = slots == 0 ? 0 : (~std::uint64_t{0} >> (64 - slots));
  std::int64_t count = 0;
  for (const auto &s : shards_for(slots, k_min, k_max))
    count += for_each_in_shard(s, [&](std::uint64_t mask) { visitor(complement ? full ^ mask : mask); });
  return count;
}

template <class F>
void parallel_for(std::size_t count, int workers, F &&fn)
{
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min<int>(workers, static_cast<int>(count)); ++w)
    pool.emplace_back(run);
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t range)
{
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit)
      return x % range;
  }
}

bool margin_less(const Margin &a, const Margin &b)
{
  if (a.exact && b.exact)
    return *a.exact < *b.exact;
  return a.value.lo < b.value.lo;
}

bool is_equality(const Margin &m)
{
  if (m.exact)
    return m.exact->numerator() == 0;
  return m.value.lo <= 0 && 0 <= m.value.hi && m.value.width() < 1e-9L;
}

std::string params_text(const std::map<std::string, std::string> &p)
{
  std::string s;
  for (const auto &[k, v] : p)
    s += (s.empty() ? "" : ",") + k + "=" + v;
  return s;
}

bool counterexample_before(const Counterexample &a, const Counterexample &b)
{
  if (a.graph6 != b.graph6)
    return a.graph6 < b.graph6;
  return params_text(a.verdict.params) < params_text(b.verdict.params);
}

bool equality_before(const EqualityRecord &a, const EqualityRecord &b)
{
  if (a.n != b.n)
    return a.n < b.n;
  if (a.m != b.m)
    return a.m < b.m;
  if (a.graph6 != b.graph6)
    return a.graph6 < b.graph6;
  return params_text(a.params) < params_text(b.params);
}

/// Partial result of one shard or sample; merged in index order.
struct Tally
{
  std::int64_t visited = 0;
  std::int64_t examined = 0;
  std::int64_t hypothesis_met = 0;
  std::int64_t indeterminate = 0;
  std::int64_t counterexample_count = 0;
  std::vector<Counterexample> counterexamples;
  std::optional<ExtremalRecord> extremal;
  std::int64_t equality_count = 0;
  std::vector<EqualityRecord> equalities;

  void add_counterexample(Counterexample c, std::size_t cap)
  {
    ++counterexample_count;
    counterexamples.push_back(std::move(c));
    if (counterexamples.size() > 2 * cap + 16)
      trim(cap);
  }

  void add_equality(EqualityRecord e, std::size_t cap)
  {
    ++equality_count;
    equalities.push_back(std::move(e));
    if (equalities.size() > 2 * cap + 16)
      trim_equalities(cap);
  }

  void offer_extremal(ExtremalRecord r)
  {
    if (!extremal || margin_less(r.margin, extremal->margin))
      extremal = std::move(r);
  }

  void trim(std::size_t cap)
  {
    std::sort(counterexamples.begin(), counterexamples.end(), counterexample_before);
    if (counterexamples.size() > cap)
      counterexamples.resize(cap);
  }

  void trim_equalities(std::size_t cap)
  {
    std::sort(equalities.begin(), equalities.end(), equality_before);
    if (equalities.size() > cap)
      equalities.resize(cap);
  }

  void merge(Tally &&o, std::size_t cap, std::size_t eq_cap)
  {
    visited += o.visited;
    examined += o.examined;
    hypothesis_met += o.hypothesis_met;
    indeterminate += o.indeterminate;
    counterexample_count += o.counterexample_count;
    for (auto &c : o.counterexamples)
      counterexamples.push_back(std::move(c));
    trim(cap);
    equality_count += o.equality_count;
    for (auto &e : o.equalities)
      equalities.push_back(std::move(e));
    trim_equalities(eq_cap);
    if (o.extremal)
      offer_extremal(std::move(*o.extremal));
  }

  void into(SearchReport &r, std::size_t cap, std::size_t eq_cap)
  {
    trim(cap);
    trim_equalities(eq_cap);
    r.graphs_visited += visited;
    r.graphs_examined += examined;
    r.hypothesis_met += hypothesis_met;
    r.indeterminate += indeterminate;
    r.counterexample_count += counterexample_count;
    r.counterexamples = std::move(counterexamples);
    r.extremal = std::move(extremal);
    r.equality_count += equality_count;
    r.equalities = std::move(equalities);
  }
};

void record(Tally &tally, const Graph &g, GraphFacts &f, TheoremVerdict &&v, const SearchJob &job)
{
  ++tally.examined;
  if (v.indeterminate())
    ++tally.indeterminate;
  if (v.hypothesis != Truth::True)
    return;
  ++tally.hypothesis_met;
  const Margin *pm = v.primary_margin();
  std::string g6;
  auto graph6 = [&]() -> const std::string & {
    if (g6.empty())
      g6 = emit_graph6(g);
    return g6;
  };
  if (pm) {
    if (!tally.extremal || margin_less(*pm, tally.extremal->margin))
      tally.offer_extremal({graph6(), v.n, v.params, *pm});
    if (is_equality(*pm))
      tally.add_equality({graph6(), v.n, g.size(), f.triangles(), v.params, v.notes}, job.max_equalities);
  }
  if (v.counterexample())
    tally.add_counterexample({graph6(), std::move(v)}, job.max_counterexamples);
}

void set_param(TheoremParams &p, TheoremId id, int value)
{
  switch (id) {
  case TheoremId::SPEC_BC: p.s = value; break;
  case TheoremId::WILF:
  case TheoremId::NIKIFOROV_M: p.r = value; break;
  case TheoremId::TRI_EFFI: p.k = Rational(value); break;
  default: p.q = value; break;
  }
}

std::string param_name(TheoremId id)
{
  switch (id) {
  case TheoremId::SPEC_BC: return "s";
  case TheoremId::WILF:
  case TheoremId::NIKIFOROV_M: return "r";
  case TheoremId::TRI_EFFI: return "k";
  case TheoremId::MANTEL:
  case TheoremId::ER_RAD:
  case TheoremId::NING_ZHAI:
  case TheoremId::BN_INEQ:
  case TheoremId::MOON_MOSER:
  case TheoremId::FAR_BIP_SUPERSAT:
  case TheoremId::DEG_SQ:
  case TheoremId::NOSAL_NZ:
  case TheoremId::BOOK_CONJ: return "";
  default: return "q";
  }
}

std::vector<int> param_grid(const SearchJob &job, int n)
{
  int hi = job.param_max;
  if (hi <= 0)
    hi = job.target == TheoremId::LS ? (n + 1) / 2 - 1 : job.param_min;
  std::vector<int> out;
  for (int p = job.param_min; p <= hi; ++p)
    out.push_back(p);
  return out;
}

struct WorkItem
{
  int n;
  int param;
  bool complement;
  Shard shard;
};

/// Complement-size or edge-count bounds for one (n, param) cell.
std::pair<int, int> k_range(const SearchJob &job, int n, int param, bool &complement)
{
  const int slots = slot_count(n);
  const std::int64_t quarter = floor_quarter_square(n);
  EdgeRange range = job.edges;
  std::int64_t min_edges = 0;
  if (range == EdgeRange::Auto) {
    range = EdgeRange::All;
    if (job.target == TheoremId::LS)
      min_edges = quarter + param;
    else if (job.target == TheoremId::MANTEL || job.target == TheoremId::ER_RAD)
      min_edges = quarter + 1;
  }
  if (range == EdgeRange::Sparse) {
    complement = false;
    return {0, static_cast<int>(std::min<std::int64_t>(quarter, slots))};
  }
  complement = true;
  return {0, static_cast<int>(std::max<std::int64_t>(-1, slots - min_edges))};
}

void evaluate_mask(Tally &tally, const WorkItem &item, std::uint64_t edges, const SearchJob &job,
                   const std::vector<Edge> &pairs)
{
  ++tally.visited;
  const int n = item.n;
  std::uint32_t rows[kMaxMaskOrder] = {};
  for (std::uint64_t w = edges; w; w &= w - 1) {
    auto [u, v] = pairs[static_cast<std::size_t>(std::countr_zero(w))];
    rows[u] |= 1U << v;
    rows[v] |= 1U << u;
  }
  if (job.skip_isolated)
    for (int v = 0; v < n; ++v)
      if (!rows[v])
        return;

  if (job.target == TheoremId::LS) {
    // Counting fast path; a verdict object is built only when needed.
    std::int64_t t = 0;
    for (int v = 0; v < n; ++v)
      for (std::uint32_t w = rows[v] & ~((2U << v) - 1); w; w &= w - 1) {
        const int u = std::countr_zero(w);
        t += std::popcount(rows[v] & rows[u] & ~((2U << u) - 1));
      }
    const std::int64_t m = std::popcount(edges);
    const int q = item.param;
    ++tally.examined;
    if (!(q >= 1 && 2 * q < n && m >= floor_quarter_square(n) + q))
      return;
    ++tally.hypothesis_met;
    const std::int64_t margin = t - static_cast<std::int64_t>(q) * (n / 2);
    const bool better = !tally.extremal || Rational(margin) < *tally.extremal->margin.exact;
    if (!better && margin > 0)
      return;
    const Graph g = graph_from_mask(n, edges);
    auto v = ls_verdict(n, m, t, q);
    const std::string g6 = emit_graph6(g);
    if (better)
      tally.offer_extremal({g6, n, v.params, Margin::of(margin)});
    if (margin == 0)
      tally.add_equality({g6, n, m, t, v.params, {}}, job.max_equalities);
    if (margin < 0)
      tally.add_counterexample({g6, std::move(v)}, job.max_counterexamples);
    return;
  }

  const Graph g = graph_from_mask(n, edges);
  GraphFacts f(g, job.verify);
  TheoremParams p = job.params;
  set_param(p, job.target, item.param);
  record(tally, g, f, verify(job.target, f, p), job);
}

} // namespace

std::int64_t subset_count(int n, int k_min, int k_max)
{
  const int slots = slot_count(n);
  std::int64_t total = 0;
  for (int k = std::max(k_min, 0); k <= std::min(k_max, slots); ++k) {
    const std::int64_t c = binomial(slots, k);
    if (c > std::numeric_limits<std::int64_t>::max() - total)
      return std::numeric_limits<std::int64_t>::max();
    total += c;
  }
  return total;
}

std::int64_t enumerate_dense(int n, std::int64_t min_edges, const std::function<void(std::uint64_t)> &visitor,
                             std::int64_t ceiling)
{
  check_order(n);
  const int slots = slot_count(n);
  const std::int64_t k_max = slots - std::max<std::int64_t>(min_edges, 0);
  if (k_max < 0)
    return 0;
  return enumerate_range(n, 0, static_cast<int>(k_max), true, visitor, ceiling);
}

std::int64_t enumerate_sparse(int n, std::int64_t max_edges, const std::function<void(std::uint64_t)> &visitor,
                              std::int64_t ceiling)
{
  check_order(n);
  if (max_edges < 0)
    return 0;
  const int k_max = static_cast<int>(std::min<std::int64_t>(max_edges, slot_count(n)));
  return enumerate_range(n, 0, k_max, false, visitor, ceiling);
}

std::string to_string(SearchMode m)
{
  switch (m) {
  case SearchMode::Exhaustive: return "exhaustive";
  case SearchMode::Random: return "random";
  case SearchMode::LocalSearch: return "local";
  }
  return "?";
}

SearchMode search_mode_from_string(const std::string &s)
{
  if (s == "exhaustive")
    return SearchMode::Exhaustive;
  if (s == "random")
    return SearchMode::Random;
  if (s == "local")
    return SearchMode::LocalSearch;
  throw std::invalid_argument("unknown search mode '" + s + "'");
}

std::string to_string(EdgeRange e)
{
  switch (e) {
  case EdgeRange::Auto: return "auto";
  case EdgeRange::All: return "all";
  case EdgeRange::Sparse: return "sparse";
  }
  return "?";
}

EdgeRange edge_range_from_string(const std::string &s)
{
  if (s == "auto")
    return EdgeRange::Auto;
  if (s == "all")
    return EdgeRange::All;
  if (s == "sparse")
    return EdgeRange::Sparse;
  throw std::invalid_argument("unknown edge range '" + s + "'");
}

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SearchReport run_exhaustive(const SearchJob &job)
{
  if (!is_graph_theorem(job.target))
    throw SearchError(to_string(job.target) + " cannot be enumerated per graph");
  if (job.n_min > job.n_max)
    throw SearchError("empty n range");
  SearchReport report;
  report.target = job.target;
  report.mode = SearchMode::Exhaustive;
  report.seed = job.seed;

  std::vector<WorkItem> items;
  for (int n = job.n_min; n <= job.n_max; ++n) {
    check_order(n);
    for (int p : param_grid(job, n)) {
      bool complement = true;
      auto [k_min, k_max] = k_range(job, n, p, complement);
      check_ceiling(n, k_min, k_max, job.ceiling);
      const std::int64_t expected = subset_count(n, k_min, k_max);
      report.expected_count += expected;
      const std::string name = param_name(job.target);
      report.log.push_back("n=" + std::to_string(n) + (name.empty() ? "" : " " + name + "=" + std::to_string(p)) +
                           ": " + std::to_string(expected) + " labeled graphs");
      for (const auto &s : shards_for(slot_count(n), k_min, k_max))
        items.push_back({n, p, complement, s});
    }
  }

  std::vector<Edge> pairs;
  for (int s = 0; s < slot_count(kMaxMaskOrder); ++s)
    pairs.push_back(slot_pair(s));

  std::vector<Tally> results(items.size());
  parallel_for(items.size(), job.workers, [&](std::size_t i) {
    const WorkItem &item = items[i];
    const int slots = slot_count(item.n);
    const std::uint64_t full = slots == 0 ? 0 : (~std::uint64_t{0} >> (64 - slots));
    Tally &tally = results[i];
    for_each_in_shard(item.shard, [&](std::uint64_t mask) {
      evaluate_mask(tally, item, item.complement ? full ^ mask : mask, job, pairs);
    });
  });

  Tally total;
  for (auto &r : results)
    total.merge(std::move(r), job.max_counterexamples, job.max_equalities);
  total.into(report, job.max_counterexamples, job.max_equalities);
  return report;
}

Graph sample_gnm(int n, std::int64_t m, std::uint64_t seed)
{
  const std::int64_t slots = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (m < 0 || m > slots)
    throw std::invalid_argument("G(n,m) needs 0 <= m <= C(n,2)");
  std::mt19937_64 rng(seed);
  std::vector<char> chosen(static_cast<std::size_t>(slots), 0);
  for (std::int64_t j = slots - m; j < slots; ++j) {
    auto t = static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(j + 1)));
    chosen[static_cast<std::size_t>(chosen[t] ? j : t)] = 1;
  }
  GraphBuilder b(n);
  std::int64_t s = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++s)
      if (chosen[static_cast<std::size_t>(s)])
        b.add_edge(i, j);
  return b.build();
}

Graph perturb_edges(const Graph &g, int swaps, std::uint64_t seed)
{
  const int n = g.order();
  std::vector<Edge> edges = g.edges();
  const std::int64_t slots = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (edges.empty() || static_cast<std::int64_t>(edges.size()) == slots)
    throw std::invalid_argument("edge swaps need an edge and a non-edge");
  std::mt19937_64 rng(seed);
  GraphBuilder b(g);
  for (int s = 0; s < swaps; ++s) {
    const auto i = static_cast<std::size_t>(bounded(rng, edges.size()));
    const Edge gone = edges[i];
    edges[i] = edges.back();
    edges.pop_back();
    b.remove_edge(gone.first, gone.second);
    for (;;) {
      int u = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n)));
      int v = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n)));
      if (u == v || b.adjacent(u, v) || Edge{std::min(u, v), std::max(u, v)} == gone)
        continue;
      b.add_edge(u, v);
      edges.emplace_back(std::min(u, v), std::max(u, v));
      break;
    }
  }
  return b.build();
}

SearchReport run_random(const SearchJob &job)
{
  if (job.budget <= 0 && job.perturbations <= 0)
    throw SearchError("random search needs a positive budget");
  if (!is_graph_theorem(job.target))
    throw SearchError(to_string(job.target) + " cannot be sampled per graph");
  SearchReport report;
  report.target = job.target;
  report.mode = SearchMode::Random;
  report.seed = job.seed;
  const int n = job.n_min;
  const int q = job.param_min;
  const std::int64_t m = floor_quarter_square(n) + q;
  TheoremParams p = job.params;
  set_param(p, job.target, q);
  const Graph base = y_n2q(n, q);
  const std::size_t uniform = static_cast<std::size_t>(std::max<std::int64_t>(job.budget, 0));
  const std::size_t total = uniform + static_cast<std::size_t>(std::max<std::int64_t>(job.perturbations, 0));
  report.log.push_back("G(n,m) samples at n=" + std::to_string(n) + ", m=" + std::to_string(m) + ": " +
                       std::to_string(uniform));
  report.log.push_back("edge-swap neighbours of Y_{n,2,q}: " + std::to_string(total - uniform));

  std::vector<Tally> results(total);
  parallel_for(total, job.workers, [&](std::size_t i) {
    const std::uint64_t seed = splitmix64(job.seed ^ splitmix64(i));
    Graph g;
    if (i < uniform) {
      g = sample_gnm(n, m, seed);
    } else {
      const int swaps = 1 + static_cast<int>(splitmix64(seed) % 3);
      g = perturb_edges(base, swaps, seed);
    }
    GraphFacts f(g, job.verify);
    results[i].visited = 1;
    record(results[i], g, f, verify(job.target, f, p), job);
  });
  Tally all;
  for (auto &r : results)
    all.merge(std::move(r), job.max_counterexamples, job.max_equalities);
  all.into(report, job.max_counterexamples, job.max_equalities);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<int> regular_degree(const Graph &g)
{
  if (g.order() == 0)
    return std::nullopt;
  const int d = degree(g, 0);
  for (int v = 1; v < g.order(); ++v)
    if (degree(g, v) != d)
      return std::nullopt;
  return d;
}

/// Enclosure of lambda(G); exact for regular graphs.
Interval lambda_of(const Graph &g, double tol)
{
  if (auto d = regular_degree(g))
    return Interval::point(*d);
  return perron_enclosure(g, tol).lambda;
}

/// Certified lambda >= gamma n.
bool certified_at_least(const Graph &g, const Rational &bound, double tol_floor, Interval *lambda)
{
  if (auto d = regular_degree(g)) {
    *lambda = Interval::point(*d);
    return Rational(*d) >= bound;
  }
  const Interval b = Interval::exact(bound);
  for (double tol : {1e-9, tol_floor}) {
    *lambda = perron_enclosure(g, tol).lambda;
    if (lambda->lo >= b.hi)
      return true;
    if (lambda->hi < b.lo)
      return false;
  }
  return false;
}

Interval ratio_of(std::int64_t t, int n, const Interval &lambda)
{
  const Interval excess = lambda - Interval::exact(Rational(n, 2));
  const Interval den = Interval::exact(Rational(static_cast<std::int64_t>(n) * n)) * excess;
  return Interval::exact(Rational(t)) / den;
}

std::int64_t codegree(const Graph &g, int u, int v)
{
  std::int64_t c = 0;
  auto a = g.row(u), b = g.row(v);
  for (int i = 0; i < g.words(); ++i)
    c += std::popcount(a[i] & b[i]);
  return c;
}

} // namespace

SearchReport run_local_search(const SearchJob &job)
{
  SearchReport report;
  report.target = job.target;
  report.mode = SearchMode::LocalSearch;
  report.seed = job.seed;
  const int n = job.n_min;
  if (n < 3)
    throw SearchError("local search needs n >= 3");
  const Rational bound = job.gamma * n;
  LocalSearchResult res;

  // Comparison grid L_{n,s,alpha}.
  std::optional<Graph> grid_best;
  const int s = job.grid_s, steps = std::max(job.grid_steps, 1);
  for (int i = 0; i < steps; ++i) {
    ConstructionSpec spec;
    spec.family = Family::Lnsa;
    spec.n = n;
    spec.s = s;
    spec.alpha = BigRational(i, s * steps);
    spec.alpha.canonicalize();
    GridPoint gp;
    gp.spec = spec.to_string();
    try {
      Construction c = build(spec);
      gp.t = triangle_count(c.graph);
      gp.feasible = certified_at_least(c.graph, bound, job.verify.tol_floor, &gp.lambda);
      if (gp.feasible && (!res.grid_best_t || gp.t < *res.grid_best_t)) {
        res.grid_best_t = gp.t;
        res.grid_best_spec = gp.spec;
        grid_best = c.graph;
      }
    } catch (const std::invalid_argument &e) {
      report.log.push_back(gp.spec + " skipped: " + e.what());
      continue;
    }
    res.grid.push_back(gp);
  }

  Graph complete;
  {
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        b.add_edge(u, v);
    complete = b.build();
  }
  const Graph start = grid_best ? *grid_best : complete;
  Interval lam;
  if (!certified_at_least(start, bound, job.verify.tol_floor, &lam)) {
    report.log.push_back("no feasible start graph");
    report.local = res;
    return report;
  }

  const int restarts = std::max(job.restarts, 1);
  const std::int64_t moves = std::max<std::int64_t>(job.budget, 1) / restarts + 1;
  std::optional<Graph> best;
  std::int64_t best_t = 0;
  Interval best_lambda;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(job.seed ^ static_cast<std::uint64_t>(r)));
    Graph g = start;
    if (r > 0) {
      GraphBuilder b(g);
      const std::int64_t extra = static_cast<std::int64_t>(r) * n / 4;
      for (std::int64_t e = 0, tries = 0; e < extra && tries < 100 * extra; ++tries) {
        int u = static_cast<int>(bounded(rng, n)), v = static_cast<int>(bounded(rng, n));
        if (u != v && !b.adjacent(u, v)) {
          b.add_edge(u, v);
          ++e;
        }
      }
      g = b.build();
    }
    std::int64_t t = triangle_count(g);
    certified_at_least(g, bound, job.verify.tol_floor, &lam);
    int plateau = 0;
    for (std::int64_t step = 0; step < moves && plateau <= job.plateau; ++step) {
      ++report.graphs_visited;
      // Remove the edge with the largest codegree among a few candidates.
      auto edges = g.edges();
      if (edges.empty())
        break;
      Edge pick = edges[bounded(rng, edges.size())];
      std::int64_t gain = codegree(g, pick.first, pick.second);
      for (int c = 0; c < 7; ++c) {
        Edge e = edges[bounded(rng, edges.size())];
        std::int64_t cg = codegree(g, e.first, e.second);
        if (cg > gain) {
          gain = cg;
          pick = e;
        }
      }
      GraphBuilder b(g);
      b.remove_edge(pick.first, pick.second);
      Graph next = b.build();
      Interval next_lam;
      ++report.graphs_examined;
      if (!certified_at_least(next, bound, job.verify.tol_floor, &next_lam)) {
        ++plateau;
        continue;
      }
      plateau = gain > 0 ? 0 : plateau + 1;
      g = std::move(next);
      t -= gain;
      lam = next_lam;
    }
    if (!best || t < best_t) {
      best = g;
      best_t = t;
      best_lambda = lam;
    }
    report.log.push_back("restart " + std::to_string(r) + ": t=" + std::to_string(t));
  }
  res.best_graph6 = emit_graph6(*best);
  res.best_t = best_t;
  res.best_lambda = best_lambda;
  if (best_lambda.lo > static_cast<long double>(n) / 2)
    res.best_ratio = ratio_of(best_t, n, best_lambda);
  if (res.grid_best_t)
    report.log.push_back("gap to grid optimum: " + std::to_string(best_t - *res.grid_best_t));
  report.local = res;
  return report;
}

SearchReport ratio_scan(const std::vector<ConstructionSpec> &families, const std::vector<int> &n_grid,
                        const VerifyOptions &opts)
{
  SearchReport report;
  report.mode = SearchMode::Exhaustive;
  report.target = TheoremId::TRI_EFFI;
  for (const auto &family : families) {
    for (int n : n_grid) {
      ConstructionSpec spec = family;
      spec.n = n;
      Construction c;
      try {
        c = build(spec);
      } catch (const std::invalid_argument &e) {
        report.log.push_back(spec.to_string() + " skipped: " + e.what());
        continue;
      }
      ++report.graphs_visited;
      RatioPoint pt;
      pt.family = spec.to_string();
      pt.n = n;
      pt.t = triangle_count(c.graph);
      pt.lambda = lambda_of(c.graph, opts.tol_floor);
      const long double half = static_cast<long double>(n) / 2;
      if (pt.lambda.hi <= half) {
        report.log.push_back(pt.family + " skipped: lambda <= n/2");
        continue;
      }
      ++report.graphs_examined;
      if (auto d = regular_degree(c.graph)) {
        pt.exact = Rational(2 * pt.t, static_cast<std::int64_t>(n) * n * (2 * *d - n));
        pt.ratio = Interval::exact(*pt.exact);
      } else if (pt.lambda.lo <= half) {
        pt.usable = false;
        pt.note = "enclosure meets n/2";
      } else {
        pt.ratio = ratio_of(pt.t, n, pt.lambda);
        if (pt.lambda.width() > 1e-6L * (pt.lambda.lo - half)) {
          pt.usable = false;
          pt.note = "enclosure too wide relative to lambda - n/2";
        }
      }
      pt.ratio_mid = pt.ratio.mid();
      if (pt.usable && (!report.ratio_infimum || pt.ratio_mid < report.ratio_infimum->ratio_mid))
        report.ratio_infimum = pt;
      report.ratios.push_back(std::move(pt));
    }
  }
  return report;
}

SearchReport run_search(const SearchJob &job)
{
  switch (job.mode) {
  case SearchMode::Exhaustive: return run_exhaustive(job);
  case SearchMode::Random: return run_random(job);
  case SearchMode::LocalSearch: return run_local_search(job);
  }
  throw SearchError("unknown search mode");
}

} // namespace specls
