#include "specls/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace specls {

namespace {

Word tail_mask(int n)
{
  int r = n & 63;
  return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
}

} // namespace

VertexSet::VertexSet(int n, std::span<const int> members) : VertexSet(n)
{
  for (int v : members) {
    if (v < 0 || v >= n)
      throw GraphError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(n));
    set(v);
  }
}

VertexSet VertexSet::full(int n)
{
  VertexSet s(n);
  std::fill(s.bits_.begin(), s.bits_.end(), ~Word{0});
  if (!s.bits_.empty())
    s.bits_.back() &= tail_mask(n);
  return s;
}

VertexSet VertexSet::from_words(int n, std::span<const Word> words)
{
  VertexSet s(n);
  std::copy_n(words.begin(), s.bits_.size(), s.bits_.begin());
  if (!s.bits_.empty())
    s.bits_.back() &= tail_mask(n);
  return s;
}

int VertexSet::count() const
{
  int c = 0;
  for (Word w : bits_)
    c += std::popcount(w);
  return c;
}

std::vector<int> VertexSet::members() const
{
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    for (Word w = bits_[i]; w; w &= w - 1)
      out.push_back(static_cast<int>(i * 64) + std::countr_zero(w));
  return out;
}

VertexSet VertexSet::complement() const
{
  VertexSet s(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    s.bits_[i] = ~bits_[i];
  if (!s.bits_.empty())
    s.bits_.back() &= tail_mask(n_);
  return s;
}

VertexSet &VertexSet::operator&=(const VertexSet &o)
{
  for (std::size_t i = 0; i < bits_.size(); ++i)
    bits_[i] &= o.bits_[i];
  return *this;
}

VertexSet &VertexSet::operator|=(const VertexSet &o)
{
  for (std::size_t i = 0; i < bits_.size(); ++i)
    bits_[i] |= o.bits_[i];
  return *this;
}

std::vector<Edge> Graph::edges() const
{
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u) {
    auto r = row(u);
    for (int i = (u + 1) >> 6; i < words_; ++i) {
      Word w = r[i];
      if (i == ((u + 1) >> 6))
        w &= ~Word{0} << ((u + 1) & 63);
      for (; w; w &= w - 1)
        out.emplace_back(u, i * 64 + std::countr_zero(w));
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(int n) : n_(n), words_(words_for(n))
{
  if (n < 0 || n > kMaxVertices)
    throw GraphError("vertex count " + std::to_string(n) + " outside [0, 4096]");
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

GraphBuilder::GraphBuilder(const Graph &g) : n_(g.n_), words_(g.words_), bits_(g.bits_) {}

void GraphBuilder::check_pair(int u, int v) const
{
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has an endpoint outside 0.." +
                     std::to_string(n_ - 1));
  if (u == v)
    throw GraphError("self-loop at vertex " + std::to_string(u));
}

void GraphBuilder::add_edge(int u, int v)
{
  check_pair(u, v);
  bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= Word{1} << (v & 63);
  bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= Word{1} << (u & 63);
}

void GraphBuilder::remove_edge(int u, int v)
{
  check_pair(u, v);
  bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(Word{1} << (v & 63));
  bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(Word{1} << (u & 63));
}

void GraphBuilder::toggle_edge(int u, int v)
{
  if (adjacent(u, v))
    remove_edge(u, v);
  else
    add_edge(u, v);
}

bool GraphBuilder::adjacent(int u, int v) const
{
  check_pair(u, v);
  return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
}

Graph GraphBuilder::build() const
{
  Graph g;
  g.n_ = n_;
  g.words_ = words_;
  g.bits_ = bits_;
  std::int64_t total = 0;
  for (int u = 0; u < n_; ++u) {
    auto r = g.row(u);
    if (g.adjacent(u, u))
      throw GraphError("self-loop at vertex " + std::to_string(u));
    if (words_ > 0 && (r[words_ - 1] & ~tail_mask(n_)))
      throw GraphError("adjacency row has bits beyond n");
    for (int i = 0; i < words_; ++i)
      total += std::popcount(r[i]);
  }
  for (const auto &[u, v] : g.edges())
    if (!g.adjacent(v, u))
      throw GraphError("asymmetric adjacency");
  if (total % 2 != 0)
    throw GraphError("asymmetric adjacency");
  g.m_ = total / 2;
  return g;
}

Graph build_graph(int n, std::span<const Edge> edges)
{
  GraphBuilder b(n);
  for (const auto &[u, v] : edges)
    b.add_edge(u, v);
  return b.build();
}

int degree(const Graph &g, int v)
{
  int d = 0;
  for (Word w : g.row(v))
    d += std::popcount(w);
  return d;
}

VertexSet neighbors(const Graph &g, int v) { return VertexSet::from_words(g.order(), g.row(v)); }

std::vector<int> degree_sequence(const Graph &g)
{
  std::vector<int> d(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v)
    d[v] = degree(g, v);
  return d;
}

int max_degree(const Graph &g)
{
  int best = 0;
  for (int v = 0; v < g.order(); ++v)
    best = std::max(best, degree(g, v));
  return best;
}

int min_degree(const Graph &g)
{
  if (g.order() == 0)
    return 0;
  int best = g.order();
  for (int v = 0; v < g.order(); ++v)
    best = std::min(best, degree(g, v));
  return best;
}

Graph induced(const Graph &g, const VertexSet &s)
{
  std::vector<int> keep = s.members();
  GraphBuilder b(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (g.adjacent(keep[i], keep[j]))
        b.add_edge(static_cast<int>(i), static_cast<int>(j));
  return b.build();
}

Graph delete_vertex(const Graph &g, int v)
{
  if (v < 0 || v >= g.order())
    throw GraphError("vertex " + std::to_string(v) + " out of range");
  VertexSet s = VertexSet::full(g.order());
  s.reset(v);
  return induced(g, s);
}

Graph complement(const Graph &g)
{
  const int n = g.order();
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v))
        b.add_edge(u, v);
  return b.build();
}

std::vector<std::vector<int>> components(const Graph &g)
{
  const int n = g.order();
  std::vector<std::vector<int>> out;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      auto r = g.row(comp[head]);
      for (int i = 0; i < g.words(); ++i)
        for (Word w = r[i]; w; w &= w - 1) {
          int u = i * 64 + std::countr_zero(w);
          if (!seen[u]) {
            seen[u] = 1;
            comp.push_back(u);
          }
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph &g) { return g.order() <= 1 || components(g).size() == 1; }

std::optional<PartitionWitness> is_bipartite(const Graph &g)
{
  const int n = g.order();
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0)
      continue;
    colour[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      auto r = g.row(v);
      for (int i = 0; i < g.words(); ++i)
        for (Word w = r[i]; w; w &= w - 1) {
          int u = i * 64 + std::countr_zero(w);
          if (colour[u] < 0) {
            colour[u] = 1 - colour[v];
            queue.push_back(u);
          } else if (colour[u] == colour[v]) {
            return std::nullopt;
          }
        }
    }
  }
  PartitionWitness w{VertexSet(n), VertexSet(n), 0, 0, g.size()};
  for (int v = 0; v < n; ++v)
    (colour[v] == 0 ? w.S : w.T).set(v);
  return w;
}

int isolated_vertex_count(const Graph &g)
{
  int c = 0;
  for (int v = 0; v < g.order(); ++v)
    c += degree(g, v) == 0;
  return c;
}

bool is_complete_bipartite_up_to_isolated(const Graph &g)
{
  if (g.size() == 0)
    return false;
  auto parts = is_bipartite(g);
  if (!parts)
    return false;
  std::int64_t a = 0, b = 0;
  for (int v : parts->S.members())
    a += degree(g, v) > 0;
  for (int v : parts->T.members())
    b += degree(g, v) > 0;
  return a * b == g.size();
}

namespace {

bool extend_clique(const Graph &g, std::vector<Word> &cand, int need)
{
  if (need == 0)
    return true;
  int have = 0;
  for (Word w : cand)
    have += std::popcount(w);
  if (have < need)
    return false;
  const int W = g.words();
  std::vector<Word> next(static_cast<std::size_t>(W));
  for (int i = 0; i < W; ++i) {
    while (cand[i]) {
      int v = i * 64 + std::countr_zero(cand[i]);
      cand[i] &= cand[i] - 1;
      auto r = g.row(v);
      for (int j = 0; j < W; ++j)
        next[j] = cand[j] & r[j];
      if (extend_clique(g, next, need - 1))
        return true;
    }
  }
  return false;
}

} // namespace

bool contains_clique(const Graph &g, int k)
{
  if (k <= 0)
    return true;
  if (k == 1)
    return g.order() >= 1;
  auto all = VertexSet::full(g.order());
  std::vector<Word> cand(all.words().begin(), all.words().end());
  return extend_clique(g, cand, k);
}

} // namespace specls
