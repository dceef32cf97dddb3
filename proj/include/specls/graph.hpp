#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specls {

inline constexpr int kMaxVertices = 4096;

using Word = std::uint64_t;
using Edge = std::pair<int, int>;

class GraphError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline int words_for(int n) { return (n + 63) / 64; }

/// Fixed-width bit vector over vertex labels 0..n-1.
class VertexSet
{
public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), bits_(static_cast<std::size_t>(words_for(n)), 0) {}
  VertexSet(int n, std::span<const int> members);

  static VertexSet full(int n);
  static VertexSet from_words(int n, std::span<const Word> words);

  int universe() const { return n_; }
  bool test(int v) const { return (bits_[v >> 6] >> (v & 63)) & 1U; }
  void set(int v) { bits_[v >> 6] |= Word{1} << (v & 63); }
  void reset(int v) { bits_[v >> 6] &= ~(Word{1} << (v & 63)); }
  int count() const;
  bool empty() const { return count() == 0; }
  std::vector<int> members() const;

  std::span<const Word> words() const { return bits_; }
  std::span<Word> words() { return bits_; }

  VertexSet complement() const;
  VertexSet &operator&=(const VertexSet &o);
  VertexSet &operator|=(const VertexSet &o);
  friend VertexSet operator&(VertexSet a, const VertexSet &b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet &b) { return a |= b; }
  bool operator==(const VertexSet &) const = default;

private:
  int n_ = 0;
  std::vector<Word> bits_;
};

/// Immutable simple undirected graph on 0..n-1 with bit-row adjacency.
///
/// Rows are stored contiguously, words_for(n) machine words each. Every
/// construction path goes through a validation that enforces symmetry and
/// loop-freeness, so downstream popcount loops may rely on both.
class Graph
{
public:
  Graph() = default;

  int order() const { return n_; }
  std::int64_t size() const { return m_; }
  int words() const { return words_; }

  std::span<const Word> row(int v) const
  {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }
  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1U; }

  std::vector<Edge> edges() const;

  bool operator==(const Graph &o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
  friend class GraphBuilder;
  int n_ = 0;
  int words_ = 0;
  std::int64_t m_ = 0;
  std::vector<Word> bits_;
};

/// Mutable adjacency used to assemble a Graph; build() validates and freezes.
class GraphBuilder
{
public:
  explicit GraphBuilder(int n);
  explicit GraphBuilder(const Graph &g);

  int order() const { return n_; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void toggle_edge(int u, int v);
  bool adjacent(int u, int v) const;

  Graph build() const;

private:
  void check_pair(int u, int v) const;
  int n_;
  int words_;
  std::vector<Word> bits_;
};

/// Bipartition (S, T) with its internal and crossing edge counts.
struct PartitionWitness
{
  VertexSet S;
  VertexSet T;
  std::int64_t eS = 0;
  std::int64_t eT = 0;
  std::int64_t eST = 0;

  std::int64_t internal() const { return eS + eT; }
};

Graph build_graph(int n, std::span<const Edge> edges);
inline Graph build_graph(int n, std::initializer_list<Edge> edges)
{
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

int degree(const Graph &g, int v);
VertexSet neighbors(const Graph &g, int v);
inline std::int64_t edge_count(const Graph &g) { return g.size(); }
std::vector<int> degree_sequence(const Graph &g);
int max_degree(const Graph &g);
int min_degree(const Graph &g);

Graph delete_vertex(const Graph &g, int v);
Graph induced(const Graph &g, const VertexSet &s);
Graph complement(const Graph &g);

std::vector<std::vector<int>> components(const Graph &g);
bool is_connected(const Graph &g);
std::optional<PartitionWitness> is_bipartite(const Graph &g);

/// Complete bipartite after discarding isolated vertices (the empty graph
/// does not qualify).
bool is_complete_bipartite_up_to_isolated(const Graph &g);
int isolated_vertex_count(const Graph &g);

/// Whether g contains K_k, by bit-parallel candidate-set branching.
bool contains_clique(const Graph &g, int k);

} // namespace specls
