#pragma once

#include "specls/graph.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace specls {

using Triangle = std::array<int, 3>;

/// Raised when a triangle list or a search tree outgrows its budget.
class BudgetExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kTriangleBudget = 10'000'000;

/// Each triangle {u < v < w} is counted once, at the edge uv, by masking the
/// common neighbourhood to labels above v.
std::int64_t triangle_count(const Graph &g);
std::vector<Triangle> list_triangles(const Graph &g, std::size_t budget = kTriangleBudget);
std::vector<std::int64_t> triangles_per_vertex(const Graph &g);
std::map<Edge, std::int64_t> triangles_per_edge(const Graph &g);

struct TriangleStats
{
  std::int64_t t = 0;
  std::optional<std::map<Edge, std::int64_t>> per_edge;
  std::optional<int> tau3;
  std::optional<VertexSet> cover_witness;
};

TriangleStats triangle_stats(const Graph &g, bool with_per_edge, bool with_tau3);

struct TriangleCover
{
  int size = 0;
  VertexSet witness;
  std::int64_t nodes = 0; ///< branch-and-bound nodes expanded
};

/// Minimum vertex set meeting every triangle.
///
/// Branches on the three vertices of the first uncovered triangle, excluding
/// each tried vertex from later siblings. The bound is the chosen count plus
/// a greedy packing of pairwise vertex-disjoint uncovered triangles.
TriangleCover tau3(const Graph &g, std::size_t budget = kTriangleBudget);

struct BipartiteDistance
{
  std::int64_t epsilon = 0;
  PartitionWitness witness;
  bool exact = false; ///< false: epsilon is only an upper bound
};

inline constexpr int kExactMaxCutLimit = 30;

/// epsilon = m - maxcut. Exact Gray-code enumeration with vertex n-1 pinned
/// to T when n <= exact_limit (and n <= 30); otherwise multi-start local
/// search. Among optimal cuts the smallest S-mask wins.
BipartiteDistance bipartite_distance(const Graph &g, int exact_limit = kExactMaxCutLimit, int workers = 1,
                                     std::uint64_t seed = 0x5eed);

/// First bipartition (in Gray-code order, vertex n-1 in T) with
/// e(S,T) >= min_cut and (n - 2|S|)^2 <= max_imbalance_sq. Requires n <= 30.
std::optional<PartitionWitness> find_cut_partition(const Graph &g, std::int64_t min_cut,
                                                   std::int64_t max_imbalance_sq);

std::int64_t degree_square_sum(const Graph &g);

/// Edge counts of (S, V \ S).
PartitionWitness partition_stats(const Graph &g, const VertexSet &s);

/// Vertices meeting every triangle, built by taking one endpoint of each
/// edge inside S or inside T; its size never exceeds e(S) + e(T).
VertexSet cover_from_partition(const Graph &g, const PartitionWitness &p);

bool is_triangle_cover(const Graph &g, const VertexSet &cover);

/// Triangles of the complete multipartite graph with the given part sizes.
std::int64_t multipartite_triangles(const std::vector<int> &parts);

} // namespace specls
