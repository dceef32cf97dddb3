#pragma once

#include "specls/constructions.hpp"
#include "specls/graph.hpp"
#include "specls/theorems.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specls {

class SearchError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Labeled enumeration over edge-slot masks.
//
// Slot i is the i-th pair of the graph6 upper triangle in column-major
// order: (0,1), (0,2), (1,2), (0,3), ... Masks need C(n,2) <= 63.

inline constexpr int kMaxMaskOrder = 11;
inline constexpr std::int64_t kDefaultCeiling = 200'000'000;

int slot_count(int n);
Edge slot_pair(int slot);
Graph graph_from_mask(int n, std::uint64_t edges);

/// Sum of C(C(n,2), k) over k in [k_min, k_max], saturating at INT64_MAX.
std::int64_t subset_count(int n, int k_min, int k_max);

/// Visits every labeled graph with m >= min_edges by walking complement
/// masks of size 0, 1, ... in colex order. The visitor gets the edge mask.
std::int64_t enumerate_dense(int n, std::int64_t min_edges, const std::function<void(std::uint64_t)> &visitor,
                             std::int64_t ceiling = kDefaultCeiling);

/// Visits every labeled graph with m <= max_edges, edge masks in colex order.
std::int64_t enumerate_sparse(int n, std::int64_t max_edges, const std::function<void(std::uint64_t)> &visitor,
                              std::int64_t ceiling = kDefaultCeiling);

// ---------------------------------------------------------------------------

enum class SearchMode
{
  Exhaustive,
  Random,
  LocalSearch,
};

std::string to_string(SearchMode m);
SearchMode search_mode_from_string(const std::string &s);

/// Which edge counts an exhaustive run covers.
enum class EdgeRange
{
  Auto,   ///< LS: m >= floor(n^2/4) + q, MANTEL/ER_RAD: m > floor(n^2/4), else all
  All,
  Sparse, ///< m <= floor(n^2/4)
};

std::string to_string(EdgeRange e);
EdgeRange edge_range_from_string(const std::string &s);

struct SearchJob
{
  TheoremId target = TheoremId::LS;
  SearchMode mode = SearchMode::Exhaustive;
  int n_min = 4;
  int n_max = 4;
  /// Grid over q (or s for SPEC_BC, r for WILF/NIKIFOROV_M); param_max <= 0
  /// means every feasible value (LS: q <= ceil(n/2) - 1).
  int param_min = 1;
  int param_max = 1;
  TheoremParams params;
  EdgeRange edges = EdgeRange::Auto;
  bool skip_isolated = false;
  std::int64_t ceiling = kDefaultCeiling;

  std::int64_t budget = 0;        ///< random samples or local-search moves
  std::int64_t perturbations = 0; ///< random mode: edge-swap neighbours of Y_{n,2,q}
  std::uint64_t seed = 0x5eed;
  int workers = 1;
  VerifyOptions verify;

  Rational gamma{1, 2}; ///< local search: certified lambda >= gamma n
  int restarts = 4;
  int plateau = 50;
  int grid_s = 2;       ///< local search comparison family L_{n,s,alpha}
  int grid_steps = 20;  ///< alpha = i / (s * grid_steps)

  std::uint64_t max_counterexamples = 100;
  std::uint64_t max_equalities = 100000;
};

struct Counterexample
{
  std::string graph6;
  TheoremVerdict verdict;
};

/// Smallest primary margin among graphs whose hypothesis holds.
struct ExtremalRecord
{
  std::string graph6;
  int n = 0;
  std::map<std::string, std::string> params;
  Margin margin;
};

/// A graph attaining margin zero with the hypothesis certified.
struct EqualityRecord
{
  std::string graph6;
  int n = 0;
  std::int64_t m = 0;
  std::int64_t t = 0;
  std::map<std::string, std::string> params;
  std::vector<std::string> notes;
};

struct RatioPoint
{
  std::string family; ///< construction spec text
  int n = 0;
  std::int64_t t = 0;
  Interval lambda;
  Interval ratio;
  long double ratio_mid = 0;
  /// Exact when lambda is known in closed form (regular graphs).
  std::optional<Rational> exact;
  bool usable = true;
  std::string note;
};

struct GridPoint
{
  std::string spec;
  std::int64_t t = 0;
  bool feasible = false;
  Interval lambda;
};

struct LocalSearchResult
{
  std::string best_graph6;
  std::int64_t best_t = -1;
  Interval best_lambda;
  Interval best_ratio;
  std::vector<GridPoint> grid;
  std::optional<std::int64_t> grid_best_t;
  std::string grid_best_spec;
};

struct SearchReport
{
  TheoremId target = TheoremId::LS;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::int64_t graphs_visited = 0;  ///< enumerated or sampled
  std::int64_t graphs_examined = 0; ///< evaluated after filters
  std::int64_t expected_count = 0;  ///< closed-form enumeration size
  std::int64_t hypothesis_met = 0;
  std::int64_t indeterminate = 0;
  std::int64_t counterexample_count = 0;
  std::vector<Counterexample> counterexamples; ///< sorted by graph6, capped
  std::optional<ExtremalRecord> extremal;
  std::int64_t equality_count = 0;
  std::vector<EqualityRecord> equalities; ///< sorted by (n, m, graph6), capped
  std::vector<RatioPoint> ratios;
  std::optional<RatioPoint> ratio_infimum;
  std::optional<LocalSearchResult> local;
  std::vector<std::string> log;
};

SearchReport run_exhaustive(const SearchJob &job);
SearchReport run_random(const SearchJob &job);
SearchReport run_local_search(const SearchJob &job);
SearchReport run_search(const SearchJob &job);

/// C(G) = t / (n^2 (lambda - n/2)) for each family at each n. Spec fields
/// other than n are kept; infeasible or bipartite-tight points are logged.
SearchReport ratio_scan(const std::vector<ConstructionSpec> &families, const std::vector<int> &n_grid,
                        const VerifyOptions &opts = {});

/// Reproducible per-index seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform G(n, m) by Floyd's sampling over edge slots.
Graph sample_gnm(int n, std::int64_t m, std::uint64_t seed);

/// swaps times: delete a uniform edge, add a uniform non-edge.
Graph perturb_edges(const Graph &g, int swaps, std::uint64_t seed);

} // namespace specls
