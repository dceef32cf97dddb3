#pragma once

#include "specls/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specls {

/// Isomorphism invariants used when no explicit map can be certified.
struct Fingerprint
{
  std::vector<int> degrees;              ///< sorted
  std::vector<std::int64_t> triangles;   ///< per-vertex counts, sorted
  std::vector<std::string> charpoly;     ///< empty above the size cap
  bool operator==(const Fingerprint &) const = default;
};

inline constexpr int kFingerprintCharpolyLimit = 60;

Fingerprint fingerprint(const Graph &g);

struct IsomorphismResult
{
  bool isomorphic = false;
  /// True when the answer is proven: an explicit verified map, a refuting
  /// invariant, or a completed search. False means fingerprints agree but
  /// no map was found within budget.
  bool certified = false;
  std::vector<int> mapping; ///< g vertex -> h vertex when isomorphic and certified
  std::string method;       ///< "invariant", "search", "fingerprint"
};

/// Colour refinement followed by individualisation search. Graphs up to
/// exhaustive_limit vertices are searched to completion; larger ones get a
/// node budget after which the fingerprint decides with certified = false.
IsomorphismResult test_isomorphism(const Graph &g, const Graph &h, int exhaustive_limit = 12,
                                   std::int64_t node_budget = 20000);

/// Whether some automorphism of g maps u to v; nullopt when the search
/// budget runs out first (graphs above exhaustive_limit only).
std::optional<bool> similar_vertices(const Graph &g, int u, int v, int exhaustive_limit = 12,
                                     std::int64_t node_budget = 20000);

} // namespace specls
