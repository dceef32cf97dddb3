#pragma once

#include "specls/exact.hpp"
#include "specls/graph.hpp"
#include "specls/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specls {

/// Builders for the extremal families. Vertex layout is canonical: parts are
/// consecutive label ranges, larger parts first, and embedded subgraphs take
/// the lowest labels of their part.

enum class Family
{
  Turan,
  T2q,
  Y2q,
  KabPlus,
  EmbedH,
  BC_G1,
  BC_G2,
  Lnsa,
  BookJoin,
};

std::string to_string(Family f);
Family family_from_string(const std::string &s);

enum class Side
{
  Larger,
  Smaller,
};

/// A small graph to place inside one part of T_{n,2}.
struct HDescriptor
{
  enum class Kind
  {
    Star,              ///< K_{1,a}
    Clique,            ///< K_a
    CompleteBipartite, ///< K_{a,b}
    Cycle,             ///< C_a
    Path,              ///< path with a edges
    Matching,          ///< a disjoint edges
    Graph6,
  };
  Kind kind = Kind::Star;
  int a = 0;
  int b = 0;
  std::string g6;

  Graph graph() const;
  std::string to_string() const;
  /// "star:3", "clique:3", "kab:2x2", "cycle:4", "path:3", "matching:3", "g6:<text>"
  static HDescriptor parse(const std::string &text);
  static HDescriptor star(int q) { return {Kind::Star, q, 0, {}}; }
  static HDescriptor clique(int k) { return {Kind::Clique, k, 0, {}}; }
  static HDescriptor kab(int a, int b) { return {Kind::CompleteBipartite, a, b, {}}; }
  static HDescriptor cycle(int k) { return {Kind::Cycle, k, 0, {}}; }
  static HDescriptor path(int q) { return {Kind::Path, q, 0, {}}; }
  static HDescriptor matching(int q) { return {Kind::Matching, q, 0, {}}; }
};

struct ConstructionSpec
{
  Family family = Family::Turan;
  int n = 0;
  int r = 0;
  int q = 0;
  int a = 0;
  int b = 0;
  int s = 0;
  int t = 0;
  int k = 0;
  BigRational alpha;
  std::optional<HDescriptor> h;
  Side side = Side::Larger;

  /// Canonical text such as "Y:n=10,q=2" or "Embed:n=30,h=cycle:4,side=larger".
  std::string to_string() const;
  static ConstructionSpec parse(const std::string &text);
};

struct PredictedStats
{
  std::int64_t m_expected = 0;
  std::int64_t t_expected = 0;
  std::optional<FamilyTag> lambda_poly;
};

struct Construction
{
  ConstructionSpec spec;
  Graph graph;
  PredictedStats predicted;
};

/// Validates the construction parameters, builds the graph and its closed-form statistics.
/// Infeasible parameters raise std::invalid_argument naming the predicate.
Construction build(const ConstructionSpec &spec);

std::vector<int> turan_parts(int n, int r);
std::int64_t turan_edges(int n, int r);
Graph complete_multipartite(const std::vector<int> &parts);

Graph turan(int n, int r);
Graph t_n2q(int n, int q);
Graph y_n2q(int n, int q);
Graph kab_plus(int a, int b);
Graph embed_into_turan2(int n, const Graph &h, Side side);
Graph book_join(int k);

/// alpha = s - t - a^2 - [n odd] a.
int bc_alpha(int n, int s, int t, int a);
/// Sizes of A and B for the given shift a.
std::pair<int, int> bc_parts(int n, int a);
Graph balogh_clemen_g1(int n, int s, int t, int a);
Graph balogh_clemen_g2(int n, int s, int t, int a);

/// Part sizes of L_{n,s,alpha}: s parts of n(1+alpha)/(s+1) and one of
/// n(1-s alpha)/(s+1), floored, with the remainder handed out one vertex at
/// a time by largest fractional part (ties to the lower index).
std::vector<int> l_nsalpha_parts(int n, int s, const BigRational &alpha);
Graph l_nsalpha(int n, int s, const BigRational &alpha);

inline std::int64_t floor_quarter_square(std::int64_t n) { return n * n / 4; }

} // namespace specls
