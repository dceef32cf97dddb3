#pragma once

#include "specls/exact.hpp"
#include "specls/graph.hpp"
#include "specls/spectral.hpp"
#include "specls/triangles.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace specls {

enum class TheoremId
{
  MANTEL,
  ER_RAD,
  LS,
  NING_ZHAI,
  SPEC_LS_Y,
  SPEC_LS_T,
  SPEC_BC,
  BN_INEQ,
  MOON_MOSER,
  FAR_BIP_SUPERSAT,
  TRI_EFFI,
  DEG_SQ,
  WILF,
  NIKIFOROV_M,
  NOSAL_NZ,
  ROTATION,
  EMBED_ORDER,
  X_MASS,
  BOOK_CONJ,
  Y_UPPER,
  // Structural properties forced on a counterexample to SPEC_LS_Y.
  APPROX_PARTITION,
  CLASS_EDGES,
  DEGREE_WINDOW,
  ENTRY_LOWER,
  BALANCE_GAP,
  BALANCED,
  BELOW_Y,
  STAR_OR_C4,
};

std::string to_string(TheoremId id);
TheoremId theorem_id_from_string(const std::string &s);
const std::vector<TheoremId> &all_theorem_ids();

enum class Truth
{
  False,
  True,
  Indeterminate,
};

std::string to_string(Truth t);
Truth truth_from_string(const std::string &s);
inline Truth truth(bool b) { return b ? Truth::True : Truth::False; }
/// Three-valued conjunction.
Truth operator&&(Truth a, Truth b);

/// A named slack quantity: exact for combinatorial margins, an outward
/// interval for spectral ones.
struct Margin
{
  Interval value;
  std::optional<Rational> exact;

  static Margin of(const Rational &r) { return {Interval::exact(r), r}; }
  static Margin of(std::int64_t v) { return of(Rational(v)); }
  static Margin of(const Interval &iv) { return {iv, std::nullopt}; }
};

struct Witness
{
  std::optional<PartitionWitness> partition;
  std::optional<VertexSet> cover;
  std::vector<int> mapping;
};

struct TheoremVerdict
{
  TheoremId id = TheoremId::MANTEL;
  int n = 0;
  std::map<std::string, std::string> params;
  Truth hypothesis = Truth::False;
  Truth conclusion = Truth::False;
  std::map<std::string, Margin> margins;
  std::string primary; ///< key of the headline margin
  Witness witness;
  std::vector<std::string> notes;

  bool counterexample() const { return hypothesis == Truth::True && conclusion == Truth::False; }
  bool indeterminate() const
  {
    return hypothesis == Truth::Indeterminate ||
           (hypothesis == Truth::True && conclusion == Truth::Indeterminate);
  }
  const Margin *primary_margin() const
  {
    auto it = margins.find(primary);
    return it == margins.end() ? nullptr : &it->second;
  }
};

struct VerifyOptions
{
  double tol_floor = 1e-12;
  int exact_limit = 24;                 ///< exact characteristic-polynomial fallback
  int maxcut_limit = kExactMaxCutLimit; ///< exact bipartite distance
  int iso_limit = 12;                   ///< exhaustive isomorphism search
  int workers = 1;
  std::uint64_t seed = 0x5eed;
};

/// Lazily computed invariants of one graph, shared by several verifiers.
class GraphFacts
{
public:
  explicit GraphFacts(Graph g, VerifyOptions opts = {});

  const Graph &graph() const { return g_; }
  const VerifyOptions &options() const { return opts_; }
  int n() const { return g_.order(); }
  std::int64_t m() const { return g_.size(); }

  std::int64_t triangles();
  std::int64_t degree_squares();
  const SpectralCertificate &spectrum();
  LambdaDecision decide(const LambdaTarget &target);
  const BipartiteDistance &maxcut();
  /// Throws BudgetExceeded.
  const TriangleCover &cover();

private:
  Graph g_;
  VerifyOptions opts_;
  std::optional<std::int64_t> t_;
  std::optional<std::int64_t> d2_;
  std::optional<SpectralCertificate> spec_;
  std::optional<BipartiteDistance> cut_;
  std::optional<TriangleCover> cover_;
};

// Verdict cores on precomputed counts, for enumeration fast paths.
TheoremVerdict ls_verdict(int n, std::int64_t m, std::int64_t t, int q);
TheoremVerdict mantel_verdict(int n, std::int64_t m, std::int64_t t);
TheoremVerdict moon_moser_verdict(int n, std::int64_t m, std::int64_t t);
TheoremVerdict deg_sq_verdict(int n, std::int64_t m, std::int64_t d2);

TheoremVerdict check_mantel(GraphFacts &f);
TheoremVerdict check_er_rad(GraphFacts &f);
TheoremVerdict check_ls(GraphFacts &f, int q);
TheoremVerdict check_ning_zhai(GraphFacts &f);
TheoremVerdict check_spec_ls_y(GraphFacts &f, int q);
TheoremVerdict check_spec_ls_t(GraphFacts &f, int q);
TheoremVerdict check_spec_bc(GraphFacts &f, int s);
TheoremVerdict check_bn(GraphFacts &f);
TheoremVerdict check_moon_moser(GraphFacts &f);
TheoremVerdict check_far_supersat(GraphFacts &f);
TheoremVerdict check_tri_effi(GraphFacts &f, const Rational &k);
TheoremVerdict check_deg_sq(GraphFacts &f);
TheoremVerdict check_wilf(GraphFacts &f, int r);
TheoremVerdict check_nikiforov(GraphFacts &f, int r);
TheoremVerdict check_nosal_nz(GraphFacts &f);
TheoremVerdict check_book_conjecture(GraphFacts &f);

/// Lemma-level consequences evaluated on the max-cut partition, gated on
/// lambda >= lambda(Y_{n,2,q}), t < q floor(n/2) and n >= 300 q^2.
std::vector<TheoremVerdict> check_structural_lemmas(GraphFacts &f, int q);

/// Moving the edges vw (w in W) to uw with x_u >= x_v raises lambda.
/// Throws GraphError when W is not inside N(v) \ N(u).
TheoremVerdict check_rotation(GraphFacts &f, int u, int v, const VertexSet &w);

/// Spectral radius of T_{n,2} + H over H with q edges, expected strictly
/// decreasing along star, clique, complete bipartite, cycle, path, matching.
/// Isomorphic duplicates (K_3 = C_3, K_{2,2} = C_4) keep their first slot.
TheoremVerdict check_embed_order(int n, int q, const VerifyOptions &opts = {});

/// Perron mass bracket of y_T for T_{n,2} with K_{1,q} embedded in the part
/// S (n even).
TheoremVerdict check_x_mass(int n, int q, const VerifyOptions &opts = {});

/// lambda(Y_{n,2,q}) < n/2 + 2q/n + 8q/n^2, a numerically swept remark.
TheoremVerdict check_y_upper(int n, int q, const VerifyOptions &opts = {});

/// Parameter bag for dispatching by id (CLI, search jobs).
struct TheoremParams
{
  int q = 1;
  int s = 1;
  int r = 2;
  Rational k{1};
};

/// Per-graph theorems only; EMBED_ORDER, X_MASS and Y_UPPER take (n, q).
/// Structural ids return the single matching lemma verdict.
TheoremVerdict verify(TheoremId id, GraphFacts &f, const TheoremParams &p);
bool is_graph_theorem(TheoremId id);

} // namespace specls
