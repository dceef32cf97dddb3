#include "specls/theorems.hpp"

#include "specls/constructions.hpp"
#include "specls/isomorphism.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>

namespace specls {

namespace {

struct IdName
{
  TheoremId id;
  const char *name;
};

constexpr IdName kIdNames[] = {
    {TheoremId::MANTEL, "MANTEL"},
    {TheoremId::ER_RAD, "ER_RAD"},
    {TheoremId::LS, "LS"},
    {TheoremId::NING_ZHAI, "NING_ZHAI"},
    {TheoremId::SPEC_LS_Y, "SPEC_LS_Y"},
    {TheoremId::SPEC_LS_T, "SPEC_LS_T"},
    {TheoremId::SPEC_BC, "SPEC_BC"},
    {TheoremId::BN_INEQ, "BN_INEQ"},
    {TheoremId::MOON_MOSER, "MOON_MOSER"},
    {TheoremId::FAR_BIP_SUPERSAT, "FAR_BIP_SUPERSAT"},
    {TheoremId::TRI_EFFI, "TRI_EFFI"},
    {TheoremId::DEG_SQ, "DEG_SQ"},
    {TheoremId::WILF, "WILF"},
    {TheoremId::NIKIFOROV_M, "NIKIFOROV_M"},
    {TheoremId::NOSAL_NZ, "NOSAL_NZ"},
    {TheoremId::ROTATION, "ROTATION"},
    {TheoremId::EMBED_ORDER, "EMBED_ORDER"},
    {TheoremId::X_MASS, "X_MASS"},
    {TheoremId::BOOK_CONJ, "BOOK_CONJ"},
    {TheoremId::Y_UPPER, "Y_UPPER"},
    {TheoremId::APPROX_PARTITION, "APPROX_PARTITION"},
    {TheoremId::CLASS_EDGES, "CLASS_EDGES"},
    {TheoremId::DEGREE_WINDOW, "DEGREE_WINDOW"},
    {TheoremId::ENTRY_LOWER, "ENTRY_LOWER"},
    {TheoremId::BALANCE_GAP, "BALANCE_GAP"},
    {TheoremId::BALANCED, "BALANCED"},
    {TheoremId::BELOW_Y, "BELOW_Y"},
    {TheoremId::STAR_OR_C4, "STAR_OR_C4"},
};

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

std::int64_t quarter(std::int64_t n) { return n * n / 4; }

std::int64_t ceil_of(const Rational &r)
{
  std::int64_t q = r.numerator() / r.denominator();
  if (q * r.denominator() < r.numerator())
    ++q;
  return q;
}

std::int64_t floor_of(const Rational &r)
{
  std::int64_t q = r.numerator() / r.denominator();
  if (q * r.denominator() > r.numerator())
    --q;
  return q;
}

std::int64_t isqrt(std::int64_t v)
{
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v)
    --r;
  while ((r + 1) * (r + 1) <= v)
    ++r;
  return r;
}

/// x <= c sqrt(k) for rationals, c >= 0.
bool le_sqrt(const Rational &x, const Rational &c, const Rational &k)
{
  if (x <= 0)
    return true;
  return x * x <= c * c * k;
}

Truth any(Truth a, Truth b)
{
  if (a == Truth::True || b == Truth::True)
    return Truth::True;
  if (a == Truth::Indeterminate || b == Truth::Indeterminate)
    return Truth::Indeterminate;
  return Truth::False;
}

Truth at_least(Decision d)
{
  switch (d) {
  case Decision::Greater:
  case Decision::Equal: return Truth::True;
  case Decision::Less: return Truth::False;
  case Decision::Indeterminate: break;
  }
  return Truth::Indeterminate;
}

Truth at_most(Decision d)
{
  switch (d) {
  case Decision::Less:
  case Decision::Equal: return Truth::True;
  case Decision::Greater: return Truth::False;
  case Decision::Indeterminate: break;
  }
  return Truth::Indeterminate;
}

Truth strictly_less(Decision d)
{
  switch (d) {
  case Decision::Less: return Truth::True;
  case Decision::Equal:
  case Decision::Greater: return Truth::False;
  case Decision::Indeterminate: break;
  }
  return Truth::Indeterminate;
}

Margin lambda_margin(const LambdaDecision &d)
{
  if (d.decision == Decision::Equal && d.method != "enclosure")
    return Margin::of(R(0));
  return Margin::of(d.lambda - d.target);
}

void note_decision(TheoremVerdict &v, const std::string &what, const LambdaDecision &d)
{
  if (d.decision == Decision::Indeterminate)
    v.notes.push_back(what + ": spectral comparison indeterminate at tol_floor");
  else if (d.method != "enclosure")
    v.notes.push_back(what + ": " + to_string(d.decision) + " certified by " + d.method);
}

/// Reference targets shared across calls; enumeration reuses them millions
/// of times.
LambdaTarget cached(const std::string &key, const std::function<LambdaTarget()> &make)
{
  static std::mutex mutex;
  static std::map<std::string, LambdaTarget> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, make()).first;
  return it->second;
}

LambdaTarget sqrt_target(const Rational &k)
{
  return cached("sqrt:" + to_string(k), [&] { return LambdaTarget::sqrt_of(to_big(k), "sqrt(" + to_string(k) + ")"); });
}

LambdaTarget value_target(const Rational &v)
{
  return cached("value:" + to_string(v), [&] { return LambdaTarget::value(to_big(v), to_string(v)); });
}

LambdaTarget construction_target(const ConstructionSpec &spec)
{
  std::string key = spec.to_string();
  return cached("graph:" + key, [&] { return LambdaTarget::of_graph(build(spec).graph, key); });
}

ConstructionSpec y_spec(int n, int q)
{
  ConstructionSpec s;
  s.family = Family::Y2q;
  s.n = n;
  s.q = q;
  return s;
}

ConstructionSpec t_spec(int n, int q)
{
  ConstructionSpec s = y_spec(n, q);
  s.family = Family::T2q;
  return s;
}

bool is_balanced_complete_bipartite(const Graph &g)
{
  return g.size() == quarter(g.order()) && is_bipartite(g).has_value();
}

/// Equality-case structure test; fingerprint-only agreement is accepted
/// with a caveat note.
Truth isomorphic_to(TheoremVerdict &v, const Graph &g, const Graph &ref, const VerifyOptions &opts,
                    const std::string &what)
{
  auto iso = test_isomorphism(g, ref, opts.iso_limit);
  if (iso.isomorphic && !iso.certified)
    v.notes.push_back("fingerprint-only: " + what);
  if (iso.isomorphic && iso.certified)
    v.witness.mapping = iso.mapping;
  return truth(iso.isomorphic);
}

Graph without_isolated(const Graph &g)
{
  VertexSet keep(g.order());
  for (int v = 0; v < g.order(); ++v)
    if (degree(g, v) > 0)
      keep.set(v);
  return induced(g, keep);
}

TheoremVerdict make(TheoremId id, int n)
{
  TheoremVerdict v;
  v.id = id;
  v.n = n;
  return v;
}

long double perron_slack(const SpectralCertificate &c)
{
  return 100.0L * std::sqrt(static_cast<long double>(c.perron.size())) * c.residual + 1e-12L;
}

Interval isqrt_interval(const Interval &x)
{
  return {down(std::sqrt(std::max(0.0L, x.lo))), up(std::sqrt(x.hi))};
}

} // namespace

// ---------------------------------------------------------------------------

std::string to_string(TheoremId id)
{
  for (const auto &e : kIdNames)
    if (e.id == id)
      return e.name;
  return "?";
}

TheoremId theorem_id_from_string(const std::string &s)
{
  for (const auto &e : kIdNames)
    if (s == e.name)
      return e.id;
  if (s == "BN")
    return TheoremId::BN_INEQ;
  throw std::invalid_argument("unknown theorem id '" + s + "'");
}

const std::vector<TheoremId> &all_theorem_ids()
{
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto &e : kIdNames)
      out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::string to_string(Truth t)
{
  switch (t) {
  case Truth::False: return "false";
  case Truth::True: return "true";
  case Truth::Indeterminate: return "indeterminate";
  }
  return "?";
}

Truth truth_from_string(const std::string &s)
{
  if (s == "true")
    return Truth::True;
  if (s == "false")
    return Truth::False;
  if (s == "indeterminate")
    return Truth::Indeterminate;
  throw std::invalid_argument("bad truth value '" + s + "'");
}

Truth operator&&(Truth a, Truth b)
{
  if (a == Truth::False || b == Truth::False)
    return Truth::False;
  if (a == Truth::Indeterminate || b == Truth::Indeterminate)
    return Truth::Indeterminate;
  return Truth::True;
}

// ---------------------------------------------------------------------------

GraphFacts::GraphFacts(Graph g, VerifyOptions opts) : g_(std::move(g)), opts_(opts) {}

std::int64_t GraphFacts::triangles()
{
  if (!t_)
    t_ = triangle_count(g_);
  return *t_;
}

std::int64_t GraphFacts::degree_squares()
{
  if (!d2_)
    d2_ = degree_square_sum(g_);
  return *d2_;
}

const SpectralCertificate &GraphFacts::spectrum()
{
  if (!spec_)
    spec_ = perron_enclosure(g_, opts_.tol_floor);
  return *spec_;
}

LambdaDecision GraphFacts::decide(const LambdaTarget &target)
{
  return decide_lambda(g_, target, {opts_.tol_floor, opts_.exact_limit});
}

const BipartiteDistance &GraphFacts::maxcut()
{
  if (!cut_)
    cut_ = bipartite_distance(g_, opts_.maxcut_limit, opts_.workers, opts_.seed);
  return *cut_;
}

const TriangleCover &GraphFacts::cover()
{
  if (!cover_)
    cover_ = tau3(g_);
  return *cover_;
}

// ---------------------------------------------------------------------------

TheoremVerdict mantel_verdict(int n, std::int64_t m, std::int64_t t)
{
  auto v = make(TheoremId::MANTEL, n);
  v.hypothesis = truth(m > quarter(n));
  v.conclusion = truth(t >= 1);
  v.primary = "t - 1";
  v.margins[v.primary] = Margin::of(t - 1);
  return v;
}

TheoremVerdict ls_verdict(int n, std::int64_t m, std::int64_t t, int q)
{
  auto v = make(TheoremId::LS, n);
  v.params["q"] = std::to_string(q);
  v.hypothesis = truth(q >= 1 && 2 * q < n && m >= quarter(n) + q);
  const std::int64_t bound = static_cast<std::int64_t>(q) * (n / 2);
  v.conclusion = truth(t >= bound);
  v.primary = "t - q*floor(n/2)";
  v.margins[v.primary] = Margin::of(t - bound);
  return v;
}

TheoremVerdict moon_moser_verdict(int n, std::int64_t m, std::int64_t t)
{
  auto v = make(TheoremId::MOON_MOSER, n);
  v.hypothesis = truth(n >= 1);
  Rational rhs = n >= 1 ? R(m * (4 * m - static_cast<std::int64_t>(n) * n), 3 * static_cast<std::int64_t>(n)) : R(0);
  v.conclusion = truth(R(t) >= rhs);
  v.primary = "t - 4m(m - n^2/4)/(3n)";
  v.margins[v.primary] = Margin::of(R(t) - rhs);
  return v;
}

TheoremVerdict deg_sq_verdict(int n, std::int64_t m, std::int64_t d2)
{
  auto v = make(TheoremId::DEG_SQ, n);
  v.hypothesis = Truth::True;
  v.conclusion = truth(d2 <= m * m + m);
  v.primary = "m^2 + m - sum d^2";
  v.margins[v.primary] = Margin::of(m * m + m - d2);
  if (d2 == m * m + m && m > 0)
    v.notes.push_back("equality");
  return v;
}

TheoremVerdict check_mantel(GraphFacts &f) { return mantel_verdict(f.n(), f.m(), f.triangles()); }

TheoremVerdict check_ls(GraphFacts &f, int q) { return ls_verdict(f.n(), f.m(), f.triangles(), q); }

TheoremVerdict check_moon_moser(GraphFacts &f) { return moon_moser_verdict(f.n(), f.m(), f.triangles()); }

TheoremVerdict check_deg_sq(GraphFacts &f) { return deg_sq_verdict(f.n(), f.m(), f.degree_squares()); }

TheoremVerdict check_er_rad(GraphFacts &f)
{
  const int n = f.n();
  auto v = make(TheoremId::ER_RAD, n);
  const std::int64_t t = f.triangles(), bound = n / 2;
  v.hypothesis = truth(f.m() >= quarter(n) + 1);
  v.conclusion = truth(t >= bound);
  v.primary = "t - floor(n/2)";
  v.margins[v.primary] = Margin::of(t - bound);
  if (v.hypothesis == Truth::True && t == bound) {
    Truth eq = isomorphic_to(v, f.graph(), y_n2q(n, 1), f.options(), "T_{n,2} plus one edge in the larger part");
    v.conclusion = eq;
    v.notes.push_back(eq == Truth::True ? "equality: T_{n,2} plus one edge in the larger part"
                                        : "equality outside the stated characterization");
  }
  return v;
}

TheoremVerdict check_ning_zhai(GraphFacts &f)
{
  const int n = f.n();
  auto v = make(TheoremId::NING_ZHAI, n);
  const std::int64_t t = f.triangles(), bound = n / 2 - 1;
  v.primary = "t - (floor(n/2) - 1)";
  v.margins[v.primary] = Margin::of(t - bound);
  if (is_balanced_complete_bipartite(f.graph())) {
    v.hypothesis = Truth::True;
    v.conclusion = Truth::True;
    v.margins["lambda - lambda(T_{n,2})"] = Margin::of(R(0));
    v.notes.push_back("exception: G = T_{n,2}");
    return v;
  }
  auto d = f.decide(sqrt_target(R(quarter(n))));
  note_decision(v, "lambda vs lambda(T_{n,2})", d);
  v.margins["lambda - lambda(T_{n,2})"] = lambda_margin(d);
  v.hypothesis = at_least(d.decision);
  v.conclusion = truth(t >= bound);
  return v;
}

namespace {

TheoremVerdict spectral_ls(GraphFacts &f, int q, bool star)
{
  const int n = f.n();
  auto v = make(star ? TheoremId::SPEC_LS_T : TheoremId::SPEC_LS_Y, n);
  v.params["q"] = std::to_string(q);
  const std::int64_t t = f.triangles(), bound = static_cast<std::int64_t>(q) * (n / 2);
  v.primary = "t - q*floor(n/2)";
  v.margins[v.primary] = Margin::of(t - bound);
  v.conclusion = truth(t >= bound);
  const bool defined = q >= 1 && (star ? q + 1 <= (n + 1) / 2 : 2 * q <= (n + 1) / 2);
  const std::string ref = star ? "T_{n,2,q}" : "Y_{n,2,q}";
  if (!defined) {
    v.hypothesis = Truth::False;
    v.notes.push_back(ref + " undefined for these parameters");
    return v;
  }
  ConstructionSpec spec = star ? t_spec(n, q) : y_spec(n, q);
  auto target = construction_target(spec);
  auto d = f.decide(target);
  if (d.decision == Decision::Indeterminate && f.m() == f.graph().size() && target.graph() &&
      f.m() == target.graph()->size() && t == triangle_count(*target.graph())) {
    auto iso = test_isomorphism(f.graph(), *target.graph(), f.options().iso_limit);
    if (iso.isomorphic && iso.certified) {
      d.decision = Decision::Equal;
      d.method = "isomorphism";
    }
  }
  note_decision(v, "lambda vs lambda(" + ref + ")", d);
  v.margins["lambda - lambda(" + ref + ")"] = lambda_margin(d);
  const bool big = static_cast<std::int64_t>(n) >= 300LL * q * q;
  if (!big)
    v.notes.push_back("n < 300 q^2");
  v.hypothesis = truth(big) && at_least(d.decision);
  if (star && v.hypothesis == Truth::True && t == bound) {
    Truth eq = isomorphic_to(v, f.graph(), *target.graph(), f.options(), "T_{n,2,q}");
    v.conclusion = eq;
    v.notes.push_back(eq == Truth::True ? "equality: G = T_{n,2,q}" : "equality outside the stated characterization");
  }
  return v;
}

} // namespace

TheoremVerdict check_spec_ls_y(GraphFacts &f, int q) { return spectral_ls(f, q, false); }

TheoremVerdict check_spec_ls_t(GraphFacts &f, int q) { return spectral_ls(f, q, true); }

TheoremVerdict check_spec_bc(GraphFacts &f, int s)
{
  const int n = f.n();
  auto v = make(TheoremId::SPEC_BC, n);
  v.params["s"] = std::to_string(s);
  const std::int64_t t = f.triangles();
  const Rational bound = R(static_cast<std::int64_t>(s) * n, 2) - R(5LL * s * s);
  v.primary = "t - (s*n/2 - 5*s^2)";
  v.margins[v.primary] = Margin::of(R(t) - bound);
  v.conclusion = truth(R(t) >= bound);
  const bool big = static_cast<std::int64_t>(n) >= 113LL * s * s;
  if (!big)
    v.notes.push_back("n < 113 s^2");
  Truth spectral = Truth::True;
  if (!is_balanced_complete_bipartite(f.graph())) {
    auto d = f.decide(sqrt_target(R(quarter(n))));
    note_decision(v, "lambda vs lambda(T_{n,2})", d);
    v.margins["lambda - lambda(T_{n,2})"] = lambda_margin(d);
    spectral = at_least(d.decision);
  } else {
    v.margins["lambda - lambda(T_{n,2})"] = Margin::of(R(0));
  }
  v.hypothesis = truth(big) && spectral;
  if (v.hypothesis != Truth::False) {
    try {
      const auto &c = f.cover();
      v.margins["tau3"] = Margin::of(static_cast<std::int64_t>(c.size));
      v.witness.cover = c.witness;
      v.hypothesis = v.hypothesis && truth(c.size >= s);
    } catch (const BudgetExceeded &e) {
      v.notes.push_back(std::string("tau3 unavailable: ") + e.what());
      v.hypothesis = v.hypothesis && Truth::Indeterminate;
    }
  }
  return v;
}

TheoremVerdict check_bn(GraphFacts &f)
{
  const int n = f.n();
  auto v = make(TheoremId::BN_INEQ, n);
  const std::int64_t t = f.triangles(), m = f.m();
  v.primary = "t - lambda(lambda^2 - m)/3";
  if (m == 0) {
    v.hypothesis = Truth::False;
    v.conclusion = Truth::True;
    v.margins[v.primary] = Margin::of(R(0));
    v.notes.push_back("edgeless graph excluded");
    return v;
  }
  v.hypothesis = Truth::True;
  const Interval lam = f.spectrum().lambda;
  const Interval rhs = lam * (lam * lam - Interval::exact(R(m))) / Interval::exact(R(3));
  const Interval margin = Interval::exact(R(t)) - rhs;
  v.margins[v.primary] = Margin::of(margin);
  if (margin.lo > 0) {
    v.conclusion = Truth::True;
    return v;
  }
  if (margin.hi < 0) {
    v.conclusion = Truth::False;
    return v;
  }
  // Equality candidate: lambda against the largest root of x^3 - m x - 3t.
  auto target = cached("bn:" + std::to_string(m) + ":" + std::to_string(t), [&] {
    return LambdaTarget::largest_root(Polynomial({BigRational(-3 * t), BigRational(-m), BigRational(0), BigRational(1)}),
                                      "root of x^3 - mx - 3t");
  });
  auto d = f.decide(target);
  note_decision(v, "lambda vs root of x^3 - m x - 3t", d);
  switch (d.decision) {
  case Decision::Less: v.conclusion = Truth::True; break;
  case Decision::Greater: v.conclusion = Truth::False; break;
  case Decision::Indeterminate: v.conclusion = Truth::Indeterminate; break;
  case Decision::Equal: {
    v.margins[v.primary] = Margin::of(R(0));
    const bool cb = is_complete_bipartite_up_to_isolated(f.graph());
    v.conclusion = truth(cb);
    if (!cb)
      v.notes.push_back("equality on a graph that is not complete bipartite");
    else if (isolated_vertex_count(f.graph()) > 0)
      v.notes.push_back("equality: complete bipartite plus isolated vertices");
    else
      v.notes.push_back("equality: complete bipartite");
    break;
  }
  }
  return v;
}

TheoremVerdict check_far_supersat(GraphFacts &f)
{
  const int n = f.n();
  auto v = make(TheoremId::FAR_BIP_SUPERSAT, n);
  const auto &cut = f.maxcut();
  const std::int64_t eps = cut.epsilon, m = f.m(), t = f.triangles();
  const Rational rhs = R(static_cast<std::int64_t>(n) * (4 * m + 4 * eps - static_cast<std::int64_t>(n) * n), 24);
  v.params["epsilon"] = std::to_string(eps);
  v.primary = "t - n(m + eps - n^2/4)/6";
  v.margins[v.primary] = Margin::of(R(t) - rhs);
  v.witness.partition = cut.witness;
  v.hypothesis = cut.exact ? Truth::True : Truth::Indeterminate;
  if (!cut.exact)
    v.notes.push_back("epsilon is a heuristic upper bound");
  v.conclusion = truth(R(t) >= rhs);
  return v;
}

TheoremVerdict check_tri_effi(GraphFacts &f, const Rational &k)
{
  const int n = f.n();
  auto v = make(TheoremId::TRI_EFFI, n);
  v.params["k"] = to_string(k);
  const std::int64_t t = f.triangles(), m = f.m();
  auto d = f.decide(value_target(R(n, 2)));
  note_decision(v, "lambda vs n/2", d);
  v.margins["lambda - n/2"] = lambda_margin(d);
  v.margins["kn/2 - t"] = Margin::of(k * n / 2 - t);
  v.hypothesis = at_least(d.decision) && truth(R(t) <= k * n / 2);

  const Rational n2 = R(static_cast<std::int64_t>(n) * n, 4);
  // (i)
  const Rational edges_margin = R(m) - (n2 - 3 * k);
  v.margins["m - (n^2/4 - 3k)"] = Margin::of(edges_margin);
  Truth edges = truth(edges_margin >= 0);

  // (ii) existential partition clause.
  const Rational cut_bound = n2 - 9 * k;
  auto partition_ok = [&](const PartitionWitness &p) {
    std::int64_t imb = n - 2 * static_cast<std::int64_t>(p.S.count());
    return R(p.eST) >= cut_bound && R(imb * imb) <= 36 * k;
  };
  const auto &cut = f.maxcut();
  Truth partition = Truth::Indeterminate;
  v.margins["e(S,T) - (n^2/4 - 9k)"] = Margin::of(R(cut.witness.eST) - cut_bound);
  if (partition_ok(cut.witness)) {
    partition = Truth::True;
    v.witness.partition = cut.witness;
  } else if (n <= kExactMaxCutLimit) {
    auto found = find_cut_partition(f.graph(), ceil_of(cut_bound), floor_of(36 * k));
    partition = truth(found.has_value());
    if (found)
      v.witness.partition = *found;
  } else {
    v.notes.push_back("Indeterminate-existential: max-cut partition misses the window");
  }

  // (iii)
  const int dmin = n ? min_degree(f.graph()) : 0, dmax = n ? max_degree(f.graph()) : 0;
  const Rational low = R(n, 2) - 12 * k, high = R(n, 2) + 9 * k;
  v.margins["delta - (n/2 - 12k)"] = Margin::of(R(dmin) - low);
  v.margins["(n/2 + 9k) - Delta"] = Margin::of(high - dmax);
  Truth degrees = truth(R(dmin) >= low && R(dmax) <= high);

  v.conclusion = edges && partition && degrees;
  v.primary = "m - (n^2/4 - 3k)";
  return v;
}

namespace {

Truth clique_free(TheoremVerdict &v, const Graph &g, int r)
{
  if (r + 1 > 6) {
    v.notes.push_back("clique detection limited to K_6");
    return Truth::Indeterminate;
  }
  return truth(!contains_clique(g, r + 1));
}

} // namespace

TheoremVerdict check_wilf(GraphFacts &f, int r)
{
  if (r < 1)
    throw std::invalid_argument("WILF needs r >= 1");
  const int n = f.n();
  auto v = make(TheoremId::WILF, n);
  v.params["r"] = std::to_string(r);
  v.hypothesis = clique_free(v, f.graph(), r);
  auto d = f.decide(value_target(R(static_cast<std::int64_t>(n) * (r - 1), r)));
  note_decision(v, "lambda vs (1 - 1/r) n", d);
  v.conclusion = at_most(d.decision);
  v.primary = "lambda - (1 - 1/r) n";
  v.margins[v.primary] = lambda_margin(d);
  return v;
}

TheoremVerdict check_nikiforov(GraphFacts &f, int r)
{
  if (r < 1)
    throw std::invalid_argument("NIKIFOROV_M needs r >= 1");
  auto v = make(TheoremId::NIKIFOROV_M, f.n());
  v.params["r"] = std::to_string(r);
  v.hypothesis = clique_free(v, f.graph(), r);
  auto d = f.decide(sqrt_target(R(2 * f.m() * (r - 1), r)));
  note_decision(v, "lambda vs sqrt((1 - 1/r) 2m)", d);
  v.conclusion = at_most(d.decision);
  v.primary = "lambda - sqrt((1 - 1/r) 2m)";
  v.margins[v.primary] = lambda_margin(d);
  return v;
}

TheoremVerdict check_nosal_nz(GraphFacts &f)
{
  auto v = make(TheoremId::NOSAL_NZ, f.n());
  const std::int64_t t = f.triangles(), m = f.m();
  auto d = f.decide(sqrt_target(R(m)));
  note_decision(v, "lambda vs sqrt(m)", d);
  v.margins["lambda - sqrt(m)"] = lambda_margin(d);
  const bool cb = is_complete_bipartite_up_to_isolated(f.graph());
  const std::int64_t bound = m >= 1 ? floor_of(R(isqrt(m) - 1, 2)) : -1;
  v.margins["t - floor((sqrt(m) - 1)/2)"] = Margin::of(t - bound);
  v.primary = "t - floor((sqrt(m) - 1)/2)";

  const Truth nosal = truth(t == 0);
  const Truth nz = at_least(d.decision) && truth(!cb);
  v.hypothesis = any(nosal, nz);
  Truth concl = nosal == Truth::True ? at_most(d.decision) : Truth::True;
  if (nz == Truth::True)
    concl = concl && truth(t >= bound);
  else if (nz == Truth::Indeterminate && t < bound)
    concl = concl && Truth::Indeterminate;
  v.conclusion = concl;
  return v;
}

TheoremVerdict check_book_conjecture(GraphFacts &f)
{
  const int n = f.n();
  auto v = make(TheoremId::BOOK_CONJ, n);
  const std::int64_t t = f.triangles(), m = f.m();
  v.primary = "t - (m-1)/2";
  v.margins[v.primary] = Margin::of(R(t) - R(m - 1, 2));
  v.conclusion = truth(2 * t >= m - 1);
  if (m == 0) {
    v.hypothesis = Truth::False;
    return v;
  }
  // lambda^2 <= max_v sum_{u ~ v} d(u); the threshold squared is
  // m - 1/2 + sqrt(4m - 3)/2.
  std::int64_t walk2 = 0;
  const Graph &g = f.graph();
  for (int x = 0; x < n; ++x) {
    std::int64_t s = 0;
    auto r = g.row(x);
    for (int i = 0; i < g.words(); ++i)
      for (Word w = r[i]; w; w &= w - 1)
        s += degree(g, i * 64 + std::countr_zero(w));
    walk2 = std::max(walk2, s);
  }
  const std::int64_t lhs = 2 * walk2 - 2 * m + 1;
  if (lhs < 0 || lhs * lhs < 4 * m - 3) {
    v.hypothesis = Truth::False;
    v.notes.push_back("lambda^2 bound below threshold");
    return v;
  }
  auto target = cached("book:" + std::to_string(m), [&] {
    return LambdaTarget::largest_root(Polynomial({BigRational(-(m - 1)), BigRational(-1), BigRational(1)}),
                                      "(1 + sqrt(4m - 3))/2");
  });
  auto d = f.decide(target);
  note_decision(v, "lambda vs (1 + sqrt(4m - 3))/2", d);
  v.margins["lambda - (1 + sqrt(4m - 3))/2"] = lambda_margin(d);
  v.hypothesis = at_least(d.decision);
  if (v.hypothesis == Truth::True && 2 * t == m - 1) {
    Truth eq = isomorphic_to(v, without_isolated(g), book_join(static_cast<int>((m - 1) / 2)), f.options(),
                             "K_2 join (m-1)/2 K_1");
    v.conclusion = eq;
    v.notes.push_back(eq == Truth::True ? (isolated_vertex_count(g) ? "equality: book plus isolated vertices"
                                                                    : "equality: book")
                                        : "equality outside the conjectured characterization");
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool star_or_c4(const Graph &h)
{
  auto edges = h.edges();
  if (edges.empty())
    return true;
  for (int c : {edges[0].first, edges[0].second}) {
    bool all = std::all_of(edges.begin(), edges.end(), [&](const Edge &e) { return e.first == c || e.second == c; });
    if (all)
      return true;
  }
  Graph core = without_isolated(h);
  if (core.order() != 4 || core.size() != 4)
    return false;
  for (int x = 0; x < 4; ++x)
    if (degree(core, x) != 2)
      return false;
  return true;
}

} // namespace

std::vector<TheoremVerdict> check_structural_lemmas(GraphFacts &f, int q)
{
  const int n = f.n();
  const std::int64_t t = f.triangles(), m = f.m();
  const std::int64_t tri_bound = static_cast<std::int64_t>(q) * (n / 2);
  const bool big = static_cast<std::int64_t>(n) >= 300LL * q * q;

  Truth gate = truth(big && t < tri_bound && q >= 1 && 2 * q <= (n + 1) / 2);
  LambdaDecision dy;
  if (gate == Truth::True) {
    dy = f.decide(construction_target(y_spec(n, q)));
    gate = gate && at_least(dy.decision);
  }

  const auto &cut = f.maxcut();
  const PartitionWitness &p = cut.witness;
  const std::int64_t s_size = p.S.count(), t_size = n - s_size, inside = p.internal();
  const std::int64_t imb = n - 2 * s_size;
  const Rational n2 = R(static_cast<std::int64_t>(n) * n, 4);
  const Truth inexact = cut.exact ? Truth::False : Truth::Indeterminate;

  auto base = [&](TheoremId id) {
    auto v = make(id, n);
    v.params["q"] = std::to_string(q);
    v.hypothesis = gate;
    v.witness.partition = p;
    if (gate == Truth::True || dy.decision != Decision::Indeterminate)
      v.margins["lambda - lambda(Y_{n,2,q})"] = lambda_margin(dy);
    if (!cut.exact)
      v.notes.push_back("partition from heuristic max-cut");
    return v;
  };
  // A failed existential clause on a heuristic partition is not a refutation.
  auto existential = [&](bool ok) { return ok ? Truth::True : inexact; };

  std::vector<TheoremVerdict> out;
  {
    auto v = base(TheoremId::APPROX_PARTITION);
    v.primary = "6q - (e(S)+e(T))";
    v.margins[v.primary] = Margin::of(6LL * q - inside);
    v.margins["e(S,T) - (n^2/4 - 9q)"] = Margin::of(R(p.eST) - (n2 - 9 * q));
    bool ok = inside < 6LL * q && R(p.eST) > n2 - 9 * q && imb * imb < 36LL * q;
    v.conclusion = existential(ok);
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::CLASS_EDGES);
    v.primary = "q - (e(S)+e(T))";
    v.margins[v.primary] = Margin::of(q - inside);
    v.conclusion = existential(inside <= q);
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::DEGREE_WINDOW);
    const int dmin = n ? min_degree(f.graph()) : 0, dmax = n ? max_degree(f.graph()) : 0;
    v.primary = "delta - (n/2 - 4q)";
    v.margins[v.primary] = Margin::of(R(dmin) - (R(n, 2) - 4 * q));
    v.margins["e(S,T) - (n^2/4 + 2 - 4q)"] = Margin::of(R(p.eST) - (n2 + 2 - 4 * q));
    const Rational over = R(2LL * dmax - n - 2LL * q);
    bool sides = R(p.eST) > n2 + 2 - 4 * q && imb * imb < 16LL * q;
    bool degrees = R(dmin) >= R(n, 2) - 4 * q && le_sqrt(over, R(4), R(q));
    v.conclusion = existential(sides) && truth(degrees);
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::ENTRY_LOWER);
    const auto &c = f.spectrum();
    const long double slack = perron_slack(c);
    const long double xmin = n ? static_cast<long double>(c.perron.minCoeff()) : 1.0L;
    const Interval entry{down(xmin - slack), up(xmin + slack)};
    const Interval margin = entry - Interval::exact(1 - R(30LL * q, n));
    v.primary = "min x - (1 - 30q/n)";
    v.margins[v.primary] = Margin::of(margin);
    v.conclusion = margin.lo > 0 ? Truth::True : margin.hi <= 0 ? Truth::False : Truth::Indeterminate;
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::BALANCE_GAP);
    v.primary = "120q^2/(n(n-60q)) - gap";
    if (n > 60 * q) {
      const Interval gap = Interval::exact(R(2 * quarter(n), n)) - isqrt_interval(Interval::exact(R(s_size * t_size)));
      const Interval margin = Interval::exact(R(120LL * q * q, static_cast<std::int64_t>(n) * (n - 60 * q))) - gap;
      v.margins[v.primary] = Margin::of(margin);
      v.conclusion = margin.lo >= 0 ? Truth::True : margin.hi < 0 ? inexact : Truth::Indeterminate;
    } else {
      v.hypothesis = Truth::False;
      v.notes.push_back("n <= 60q");
      v.conclusion = Truth::Indeterminate;
    }
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::BALANCED);
    v.primary = "1 - ||S| - |T||";
    v.margins[v.primary] = Margin::of(1 - std::abs(imb));
    v.conclusion = existential(std::abs(imb) <= 1);
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::BELOW_Y);
    v.hypothesis = gate && truth(m <= quarter(n) + q - 1);
    v.primary = "lambda - lambda(Y_{n,2,q})";
    if (gate == Truth::True || dy.decision != Decision::Indeterminate)
      v.conclusion = strictly_less(dy.decision);
    else if (q >= 1 && 2 * q <= (n + 1) / 2) {
      auto d = f.decide(construction_target(y_spec(n, q)));
      v.margins[v.primary] = lambda_margin(d);
      v.conclusion = strictly_less(d.decision);
    } else {
      v.conclusion = Truth::Indeterminate;
    }
    out.push_back(std::move(v));
  }
  {
    auto v = base(TheoremId::STAR_OR_C4);
    Truth gate5 = truth(big && t <= tri_bound && q >= 1 && q + 1 <= (n + 1) / 2);
    v.margins.erase("lambda - lambda(Y_{n,2,q})");
    if (gate5 == Truth::True) {
      auto d = f.decide(construction_target(t_spec(n, q)));
      v.margins["lambda - lambda(T_{n,2,q})"] = lambda_margin(d);
      gate5 = gate5 && at_least(d.decision);
    }
    v.hypothesis = gate5;
    const bool shape = star_or_c4(induced(f.graph(), p.S)) && star_or_c4(induced(f.graph(), p.T));
    v.primary = "shape";
    v.margins[v.primary] = Margin::of(shape ? 1 : 0);
    v.conclusion = existential(shape);
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

TheoremVerdict check_rotation(GraphFacts &f, int u, int v_, const VertexSet &w)
{
  const Graph rotated = rotate_edges(f.graph(), u, v_, w);
  auto v = make(TheoremId::ROTATION, f.n());
  v.params["u"] = std::to_string(u);
  v.params["v"] = std::to_string(v_);
  std::string members;
  for (int x : w.members())
    members += (members.empty() ? "" : " ") + std::to_string(x);
  v.params["W"] = members;

  auto d = decide_lambda(rotated, LambdaTarget::of_graph(f.graph(), "G"),
                         {f.options().tol_floor, f.options().exact_limit});
  note_decision(v, "lambda(G') vs lambda(G)", d);
  v.primary = "lambda(G') - lambda(G)";
  v.margins[v.primary] = lambda_margin(d);
  v.conclusion = d.decision == Decision::Greater   ? Truth::True
                 : d.decision == Decision::Indeterminate ? Truth::Indeterminate
                                                        : Truth::False;
  if (w.empty()) {
    v.hypothesis = Truth::False;
    v.notes.push_back("hypothesis-degenerate: empty rotation set");
    return v;
  }
  if (!is_connected(f.graph())) {
    v.hypothesis = Truth::False;
    v.notes.push_back("hypothesis-not-met: G is disconnected");
    return v;
  }
  const auto &c = f.spectrum();
  const long double slack = perron_slack(c);
  const long double diff = static_cast<long double>(c.perron[u]) - static_cast<long double>(c.perron[v_]);
  v.margins["x_u - x_v"] = Margin::of(Interval{down(diff - slack), up(diff + slack)});
  if (diff > slack) {
    v.hypothesis = Truth::True;
  } else if (diff < -slack) {
    v.hypothesis = Truth::False;
  } else {
    auto sym = similar_vertices(f.graph(), u, v_, f.options().iso_limit);
    if (sym && *sym) {
      v.hypothesis = Truth::True;
      v.notes.push_back("x_u = x_v by an automorphism mapping u to v");
    } else {
      v.hypothesis = Truth::Indeterminate;
    }
  }
  return v;
}

TheoremVerdict check_embed_order(int n, int q, const VerifyOptions &opts)
{
  auto v = make(TheoremId::EMBED_ORDER, n);
  v.params["q"] = std::to_string(q);
  struct Entry
  {
    std::string name;
    Graph graph;
  };
  std::vector<std::pair<std::string, std::optional<HDescriptor>>> wanted;
  wanted.emplace_back("star", q >= 1 ? std::optional(HDescriptor::star(q)) : std::nullopt);
  std::optional<HDescriptor> clique;
  for (int k = 2; k * (k - 1) / 2 <= q; ++k)
    if (k * (k - 1) / 2 == q)
      clique = HDescriptor::clique(k);
  wanted.emplace_back("clique", clique);
  std::optional<HDescriptor> kab;
  for (int a = 2; a * a <= q; ++a)
    if (q % a == 0)
      kab = HDescriptor::kab(a, q / a);
  wanted.emplace_back("complete bipartite", kab);
  wanted.emplace_back("cycle", q >= 3 ? std::optional(HDescriptor::cycle(q)) : std::nullopt);
  wanted.emplace_back("path", q >= 1 ? std::optional(HDescriptor::path(q)) : std::nullopt);
  wanted.emplace_back("matching", q >= 1 ? std::optional(HDescriptor::matching(q)) : std::nullopt);

  std::vector<Entry> kept;
  std::vector<Graph> hs;
  std::string order;
  for (auto &[name, desc] : wanted) {
    if (!desc) {
      v.notes.push_back(name + ": undefined for q=" + std::to_string(q));
      continue;
    }
    Graph h = desc->graph();
    if (h.order() > (n + 1) / 2) {
      v.notes.push_back(name + ": does not fit the larger part");
      continue;
    }
    bool dup = false;
    for (std::size_t i = 0; i < hs.size() && !dup; ++i)
      if (test_isomorphism(h, hs[i]).isomorphic) {
        v.notes.push_back(name + ": coincides with " + kept[i].name);
        dup = true;
      }
    if (dup)
      continue;
    hs.push_back(h);
    kept.push_back({name, embed_into_turan2(n, h, Side::Larger)});
    order += (order.empty() ? "" : " > ") + name;
  }
  v.params["order"] = order;
  v.hypothesis = truth(kept.size() >= 2);
  Truth all = Truth::True;
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    auto c = compare_lambda(kept[i].graph, kept[i + 1].graph, opts.tol_floor);
    const std::string key = "lambda(" + kept[i].name + ") - lambda(" + kept[i + 1].name + ")";
    v.margins[key] = Margin::of(c.first - c.second);
    v.margins["lambda(" + kept[i].name + ")"] = Margin::of(c.first);
    v.margins["lambda(" + kept[i + 1].name + ")"] = Margin::of(c.second);
    Truth step = c.order == Ordering::Greater ? Truth::True
                 : c.order == Ordering::Less  ? Truth::False
                                              : Truth::Indeterminate;
    if (step == Truth::False)
      v.notes.push_back("order violated: " + kept[i].name + " < " + kept[i + 1].name);
    if (step == Truth::Indeterminate)
      v.notes.push_back("tie: " + kept[i].name + " vs " + kept[i + 1].name);
    if (v.primary.empty() || (step == Truth::False && all != Truth::False))
      v.primary = key;
    all = all && step;
  }
  v.conclusion = all;
  return v;
}

TheoremVerdict check_x_mass(int n, int q, const VerifyOptions &opts)
{
  if (n % 2 != 0)
    throw std::invalid_argument("X_MASS needs even n");
  if (q < 1 || q + 1 > n / 2)
    throw std::invalid_argument("X_MASS needs 1 <= q and q + 1 <= n/2");
  auto v = make(TheoremId::X_MASS, n);
  v.params["q"] = std::to_string(q);
  v.hypothesis = Truth::True;
  const Graph g = t_n2q(n, q);
  const auto c = perron_enclosure(g, opts.tol_floor);
  const long double slack = perron_slack(c);
  const int half = n / 2;
  long double ys = 0, yt = 0;
  for (int x = 0; x < n; ++x)
    (x < half ? ys : yt) += static_cast<long double>(c.perron[x]);
  const Interval y_t{down(yt - half * slack), up(yt + half * slack)};
  const Interval y_v{down(ys + yt - n * slack), up(ys + yt + n * slack)};
  const Interval lam = c.lambda;
  const Interval sz = Interval::exact(R(half)), twoq = Interval::exact(R(2LL * q)), qq = Interval::exact(R(q));
  const Interval lower = lam * y_v / (lam + sz + twoq / (lam - qq));
  const Interval upper = lam * y_v / (lam + sz + twoq / lam);
  const Interval m_lo = y_t - lower, m_hi = upper - y_t;
  v.margins["y_T - lower"] = Margin::of(m_lo);
  v.margins["upper - y_T"] = Margin::of(m_hi);
  v.primary = "y_T - lower";
  auto sign = [](const Interval &iv) {
    return iv.lo >= 0 ? Truth::True : iv.hi < 0 ? Truth::False : Truth::Indeterminate;
  };
  v.conclusion = sign(m_lo) && sign(m_hi);
  return v;
}

TheoremVerdict check_y_upper(int n, int q, const VerifyOptions &opts)
{
  auto v = make(TheoremId::Y_UPPER, n);
  v.params["q"] = std::to_string(q);
  v.primary = "lambda(Y) - (n/2 + 2q/n + 8q/n^2)";
  if (q < 1 || 2 * q > (n + 1) / 2) {
    v.hypothesis = Truth::False;
    v.conclusion = Truth::Indeterminate;
    v.notes.push_back("Y_{n,2,q} undefined");
    return v;
  }
  v.hypothesis = Truth::True;
  const Rational bound = R(n, 2) + R(2LL * q, n) + R(8LL * q, static_cast<std::int64_t>(n) * n);
  auto d = decide_lambda(y_n2q(n, q), LambdaTarget::value(to_big(bound), "bound"), {opts.tol_floor, opts.exact_limit});
  v.margins[v.primary] = lambda_margin(d);
  v.conclusion = strictly_less(d.decision);
  return v;
}

// ---------------------------------------------------------------------------

bool is_graph_theorem(TheoremId id)
{
  return id != TheoremId::EMBED_ORDER && id != TheoremId::X_MASS && id != TheoremId::Y_UPPER &&
         id != TheoremId::ROTATION;
}

TheoremVerdict verify(TheoremId id, GraphFacts &f, const TheoremParams &p)
{
  switch (id) {
  case TheoremId::MANTEL: return check_mantel(f);
  case TheoremId::ER_RAD: return check_er_rad(f);
  case TheoremId::LS: return check_ls(f, p.q);
  case TheoremId::NING_ZHAI: return check_ning_zhai(f);
  case TheoremId::SPEC_LS_Y: return check_spec_ls_y(f, p.q);
  case TheoremId::SPEC_LS_T: return check_spec_ls_t(f, p.q);
  case TheoremId::SPEC_BC: return check_spec_bc(f, p.s);
  case TheoremId::BN_INEQ: return check_bn(f);
  case TheoremId::MOON_MOSER: return check_moon_moser(f);
  case TheoremId::FAR_BIP_SUPERSAT: return check_far_supersat(f);
  case TheoremId::TRI_EFFI: return check_tri_effi(f, p.k);
  case TheoremId::DEG_SQ: return check_deg_sq(f);
  case TheoremId::WILF: return check_wilf(f, p.r);
  case TheoremId::NIKIFOROV_M: return check_nikiforov(f, p.r);
  case TheoremId::NOSAL_NZ: return check_nosal_nz(f);
  case TheoremId::BOOK_CONJ: return check_book_conjecture(f);
  case TheoremId::APPROX_PARTITION:
  case TheoremId::CLASS_EDGES:
  case TheoremId::DEGREE_WINDOW:
  case TheoremId::ENTRY_LOWER:
  case TheoremId::BALANCE_GAP:
  case TheoremId::BALANCED:
  case TheoremId::BELOW_Y:
  case TheoremId::STAR_OR_C4:
    for (auto &v : check_structural_lemmas(f, p.q))
      if (v.id == id)
        return v;
    break;
  case TheoremId::ROTATION:
  case TheoremId::EMBED_ORDER:
  case TheoremId::X_MASS:
  case TheoremId::Y_UPPER: break;
  }
  throw std::invalid_argument(to_string(id) + " is not a per-graph check");
}

} // namespace specls
