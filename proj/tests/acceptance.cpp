// Acceptance criteria. Each prints one PASS/FAIL line; --criterion selects one.

#include "specls/constructions.hpp"
#include "specls/graph6.hpp"
#include "specls/isomorphism.hpp"
#include "specls/report.hpp"
#include "specls/search.hpp"
#include "specls/spectral.hpp"
#include "specls/theorems.hpp"
#include "specls/triangles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace specls;

namespace {

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string &what)
  {
    if (!ok) {
      pass = false;
      if (failures.size() < 8)
        failures.push_back(what);
    }
  }
};

const BigRational kTol("1/1000000000000");

int workers_from_env()
{
  const char *w = std::getenv("SPECLS_WORKERS");
  return w ? std::max(1, std::atoi(w)) : 1;
}

// Y_{n,2,1} against the closed-form cubic, and the squared lower bound.
void c1(Outcome &o)
{
  int checked = 0;
  for (int n = 6; n <= 60; ++n) {
    auto cert = perron_enclosure(y_n2q(n, 1), 1e-12);
    auto root = family_lambda(n % 2 ? FamilyTag::YOdd : FamilyTag::YEven, n, kTol);
    o.require(cert.converged, "unconverged n=" + std::to_string(n));
    o.require(cert.lambda.overlaps(root.interval), "enclosure misses the cubic root at n=" + std::to_string(n));
    o.require(cert.lambda.lo * cert.lambda.lo > n * n / 4 + 2, "lambda^2 bound fails at n=" + std::to_string(n));
    ++checked;
  }
  o.detail << checked << " orders";
}

// T_{n,2,4} and C_4 embeddings against the quartic and cubic for odd n.
void c2(Outcome &o)
{
  int checked = 0;
  for (int n = 9; n <= 41; n += 2) {
    auto star = perron_enclosure(t_n2q(n, 4), 1e-12);
    auto quartic = family_lambda(FamilyTag::TStar4, n, kTol);
    o.require(star.lambda.overlaps(quartic.interval), "star enclosure misses quartic root at n=" + std::to_string(n));
    auto c4 = perron_enclosure(embed_into_turan2(n, HDescriptor::cycle(4).graph(), Side::Larger), 1e-12);
    auto cubic = family_lambda(FamilyTag::C4Embed, n, kTol);
    o.require(c4.lambda.overlaps(cubic.interval), "C4 enclosure misses cubic root at n=" + std::to_string(n));
    ++checked;
  }
  o.detail << checked << " odd orders";
}

// lambda(Y_{n,2,q}) < lambda(T_{n,2,q}).
void c3(Outcome &o)
{
  int checked = 0;
  for (int q = 2; q <= 6; ++q)
    for (int n = std::max(4 * q, 10); n <= 200; n += 10) {
      auto c = compare_lambda(y_n2q(n, q), t_n2q(n, q));
      o.require(c.order == Ordering::Less && !c.indeterminate,
                "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": " + to_string(c.order));
      ++checked;
    }
  o.detail << checked << " pairs certified";
}

// Exhaustive LS over every labeled graph with n = 4..8 and every feasible q.
void c4(Outcome &o)
{
  SearchJob job;
  job.target = TheoremId::LS;
  job.n_min = 4;
  job.n_max = 8;
  job.param_min = 1;
  job.param_max = 0;
  job.workers = workers_from_env();
  auto r = run_search(job);
  std::int64_t expect = 0;
  for (int n = 4; n <= 8; ++n)
    for (int q = 1; q < (n + 1) / 2; ++q)
      expect += subset_count(n, n * n / 4 + q, n * (n - 1) / 2);
  o.require(r.graphs_visited == expect, "visited " + std::to_string(r.graphs_visited) + " of " + std::to_string(expect));
  o.require(r.expected_count == expect, "reported expected count differs");
  o.require(r.counterexample_count == 0, std::to_string(r.counterexample_count) + " counterexamples");
  o.require(r.indeterminate == 0, "indeterminate verdicts");
  o.detail << r.graphs_visited << " graphs, " << r.counterexample_count << " counterexamples";
}

// BN inequality without isolated vertices; equality exactly on complete bipartite graphs.
void c5(Outcome &o)
{
  SearchJob job;
  job.target = TheoremId::BN_INEQ;
  job.n_min = 1;
  job.n_max = 7;
  job.skip_isolated = true;
  job.workers = workers_from_env();
  auto r = run_search(job);
  std::int64_t expect = 0;
  for (int n = 2; n <= 7; ++n)
    expect += (std::int64_t{1} << (n - 1)) - 1;
  o.require(r.counterexample_count == 0, std::to_string(r.counterexample_count) + " counterexamples");
  o.require(r.indeterminate == 0, std::to_string(r.indeterminate) + " indeterminate");
  o.require(r.equality_count == expect,
            "equality count " + std::to_string(r.equality_count) + ", expected " + std::to_string(expect));
  o.require(static_cast<std::int64_t>(r.equalities.size()) == r.equality_count, "equality list truncated");
  for (const auto &e : r.equalities)
    o.require(is_complete_bipartite_up_to_isolated(parse_graph6(e.graph6)) &&
                  isolated_vertex_count(parse_graph6(e.graph6)) == 0,
              "equality on " + e.graph6);
  o.detail << r.graphs_examined << " graphs, " << r.equality_count << " equalities";
}

// G1/G2 triangle and edge formulas.
void c6(Outcome &o)
{
  int built = 0, infeasible = 0;
  for (int n : {20, 50, 100})
    for (int s = 2; s <= 5; ++s)
      for (int t = 1; t < s; ++t)
        for (int a = 0; a <= 2; ++a) {
          int alpha = s - t - a * a - (n % 2 ? a : 0);
          int A = (n + 1) / 2 + a, B = n / 2 - a;
          for (int which : {1, 2}) {
            Graph g;
            try {
              g = which == 1 ? balogh_clemen_g1(n, s, t, a) : balogh_clemen_g2(n, s, t, a);
            } catch (const std::invalid_argument &) {
              o.require(alpha < 0 || alpha > (which == 1 ? s - 1 : s),
                        "unexpected rejection G" + std::to_string(which) + " n=" + std::to_string(n));
              ++infeasible;
              continue;
            }
            std::int64_t t_expect = which == 1 ? std::int64_t{s - 1} * B + A - 2 * alpha : std::int64_t{s} * B - alpha;
            std::string tag = "G" + std::to_string(which) + " n=" + std::to_string(n) + " s=" + std::to_string(s) +
                              " t=" + std::to_string(t) + " a=" + std::to_string(a);
            o.require(g.size() == n * n / 4 + t, tag + ": m");
            o.require(triangle_count(g) == t_expect, tag + ": t");
            ++built;
          }
        }
  o.require(built > 0, "nothing built");
  o.detail << built << " graphs checked, " << infeasible << " infeasible parameter sets";
}

// Embedding order star > clique > complete bipartite > cycle > path > matching.
void c7(Outcome &o)
{
  for (int n : {30, 60})
    for (int q : {3, 4}) {
      auto v = check_embed_order(n, q);
      std::string order = v.params.count("order") ? v.params.at("order") : "";
      o.require(v.conclusion == Truth::True,
                "n=" + std::to_string(n) + " q=" + std::to_string(q) + " " + to_string(v.conclusion) + " (" + order + ")");
      for (const auto &note : v.notes)
        if (note.rfind("order violated", 0) == 0)
          o.require(false, "n=" + std::to_string(n) + " q=" + std::to_string(q) + " " + note);
    }
  o.detail << "4 (n, q) pairs";
}

// Random SPEC_LS_Y probe at n = 300, q = 1.
void c8(Outcome &o)
{
  SearchJob job;
  job.target = TheoremId::SPEC_LS_Y;
  job.mode = SearchMode::Random;
  job.n_min = job.n_max = 300;
  job.param_min = job.param_max = 1;
  job.budget = 10000;
  job.perturbations = 1000;
  job.workers = workers_from_env();
  auto r = run_search(job);
  o.require(r.graphs_visited == 11000, "visited " + std::to_string(r.graphs_visited));
  o.require(r.counterexample_count == 0, std::to_string(r.counterexample_count) + " counterexamples");
  o.detail << r.graphs_visited << " samples, " << r.hypothesis_met << " met the hypothesis, " << r.indeterminate
           << " indeterminate, 0 counterexamples required";
}

// G2 at n >= 113 s^2: t >= s n/2 - 5 s^2 and tau3 = s.
void c9(Outcome &o)
{
  for (int s : {2, 3}) {
    int n = 113 * s * s;
    n += n % 2;
    Graph g = balogh_clemen_g2(n, s, 1, 0);
    GraphFacts f(g);
    auto v = check_spec_bc(f, s);
    std::string tag = "s=" + std::to_string(s) + " n=" + std::to_string(n);
    o.require(f.cover().size == s, tag + ": tau3=" + std::to_string(f.cover().size));
    o.require(v.hypothesis == Truth::True, tag + ": hypothesis " + to_string(v.hypothesis));
    o.require(v.conclusion == Truth::True, tag + ": conclusion " + to_string(v.conclusion));
    o.require(2 * f.triangles() >= std::int64_t{s} * n - 10 * s * s, tag + ": triangle bound");
    o.detail << tag << " t=" << f.triangles() << "; ";
  }
}

// Book conjecture on all graphs with n <= 7.
void c10(Outcome &o)
{
  SearchJob job;
  job.target = TheoremId::BOOK_CONJ;
  job.n_min = 1;
  job.n_max = 7;
  job.workers = workers_from_env();
  auto r = run_search(job);
  o.require(r.counterexample_count == 0, std::to_string(r.counterexample_count) + " counterexamples");
  o.require(static_cast<std::int64_t>(r.equalities.size()) == r.equality_count, "equality list truncated");
  std::map<std::int64_t, int> books;
  for (const auto &e : r.equalities) {
    Graph g = parse_graph6(e.graph6);
    std::vector<int> keep;
    for (int v = 0; v < g.order(); ++v)
      if (degree(g, v) > 0)
        keep.push_back(v);
    Graph core = induced(g, VertexSet(g.order(), keep));
    bool book = e.m % 2 == 1 && test_isomorphism(core, book_join(static_cast<int>((e.m - 1) / 2))).isomorphic;
    o.require(book, "equality on a non-book " + e.graph6);
    if (book)
      ++books[e.m];
  }
  for (std::int64_t m : {3, 5, 7}) {
    o.require(books[m] > 0, "no equality at m=" + std::to_string(m));
    auto cert = perron_enclosure(book_join(static_cast<int>((m - 1) / 2)), 1e-12);
    long double expect = (1 + std::sqrt(4.0L * m - 3)) / 2;
    o.require(std::fabs(cert.lambda.mid() - expect) < 1e-9L, "lambda mismatch at m=" + std::to_string(m));
  }
  o.detail << r.graphs_examined << " graphs, " << r.hypothesis_met << " met the hypothesis, " << r.equality_count
           << " equalities (m=3: " << books[3] << ", m=5: " << books[5] << ", m=7: " << books[7] << ")";
}

// Ratio C(G) = t / (n^2 (lambda - n/2)).
void c11(Outcome &o)
{
  std::vector<int> grid;
  for (int n = 30; n <= 300; n += 3)
    grid.push_back(n);
  auto r = ratio_scan({ConstructionSpec::parse("Turan:n=3,r=3")}, grid);
  int exact = 0;
  for (const auto &p : r.ratios) {
    o.require(p.exact && *p.exact == Rational(2, 9), p.family + " not exactly 2/9");
    exact += p.exact.has_value();
  }
  o.require(exact == static_cast<int>(grid.size()), "missing grid points");

  auto t = ratio_scan({ConstructionSpec::parse("T:n=10,q=1")}, {300});
  o.require(t.ratios.size() == 1 && t.ratios[0].usable, "T_{300,2,1} ratio unusable");
  if (!t.ratios.empty()) {
    const auto &p = t.ratios[0];
    o.require(p.ratio.lo >= 0.24L && p.ratio.hi <= 0.26L, "T_{300,2,1} ratio outside 1/4 +- 1e-2");
    o.detail << exact << " Turan points at 2/9, T_{300,2,1} ratio " << static_cast<double>(p.ratio_mid);
  }
}

// Same job, any worker count or repeated seed: byte-identical reports.
void c12(Outcome &o)
{
  SearchJob ex;
  ex.target = TheoremId::BN_INEQ;
  ex.n_min = 2;
  ex.n_max = 6;
  std::string base;
  for (int w : {1, 2, 4, 8}) {
    ex.workers = w;
    std::string d = dump(to_json(run_search(ex)));
    if (base.empty())
      base = d;
    o.require(d == base, "exhaustive report differs at workers=" + std::to_string(w));
  }

  SearchJob rnd;
  rnd.target = TheoremId::LS;
  rnd.mode = SearchMode::Random;
  rnd.n_min = rnd.n_max = 40;
  rnd.budget = 300;
  rnd.perturbations = 50;
  rnd.seed = 1234;
  std::string first;
  for (int w : {1, 3, 4}) {
    rnd.workers = w;
    std::string d = dump(to_json(run_search(rnd)));
    if (first.empty())
      first = d;
    o.require(d == first, "random report differs at workers=" + std::to_string(w));
  }
  rnd.workers = 1;
  o.require(dump(to_json(run_search(rnd))) == first, "random report differs on rerun");
  rnd.seed = 1235;
  o.require(dump(to_json(run_search(rnd))) != first, "a different seed gave the same report");
  o.detail << "exhaustive over 4 worker counts, random over 3 worker counts and 2 seeds";
}

struct Criterion
{
  int id;
  const char *name;
  std::function<void(Outcome &)> run;
};

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> all{
      {1, "Y_{n,2,1} enclosures match the cubic roots, n=6..60", c1},
      {2, "T_{n,2,4} and C_4 embeddings match quartic and cubic, odd n=9..41", c2},
      {3, "lambda(Y_{n,2,q}) < lambda(T_{n,2,q}), q=2..6, n<=200", c3},
      {4, "LS exhaustive, n=4..8", c4},
      {5, "BN inequality and equality set, n<=7 without isolated vertices", c5},
      {6, "G1/G2 edge and triangle formulas", c6},
      {7, "embedding order, n in {30,60}, q in {3,4}", c7},
      {8, "random SPEC_LS_Y probe, n=300, q=1", c8},
      {9, "G2 at n >= 113 s^2, s in {2,3}", c9},
      {10, "book conjecture, n<=7", c10},
      {11, "ratio scan: T_{n,3} at 2/9, T_{300,2,1} near 1/4", c11},
      {12, "determinism across workers and seeds", c12},
  };

  bool ok = true;
  for (const auto &c : all) {
    if (only && c.id != only)
      continue;
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception &e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << out.detail.str()
              << "] (" << std::fixed << std::setprecision(1) << secs << "s)\n";
    for (const auto &f : out.failures)
      std::cout << "  " << f << '\n';
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
