#include "oracles.hpp"

#include "specls/constructions.hpp"
#include "specls/theorems.hpp"
#include "specls/triangles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace specls;

namespace {

Graph k4() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph c5() { return build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

Rational exact_margin(const TheoremVerdict &v)
{
  const Margin *m = v.primary_margin();
  REQUIRE(m != nullptr);
  REQUIRE(m->exact.has_value());
  return *m->exact;
}

bool has_note(const TheoremVerdict &v, const std::string &text)
{
  return std::any_of(v.notes.begin(), v.notes.end(),
                     [&](const std::string &s) { return s.find(text) != std::string::npos; });
}

TheoremVerdict run(TheoremId id, const Graph &g, TheoremParams p = {})
{
  GraphFacts f(g);
  return verify(id, f, p);
}

} // namespace

TEST_SUITE("theorems")
{
  TEST_CASE("LS examples")
  {
    auto v = run(TheoremId::LS, t_n2q(10, 3), {.q = 3});
    CHECK(v.hypothesis == Truth::True);
    CHECK(v.conclusion == Truth::True);
    CHECK(exact_margin(v) == Rational(0));

    // K_{6,4} plus a 6-cycle in the larger part: 30 edges, q = n/2 = 5
    GraphBuilder b(complete_multipartite({6, 4}));
    for (int i = 0; i < 6; ++i)
      b.add_edge(i, (i + 1) % 6);
    Graph sharp = b.build();
    REQUIRE(sharp.size() == 30);
    auto s = run(TheoremId::LS, sharp, {.q = 5});
    CHECK(s.hypothesis == Truth::False);
    CHECK(triangle_count(sharp) < 5 * 5);

    auto low = run(TheoremId::LS, turan(10, 2), {.q = 1});
    CHECK(low.hypothesis == Truth::False);
    CHECK(exact_margin(low) == Rational(-5));
  }

  TEST_CASE("LS verdict core matches the graph path")
  {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 4 + static_cast<int>(rng() % 6);
      Graph g = oracle::random_graph(n, 0.7, rng);
      int q = 1 + static_cast<int>(rng() % 3);
      auto a = run(TheoremId::LS, g, {.q = q});
      auto b = ls_verdict(n, g.size(), oracle::triangles(g), q);
      CHECK(a.hypothesis == b.hypothesis);
      CHECK(a.conclusion == b.conclusion);
      CHECK_FALSE(a.counterexample());
    }
  }

  TEST_CASE("MANTEL and ER_RAD")
  {
    auto m = run(TheoremId::MANTEL, kab_plus(5, 4));
    CHECK(m.hypothesis == Truth::True);
    CHECK(m.conclusion == Truth::True);

    auto e = run(TheoremId::ER_RAD, kab_plus(5, 4));
    CHECK(e.hypothesis == Truth::True);
    CHECK(e.conclusion == Truth::True);
    CHECK(exact_margin(e) == Rational(0));
    CHECK(has_note(e, "equality: T_{n,2} plus one edge in the larger part"));

    // edge in the smaller part: 5 triangles, margin 1
    auto s = run(TheoremId::ER_RAD, kab_plus(4, 5));
    CHECK(exact_margin(s) == Rational(1));

    CHECK(run(TheoremId::MANTEL, turan(9, 2)).hypothesis == Truth::False);
  }

  TEST_CASE("NING_ZHAI")
  {
    auto t = run(TheoremId::NING_ZHAI, turan(8, 2));
    CHECK(t.hypothesis == Truth::True);
    CHECK(t.conclusion == Truth::True);
    CHECK(has_note(t, "exception"));

    auto k = run(TheoremId::NING_ZHAI, kab_plus(6, 4));
    CHECK(k.hypothesis == Truth::True);
    CHECK(k.conclusion == Truth::True);
    CHECK(exact_margin(k) == Rational(0));

    CHECK(run(TheoremId::NING_ZHAI, c5()).hypothesis == Truth::False);
  }

  TEST_CASE("SPEC_LS_Y and SPEC_LS_T on T_{n,2,q}")
  {
    Graph t = t_n2q(300, 1);
    auto y = run(TheoremId::SPEC_LS_Y, t, {.q = 1});
    CHECK(y.hypothesis == Truth::True);
    CHECK(y.conclusion == Truth::True);
    CHECK(exact_margin(y) == Rational(0));
    auto tt = run(TheoremId::SPEC_LS_T, t, {.q = 1});
    CHECK(tt.hypothesis == Truth::True);
    CHECK(tt.conclusion == Truth::True);
    CHECK(has_note(tt, "equality: G = T_{n,2,q}"));

    CHECK(run(TheoremId::SPEC_LS_Y, t_n2q(100, 1), {.q = 1}).hypothesis == Truth::False);
  }

  TEST_CASE("SPEC_LS_Y hypothesis fails below Y")
  {
    GraphBuilder b(turan(1200, 2));
    b.add_edge(0, 7);
    auto v = run(TheoremId::SPEC_LS_Y, b.build(), {.q = 2});
    CHECK(v.hypothesis == Truth::False);
  }

  TEST_CASE("SPEC_BC")
  {
    auto v = run(TheoremId::SPEC_BC, balogh_clemen_g2(500, 2, 1, 0), {.s = 2});
    CHECK(v.hypothesis == Truth::True);
    CHECK(v.conclusion == Truth::True);
    CHECK(exact_margin(v) == Rational(499 - 480));

    CHECK(run(TheoremId::SPEC_BC, turan(500, 2), {.s = 2}).hypothesis == Truth::False);

    // s = 1 reduces to a bound weaker than NING_ZHAI
    auto one = run(TheoremId::SPEC_BC, kab_plus(251, 249), {.s = 1});
    CHECK(one.hypothesis == Truth::True);
    CHECK(one.conclusion == Truth::True);
    CHECK(run(TheoremId::NING_ZHAI, kab_plus(251, 249)).conclusion == Truth::True);
  }

  TEST_CASE("BN_INEQ")
  {
    auto k34 = run(TheoremId::BN_INEQ, turan(7, 2));
    CHECK(k34.hypothesis == Truth::True);
    CHECK(k34.conclusion == Truth::True);
    CHECK(exact_margin(k34) == Rational(0));
    CHECK(has_note(k34, "equality: complete bipartite"));

    auto k = run(TheoremId::BN_INEQ, k4());
    CHECK(k.conclusion == Truth::True);
    REQUIRE(k.primary_margin() != nullptr);
    CHECK(k.primary_margin()->value.contains(1.0L));

    auto e = run(TheoremId::BN_INEQ, build_graph(4, {}));
    CHECK(e.hypothesis == Truth::False);

    GraphBuilder b(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 7; ++j)
        b.add_edge(i, j);
    auto iso = run(TheoremId::BN_INEQ, b.build());
    CHECK(iso.conclusion == Truth::True);
    CHECK(has_note(iso, "plus isolated vertices"));
  }

  TEST_CASE("BN_INEQ never fails on random graphs")
  {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 300; ++trial) {
      Graph g = oracle::random_graph(4 + static_cast<int>(rng() % 8), 0.5, rng);
      auto v = run(TheoremId::BN_INEQ, g);
      CHECK_FALSE(v.counterexample());
    }
  }

  TEST_CASE("MOON_MOSER and FAR_BIP_SUPERSAT")
  {
    auto mm = run(TheoremId::MOON_MOSER, k4());
    CHECK(mm.conclusion == Truth::True);
    CHECK(exact_margin(mm) == Rational(0));

    auto c = run(TheoremId::FAR_BIP_SUPERSAT, c5());
    CHECK(c.conclusion == Truth::True);
    CHECK(exact_margin(c) == Rational(5, 24));

    auto k5 = run(TheoremId::FAR_BIP_SUPERSAT, turan(5, 5));
    CHECK(k5.conclusion == Truth::True);
    CHECK(exact_margin(k5) == Rational(10) - Rational(155, 24));
    REQUIRE(k5.witness.partition.has_value());
    CHECK(k5.witness.partition->internal() == 4);
  }

  TEST_CASE("TRI_EFFI")
  {
    auto kk = run(TheoremId::TRI_EFFI, turan(20, 2), {.k = Rational(1)});
    CHECK(kk.hypothesis == Truth::True);
    CHECK(kk.conclusion == Truth::True);

    auto y = run(TheoremId::TRI_EFFI, y_n2q(20, 2), {.k = Rational(2)});
    CHECK(y.hypothesis == Truth::True);
    CHECK(y.conclusion == Truth::True);

    CHECK(run(TheoremId::TRI_EFFI, c5(), {.k = Rational(1)}).hypothesis == Truth::False);
  }

  TEST_CASE("DEG_SQ equality on stars")
  {
    GraphBuilder b(8);
    for (int i = 1; i < 6; ++i)
      b.add_edge(0, i);
    auto v = run(TheoremId::DEG_SQ, b.build());
    CHECK(v.conclusion == Truth::True);
    CHECK(exact_margin(v) == Rational(0));
    CHECK(run(TheoremId::DEG_SQ, k4()).conclusion == Truth::True);
  }

  TEST_CASE("WILF, NIKIFOROV_M, NOSAL_NZ")
  {
    for (int r = 2; r <= 5; ++r)
      for (int n : {12, 13}) {
        auto w = run(TheoremId::WILF, turan(n, r), {.r = r});
        CHECK(w.hypothesis == Truth::True);
        CHECK(w.conclusion == Truth::True);
        if (n % r == 0)
          CHECK(exact_margin(w) == Rational(0));
        CHECK(run(TheoremId::NIKIFOROV_M, turan(n, r), {.r = r}).conclusion == Truth::True);
      }
    CHECK(run(TheoremId::WILF, k4(), {.r = 3}).hypothesis == Truth::False);

    auto c = run(TheoremId::NOSAL_NZ, c5());
    CHECK(c.conclusion == Truth::True);
    auto b = run(TheoremId::NOSAL_NZ, book_join(3));
    CHECK(b.conclusion == Truth::True);
  }

  TEST_CASE("BOOK_CONJ equality on books")
  {
    for (int k = 1; k <= 4; ++k) {
      auto v = run(TheoremId::BOOK_CONJ, book_join(k));
      CHECK(v.hypothesis == Truth::True);
      CHECK(v.conclusion == Truth::True);
      CHECK(exact_margin(v) == Rational(0));
    }
    CHECK(run(TheoremId::BOOK_CONJ, turan(6, 2)).hypothesis == Truth::False);
  }

  TEST_CASE("rotation examples")
  {
    Graph p4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    GraphFacts f(p4);
    auto v = check_rotation(f, 1, 2, VertexSet(4, std::vector<int>{3}));
    CHECK(v.hypothesis == Truth::True);
    CHECK(v.conclusion == Truth::True);

    GraphFacts fy(y_n2q(10, 2));
    auto y = check_rotation(fy, 1, 2, VertexSet(10, std::vector<int>{3}));
    CHECK(y.hypothesis == Truth::True);
    CHECK(y.conclusion == Truth::True);

    GraphFacts fc(build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    auto c = check_rotation(fc, 0, 1, VertexSet(4));
    CHECK(has_note(c, "hypothesis-degenerate"));
    CHECK_FALSE(c.counterexample());

    GraphFacts fd(build_graph(5, {{0, 1}, {1, 2}, {3, 4}}));
    CHECK(check_rotation(fd, 1, 2, VertexSet(5)).hypothesis == Truth::False);

    CHECK_THROWS_AS(check_rotation(f, 1, 2, VertexSet(4, std::vector<int>{0})), GraphError);
  }

  TEST_CASE("rotations toward the larger Perron entry raise lambda")
  {
    std::mt19937_64 rng(103);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 40; ++trial) {
      Graph g = oracle::random_graph(9, 0.4, rng);
      if (!is_connected(g))
        continue;
      GraphFacts f(g);
      const auto &x = f.spectrum().perron;
      int u = static_cast<int>(rng() % 9), v = static_cast<int>(rng() % 9);
      if (u == v || x[u] < x[v] + 1e-6)
        continue;
      VertexSet w(9);
      for (int z = 0; z < 9; ++z)
        if (z != u && z != v && g.adjacent(v, z) && !g.adjacent(u, z))
          w.set(z);
      if (w.empty())
        continue;
      auto r = check_rotation(f, u, v, w);
      CHECK(r.hypothesis == Truth::True);
      CHECK(r.conclusion == Truth::True);
      ++done;
    }
    CHECK(done > 10);
  }

  TEST_CASE("EMBED_ORDER, X_MASS, Y_UPPER")
  {
    auto e = check_embed_order(30, 4);
    CHECK(e.hypothesis == Truth::True);
    CHECK(e.conclusion == Truth::True);

    auto x = check_x_mass(40, 3);
    CHECK(x.hypothesis == Truth::True);
    CHECK(x.conclusion == Truth::True);

    for (int q = 1; q <= 3; ++q)
      for (int n : {20, 41, 100}) {
        auto y = check_y_upper(n, q);
        CHECK(y.conclusion == Truth::True);
      }
  }

  TEST_CASE("structural lemmas are vacuous on Y itself")
  {
    GraphFacts f(y_n2q(300, 1));
    auto list = check_structural_lemmas(f, 1);
    CHECK(list.size() == 8);
    for (const auto &v : list) {
      INFO(to_string(v.id));
      CHECK_FALSE(v.counterexample());
      // the star-or-C_4 lemma is gated on lambda >= lambda(T_{n,2,q}), which
      // Y_{n,2,1} = T_{n,2,1} meets
      if (v.id == TheoremId::STAR_OR_C4)
        CHECK(v.conclusion == Truth::True);
      else
        CHECK(v.hypothesis == Truth::False);
    }
  }

  TEST_CASE("no counterexamples on the extremal constructions")
  {
    std::vector<Graph> graphs;
    for (int n : {8, 9, 10, 13})
      for (int q = 1; 2 * q <= (n + 1) / 2; ++q) {
        graphs.push_back(y_n2q(n, q));
        graphs.push_back(t_n2q(n, q));
      }
    for (int r = 2; r <= 4; ++r)
      graphs.push_back(turan(11, r));
    graphs.push_back(kab_plus(6, 4));
    graphs.push_back(book_join(4));
    graphs.push_back(balogh_clemen_g1(20, 3, 2, 0));
    graphs.push_back(balogh_clemen_g2(20, 3, 2, 0));
    graphs.push_back(l_nsalpha(12, 2, BigRational(1, 8)));
    for (const Graph &g : graphs)
      for (TheoremId id : all_theorem_ids()) {
        if (!is_graph_theorem(id))
          continue;
        for (int q = 1; q <= 3; ++q) {
          TheoremParams p{.q = q, .s = q, .r = q + 1, .k = Rational(q)};
          GraphFacts f(g);
          auto v = verify(id, f, p);
          INFO(to_string(id) << " q=" << q << " m=" << g.size());
          CHECK_FALSE(v.counterexample());
        }
      }
  }

  TEST_CASE("unresolved spectral comparisons stay indeterminate")
  {
    // the book sits exactly on its reference root; without the exact
    // fallback the enclosures cannot separate
    VerifyOptions o;
    o.exact_limit = 0;
    o.tol_floor = 1e-6;
    GraphFacts f(book_join(3), o);
    auto v = check_book_conjecture(f);
    CHECK(v.hypothesis == Truth::Indeterminate);
    CHECK(v.indeterminate());
    CHECK_FALSE(v.counterexample());

    GraphFacts w(turan(12, 3), o);
    auto wilf = check_wilf(w, 3);
    CHECK(wilf.conclusion == Truth::Indeterminate);
    CHECK_FALSE(wilf.counterexample());
  }

  TEST_CASE("SPEC_LS_Y implies the SPEC_LS_T conclusion")
  {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 4; ++trial) {
      GraphBuilder b(t_n2q(300, 1));
      int u = static_cast<int>(rng() % 150), v = 150 + static_cast<int>(rng() % 150);
      b.toggle_edge(u, v);
      Graph g = b.build();
      GraphFacts f(g);
      auto y = check_spec_ls_y(f, 1);
      auto t = check_spec_ls_t(f, 1);
      if (t.hypothesis == Truth::True)
        CHECK(y.conclusion == t.conclusion);
    }
  }

  TEST_CASE("theorem id strings")
  {
    for (TheoremId id : all_theorem_ids())
      CHECK(theorem_id_from_string(to_string(id)) == id);
    CHECK_THROWS(theorem_id_from_string("NOPE"));
  }
}
