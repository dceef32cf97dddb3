#include "oracles.hpp"

#include "specls/constructions.hpp"
#include "specls/triangles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace specls;

namespace {

Graph k4() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph c5() { return build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }
Graph bowtie() { return build_graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}); }

} // namespace

TEST_SUITE("triangles")
{
  TEST_CASE("triangle_count examples")
  {
    CHECK(triangle_count(k4()) == 4);
    CHECK(triangle_count(t_n2q(10, 3)) == 15);
    CHECK(triangle_count(kab_plus(6, 4)) == 4);
    CHECK(triangle_count(c5()) == 0);
  }

  TEST_CASE("triangle_count agrees with the triple loop")
  {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10000; ++trial) {
      int n = 1 + static_cast<int>(rng() % 10);
      Graph g = oracle::random_graph(n, (1 + trial % 9) / 10.0, rng);
      REQUIRE(triangle_count(g) == oracle::triangles(g));
    }
  }

  TEST_CASE("per-vertex and per-edge counts")
  {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
      Graph g = oracle::random_graph(12, 0.5, rng);
      std::int64_t t = triangle_count(g);
      auto pv = triangles_per_vertex(g);
      CHECK(std::accumulate(pv.begin(), pv.end(), std::int64_t{0}) == 3 * t);
      std::int64_t pe = 0;
      for (auto &[e, c] : triangles_per_edge(g))
        pe += c;
      CHECK(pe == 3 * t);
      CHECK(static_cast<std::int64_t>(list_triangles(g).size()) == t);
    }
  }

  TEST_CASE("tau3 examples")
  {
    CHECK(tau3(turan(7, 2)).size == 0);
    auto b = tau3(bowtie());
    CHECK(b.size == 1);
    CHECK(b.witness.test(0));
    auto k = tau3(k4());
    CHECK(k.size == 2);
    CHECK(is_triangle_cover(k4(), k.witness));
  }

  TEST_CASE("tau3 agrees with subset search for n <= 8")
  {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 1500; ++trial) {
      int n = 3 + static_cast<int>(rng() % 6);
      Graph g = oracle::random_graph(n, 0.3 + 0.1 * (trial % 6), rng);
      auto c = tau3(g);
      REQUIRE(c.size == oracle::tau3(g));
      CHECK(is_triangle_cover(g, c.witness));
      CHECK(c.witness.count() == c.size);
      CHECK((c.size == 0) == (triangle_count(g) == 0));
    }
  }

  TEST_CASE("tau3 budget")
  {
    CHECK_THROWS_AS(tau3(turan(30, 30), 10), BudgetExceeded);
  }

  TEST_CASE("bipartite_distance examples")
  {
    auto c = bipartite_distance(c5());
    CHECK(c.epsilon == 1);
    CHECK(c.exact);
    CHECK(c.witness.internal() == 1);

    auto k = bipartite_distance(turan(7, 2));
    CHECK(k.epsilon == 0);

    auto k4d = bipartite_distance(k4());
    CHECK(k4d.epsilon == 2);
    CHECK(k4d.witness.S.count() == 2);
  }

  TEST_CASE("bipartite_distance agrees with the subset maxcut")
  {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 1 + static_cast<int>(rng() % 12);
      Graph g = oracle::random_graph(n, 0.5, rng);
      auto d = bipartite_distance(g);
      REQUIRE(d.epsilon == g.size() - oracle::maxcut(g));
      CHECK(d.witness.eS + d.witness.eT + d.witness.eST == g.size());
      CHECK((d.epsilon == 0) == is_bipartite(g).has_value());

      // at most one more edge to delete after removing one
      if (g.size() > 0) {
        auto e = g.edges()[rng() % g.edges().size()];
        GraphBuilder b(g);
        b.remove_edge(e.first, e.second);
        CHECK(bipartite_distance(b.build()).epsilon >= d.epsilon - 1);
      }
    }
  }

  TEST_CASE("heuristic mode is an upper bound")
  {
    std::mt19937_64 rng(59);
    Graph g = oracle::random_graph(14, 0.5, rng);
    auto h = bipartite_distance(g, 4);
    CHECK_FALSE(h.exact);
    CHECK(h.epsilon >= bipartite_distance(g).epsilon);
  }

  TEST_CASE("exact maxcut is independent of worker count")
  {
    std::mt19937_64 rng(61);
    Graph g = oracle::random_graph(18, 0.5, rng);
    auto one = bipartite_distance(g, kExactMaxCutLimit, 1);
    auto four = bipartite_distance(g, kExactMaxCutLimit, 4);
    CHECK(one.epsilon == four.epsilon);
    CHECK(one.witness.S == four.witness.S);
  }

  TEST_CASE("degree_square_sum")
  {
    CHECK(degree_square_sum(k4()) == 36);
    for (int q = 1; q <= 8; ++q) {
      GraphBuilder b(q + 1);
      for (int i = 1; i <= q; ++i)
        b.add_edge(0, i);
      CHECK(degree_square_sum(b.build()) == q * q + q);
    }
    CHECK(degree_square_sum(build_graph(5, {})) == 0);
  }

  TEST_CASE("partition_stats examples")
  {
    VertexSet side(8, std::vector<int>{0, 1, 2, 3});
    auto t = partition_stats(turan(8, 2), side);
    CHECK(t.eS == 0);
    CHECK(t.eT == 0);
    CHECK(t.eST == 16);

    auto y = partition_stats(y_n2q(8, 2), side);
    CHECK(y.eS == 2);
    CHECK(y.eT == 0);
    CHECK(y.eST == 16);

    auto k = partition_stats(k4(), VertexSet(4, std::vector<int>{0, 1}));
    CHECK(k.eS == 1);
    CHECK(k.eT == 1);
    CHECK(k.eST == 4);
  }

  TEST_CASE("intra-part edges yield a triangle cover")
  {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 2 + static_cast<int>(rng() % 10);
      Graph g = oracle::random_graph(n, 0.5, rng);
      VertexSet s(n);
      for (int v = 0; v < n; ++v)
        if (rng() & 1U)
          s.set(v);
      auto p = partition_stats(g, s);
      VertexSet cover = cover_from_partition(g, p);
      CHECK(is_triangle_cover(g, cover));
      CHECK(cover.count() <= p.internal());
      CHECK(tau3(g).size <= p.internal());
    }
  }

  TEST_CASE("find_cut_partition")
  {
    auto p = find_cut_partition(turan(10, 2), 25, 0);
    REQUIRE(p.has_value());
    CHECK(p->eST == 25);
    CHECK_FALSE(find_cut_partition(turan(10, 2), 26, 100).has_value());
  }

  TEST_CASE("multipartite closed form")
  {
    CHECK(multipartite_triangles({3, 3, 3}) == 27);
    CHECK(multipartite_triangles({4, 3}) == 0);
    CHECK(multipartite_triangles({2, 3, 4, 1}) == 2 * 3 * 4 + 2 * 3 * 1 + 2 * 4 * 1 + 3 * 4 * 1);
  }
}
