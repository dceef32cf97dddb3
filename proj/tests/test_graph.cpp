#include "oracles.hpp"

#include "specls/constructions.hpp"
#include "specls/graph.hpp"
#include "specls/graph6.hpp"

#include <doctest.h>

#include <random>

using namespace specls;

namespace {

Graph k4() { return build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Graph c5() { return build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

void check_invariants(const Graph &g)
{
  std::int64_t bits = 0;
  for (int i = 0; i < g.order(); ++i) {
    CHECK_FALSE(g.adjacent(i, i));
    for (int j = 0; j < g.order(); ++j) {
      CHECK(g.adjacent(i, j) == g.adjacent(j, i));
      bits += g.adjacent(i, j);
    }
  }
  CHECK(bits == 2 * g.size());
}

} // namespace

TEST_SUITE("graph")
{
  TEST_CASE("build_graph examples")
  {
    Graph k = k4();
    CHECK(k.order() == 4);
    CHECK(edge_count(k) == 6);
    CHECK(degree(k, 0) == 3);

    Graph e = build_graph(3, {});
    CHECK(e.size() == 0);

    Graph c = c5();
    for (int v = 0; v < 5; ++v)
      CHECK(degree(c, v) == 2);
    check_invariants(c);
  }

  TEST_CASE("duplicates collapse")
  {
    Graph g = build_graph(3, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(g.size() == 1);
  }

  TEST_CASE("construction errors")
  {
    CHECK_THROWS_AS(build_graph(3, {{0, 3}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{1, 1}}), GraphError);
    CHECK_THROWS_AS(build_graph(3, {{-1, 1}}), GraphError);
    CHECK_THROWS_AS(GraphBuilder(kMaxVertices + 1), GraphError);
  }

  TEST_CASE("T_{7,2} degrees")
  {
    auto d = degree_sequence(turan(7, 2));
    CHECK(std::count(d.begin(), d.end(), 3) == 4);
    CHECK(std::count(d.begin(), d.end(), 4) == 3);
  }

  TEST_CASE("delete_vertex, induced, complement")
  {
    Graph k3 = delete_vertex(k4(), 0);
    CHECK(k3.order() == 3);
    CHECK(k3.size() == 3);

    Graph full = complement(build_graph(4, {}));
    CHECK(full == k4());

    VertexSet s(5, std::vector<int>{0, 1, 2});
    Graph p3 = induced(c5(), s);
    CHECK(p3.order() == 3);
    CHECK(p3.size() == 2);
    CHECK(p3.adjacent(0, 1));
    CHECK(p3.adjacent(1, 2));
    CHECK_FALSE(p3.adjacent(0, 2));
  }

  TEST_CASE("bipartite and connected")
  {
    CHECK_FALSE(is_bipartite(c5()).has_value());
    CHECK(is_connected(c5()));

    auto w = is_bipartite(turan(7, 2));
    REQUIRE(w.has_value());
    CHECK(std::min(w->S.count(), w->T.count()) == 3);
    CHECK(std::max(w->S.count(), w->T.count()) == 4);
    CHECK(w->eS == 0);
    CHECK(w->eT == 0);
    CHECK(w->eST == 12);

    auto e = is_bipartite(build_graph(5, {}));
    REQUIRE(e.has_value());
    CHECK(e->S.count() + e->T.count() == 5);
    CHECK_FALSE(is_connected(build_graph(5, {})));
    CHECK(components(build_graph(5, {{0, 1}, {2, 3}})).size() == 3);
  }

  TEST_CASE("complete bipartite up to isolated vertices")
  {
    CHECK(is_complete_bipartite_up_to_isolated(turan(7, 2)));
    GraphBuilder b(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 3; j < 7; ++j)
        b.add_edge(i, j);
    CHECK(is_complete_bipartite_up_to_isolated(b.build()));
    CHECK(isolated_vertex_count(b.build()) == 2);
    CHECK_FALSE(is_complete_bipartite_up_to_isolated(c5()));
    CHECK_FALSE(is_complete_bipartite_up_to_isolated(build_graph(4, {{0, 1}, {1, 2}, {2, 3}})));
  }

  TEST_CASE("random graph properties")
  {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 1 + static_cast<int>(rng() % 16);
      Graph g = oracle::random_graph(n, 0.1 + 0.8 * (trial % 10) / 10.0, rng);
      check_invariants(g);
      CHECK(complement(complement(g)) == g);
      CHECK(complement(g).size() == n * (n - 1) / 2 - g.size());

      std::int64_t sum = 0;
      for (int v = 0; v < n; ++v)
        sum += degree(g, v);
      CHECK(sum == 2 * g.size());

      int v = static_cast<int>(rng() % n);
      CHECK(delete_vertex(g, v).size() == g.size() - degree(g, v));

      for (int k = 1; k <= 5; ++k)
        CHECK(contains_clique(g, k) == oracle::has_clique(g, k));

      bool bip = is_bipartite(g).has_value();
      CHECK(bip == (oracle::maxcut(g) == g.size()));
    }
  }

  TEST_CASE("VertexSet members stay in range")
  {
    VertexSet s(70, std::vector<int>{0, 63, 64, 69});
    CHECK(s.count() == 4);
    CHECK(s.members() == std::vector<int>{0, 63, 64, 69});
    VertexSet c = s.complement();
    CHECK(c.count() == 66);
    CHECK_FALSE(c.test(69));
    CHECK((s & c).empty());
  }
}

TEST_SUITE("graph6")
{
  TEST_CASE("known strings")
  {
    CHECK(emit_graph6(k4()) == "C~");
    CHECK(parse_graph6("C~") == k4());
    CHECK(emit_graph6(build_graph(0, {})) == "?");
    CHECK(parse_graph6("Bw") == build_graph(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(emit_graph6(c5()) == "Dhc");
  }

  TEST_CASE("round trip")
  {
    std::mt19937_64 rng(11);
    for (int n : {0, 1, 2, 5, 13, 62, 63, 64, 100, 300}) {
      Graph g = oracle::random_graph(n, 0.3, rng);
      std::string text = emit_graph6(g);
      CHECK(parse_graph6(text) == g);
      CHECK(emit_graph6(parse_graph6(text)) == text);
    }
  }

  TEST_CASE("long header for n >= 63")
  {
    std::string text = emit_graph6(build_graph(63, {}));
    CHECK(text[0] == '~');
    CHECK(parse_graph6(text).order() == 63);
  }

  TEST_CASE("malformed input reports the byte offset")
  {
    CHECK_THROWS_AS(parse_graph6(""), Graph6Error);
    CHECK_THROWS_AS(parse_graph6("D?{x"), Graph6Error);
    CHECK_THROWS_AS(parse_graph6("C"), Graph6Error);
    try {
      parse_graph6("D?\x01");
      FAIL("expected Graph6Error");
    } catch (const Graph6Error &e) {
      CHECK(e.offset() == 2);
    }
  }
}
