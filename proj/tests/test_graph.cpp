#include <doctest.h>

#include <set>

#include "curvekit/graph.hpp"
#include "curvekit/rng.hpp"
#include "support.hpp"

using namespace curvekit;

namespace {

Graph random_graph(std::size_t n, double density, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("adjacency list parsing") {
    const Graph star = parse_adjacency_list("a:b,c\nb:a\nc:a");
    CHECK(star.size() == 3);
    CHECK(star.edge_count() == 2);
    CHECK(star.adjacent(*star.index_of("a"), *star.index_of("b")));
    CHECK_FALSE(star.adjacent(*star.index_of("b"), *star.index_of("c")));

    const Graph single = parse_adjacency_list("a:\n");
    CHECK(single.size() == 1);
    CHECK(single.edge_count() == 0);

    CHECK_THROWS_AS(parse_adjacency_list("a:b\nb:a,a"), ParseError);
  }

  TEST_CASE("parse errors carry line numbers") {
    try {
      parse_adjacency_list("a:b\n\n: c\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_adjacency_list("a:a"), ParseError);
  }

  TEST_CASE("comments, blanks and JSON input") {
    const Graph g = parse_graph("# triangle\na: b, c  # first\n\nb: c\nc:\n");
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 3);
    const Graph j = parse_graph(R"({"vertices":["x","y","z"],"edges":[["x","y"]]})");
    CHECK(j.size() == 3);
    CHECK(j.edge_count() == 1);
  }

  TEST_CASE("serialization round trips") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Graph g = random_graph(7, 0.4, s);
      CHECK(parse_graph(to_adjacency_list(g)) == g);
      CHECK(parse_graph(to_edge_list_json(g)) == g);
    }
    CHECK(to_dot(testkit::path(2)).find(" -- ") != std::string::npos);
  }

  TEST_CASE("connected components") {
    Graph two = testkit::complete(3);
    for (const char* l : {"x", "y", "z"}) two.add_vertex(l);
    two.add_edge("x", "y");
    two.add_edge("y", "z");
    two.add_edge("x", "z");
    const auto comps = connected_components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].edge_count() == 3);
    CHECK(comps[1].edge_count() == 3);
    CHECK(connected_components(Graph{}).empty());
    CHECK(connected_components(testkit::cycle(5)).size() == 1);
  }

  TEST_CASE("chordality examples") {
    CHECK(is_chordal(testkit::complete(3)).chordal);
    CHECK(is_chordal(testkit::path(4)).chordal);
    const auto c4 = is_chordal(testkit::cycle(4));
    CHECK_FALSE(c4.chordal);
    REQUIRE(c4.witness);
    CHECK(c4.witness->vertices.size() == 4);
    CHECK(verify_witness(testkit::cycle(4), *c4.witness));
  }

  TEST_CASE("outerplanarity examples") {
    const auto k4 = is_outerplanar(testkit::complete(4));
    CHECK_FALSE(k4.outerplanar);
    REQUIRE(k4.witness);
    CHECK(k4.witness->minor == ForbiddenWitness::Minor::K4);

    Graph k23;
    for (const char* l : {"a", "b", "x", "y", "z"}) k23.add_vertex(l);
    for (const char* u : {"a", "b"})
      for (const char* v : {"x", "y", "z"}) k23.add_edge(u, v);
    const auto r = is_outerplanar(k23);
    CHECK_FALSE(r.outerplanar);
    REQUIRE(r.witness);
    CHECK(r.witness->minor == ForbiddenWitness::Minor::K23);
    CHECK(verify_witness(k23, *r.witness));

    CHECK(is_outerplanar(testkit::cycle(6)).outerplanar);
  }

  TEST_CASE("chordal and outerplanar agree with brute force on every graph up to 6 vertices") {
    const auto graphs = testkit::all_small_graphs(6);
    CHECK(graphs.size() == 208);
    for (const auto& g : graphs) {
      const auto c = is_chordal(g);
      CHECK(c.chordal == testkit::brute_chordal(g));
      if (!c.chordal) {
        REQUIRE(c.witness);
        CHECK(verify_witness(g, *c.witness));
      }
      const auto o = is_outerplanar(g);
      CHECK(o.outerplanar == testkit::brute_outerplanar(g));
      if (!o.outerplanar) {
        REQUIRE(o.witness);
        CHECK(verify_witness(g, *o.witness));
      }
    }
  }

  TEST_CASE("perfect elimination order is valid") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const Graph g = random_graph(8, 0.5, s);
      const auto r = is_chordal(g);
      if (!r.chordal) continue;
      REQUIRE(r.elimination_order.size() == g.size());
      std::vector<std::size_t> rank(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) rank[r.elimination_order[i]] = i;
      for (auto v : r.elimination_order) {
        std::vector<std::size_t> later;
        for (auto u : g.neighbors(v))
          if (rank[u] > rank[v]) later.push_back(u);
        for (std::size_t a = 0; a < later.size(); ++a)
          for (std::size_t b = a + 1; b < later.size(); ++b) CHECK(g.adjacent(later[a], later[b]));
      }
    }
  }

  TEST_CASE("clique cover examples") {
    CHECK(clique_cover(testkit::complete(3)).size() == 1);
    const auto c4 = clique_cover(testkit::cycle(4));
    CHECK(c4.size() == 2);
    CHECK(clique_cover(testkit::cycle(5)).size() == 3);
  }

  TEST_CASE("clique cover is a partition into cliques and minimum up to 12 vertices") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const std::size_t n = 3 + s % 10;
      const Graph g = random_graph(n, 0.3 + 0.05 * static_cast<double>(s % 9), s * 31 + 7);
      const auto cover = clique_cover(g);
      std::vector<int> hits(n, 0);
      for (const auto& part : cover.parts) {
        for (auto v : part) ++hits[v];
        for (std::size_t a = 0; a < part.size(); ++a)
          for (std::size_t b = a + 1; b < part.size(); ++b) CHECK(g.adjacent(part[a], part[b]));
      }
      for (int h : hits) CHECK(h == 1);
      CHECK(cover.exact);
      CHECK(cover.size() == testkit::brute_clique_cover(g));
    }
  }

  TEST_CASE("maximum clique matches brute force") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const Graph g = random_graph(9, 0.5, s + 1000);
      std::size_t best = 0;
      for (std::uint32_t m = 0; m < (1u << g.size()); ++m) {
        bool ok = true;
        for (std::size_t a = 0; a < g.size() && ok; ++a)
          for (std::size_t b = a + 1; b < g.size() && ok; ++b)
            if ((m >> a & 1u) && (m >> b & 1u) && !g.adjacent(a, b)) ok = false;
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(m)));
      }
      CHECK(maximum_clique(g).size() == best);
    }
  }

  TEST_CASE("induced match examples") {
    const Graph p3 = testkit::path(3), c4 = testkit::cycle(4);
    const auto m = induced_match(p3, c4);
    REQUIRE(m);
    CHECK(is_induced_embedding(p3, c4, *m));
    CHECK_FALSE(induced_match(testkit::complete(3), c4));
    const Graph g = testkit::cycle(5);
    const auto id = induced_match(g, g);
    REQUIRE(id);
    CHECK(is_induced_embedding(g, g, *id));
  }

  TEST_CASE("induced match agrees with brute force") {
    for (std::uint64_t s = 0; s < 80; ++s) {
      const Graph pattern = random_graph(3 + s % 3, 0.5, s);
      const Graph host = random_graph(7, 0.45, s + 500);
      const auto m = induced_match(pattern, host);
      CHECK(m.has_value() == testkit::brute_induced_exists(pattern, host));
      if (m) CHECK(is_induced_embedding(pattern, host, *m));
    }
  }

  TEST_CASE("witness JSON") {
    const auto w = is_chordal(testkit::cycle(4)).witness;
    REQUIRE(w);
    const std::string json = witness_to_json(*w);
    CHECK(json.find("\"kind\":\"chordless-cycle\"") != std::string::npos);
    CHECK(json.find("\"vertices\"") != std::string::npos);
  }
}
