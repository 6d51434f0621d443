#include "rigidity/graph.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace rigidity;

TEST(Edge, StoresEndpointsInOrder) {
  Edge e{5, 2};
  EXPECT_EQ(e.u, 2u);
  EXPECT_EQ(e.v, 5u);
  EXPECT_EQ(e, (Edge{2, 5}));
  EXPECT_EQ(e.other(2), 5u);
  EXPECT_TRUE(Edge(3, 3).is_loop());
}

TEST(Graph, RejectsLoopsAndForeignVertices) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), Error);
  try {
    g.add_edge(0, 3);
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::BadNeighbors);
  }
}

TEST(Graph, ParallelEdgesCountTwice) {
  Graph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  EXPECT_EQ(g.multiplicity(Edge{0, 1}), 2u);
  EXPECT_FALSE(g.is_simple());
  EXPECT_EQ(g, Graph(2, std::vector<Edge>{{0, 1}, {0, 1}}));
}

TEST(Graph, EqualityIgnoresInsertionOrder) {
  Graph a(3, std::vector<Edge>{{0, 1}, {1, 2}});
  Graph b(3, std::vector<Edge>{{2, 1}, {1, 0}});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, Graph(4, std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Contraction, K4GivesDoubledTriangle) {
  const auto c = contract_edge(complete_graph(4), Edge{0, 1});
  // 01 vanishes; 02/12 and 03/13 become parallel pairs; 23 shifts to 12.
  Graph expected(3, std::vector<Edge>{{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}});
  EXPECT_EQ(c.graph, expected);
  EXPECT_EQ(c.merged, 0u);
  EXPECT_EQ(c.loops_removed, 0u);
  EXPECT_EQ(c.relabel, (std::vector<VertexId>{0, 0, 1, 2}));
}

TEST(Contraction, ExtraCopiesOfTheEdgeBecomeLoops) {
  Graph g(3, std::vector<Edge>{{1, 2}, {1, 2}, {1, 2}, {0, 2}});
  const auto c = contract_edge(g, Edge{1, 2});
  EXPECT_EQ(c.loops_removed, 2u);
  EXPECT_EQ(c.graph, Graph(2, std::vector<Edge>{{0, 1}}));
}

TEST(Contraction, MissingEdgeThrows) {
  try {
    contract_edge(path_graph(4), Edge{0, 2});
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::EdgeNotPresent);
  }
}

TEST(Contraction, EdgeCountDropsByOneOnSimpleGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_henneberg_graph(4 + seed % 6, seed);
    for (const Edge& e : g.edges()) {
      const auto c = contract_edge(g, e);
      EXPECT_EQ(c.graph.vertex_count(), g.vertex_count() - 1);
      EXPECT_EQ(c.graph.edge_count(), g.edge_count() - 1);
    }
  }
}

TEST(Cone, AddsApexToEveryVertex) {
  const Graph c = cone(path_graph(3));
  EXPECT_EQ(c.vertex_count(), 4u);
  EXPECT_EQ(c.edge_count(), 5u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_TRUE(c.has_edge(Edge{v, 3}));
  EXPECT_EQ(cone(complete_graph(3)), complete_graph(4));
}

TEST(DoubleBanana, Counts) {
  const Graph g = double_banana();
  EXPECT_EQ(g.vertex_count(), 8u);
  EXPECT_EQ(g.edge_count(), 18u);
  EXPECT_TRUE(g.is_simple());
  EXPECT_FALSE(g.has_edge(Edge{banana::r1, banana::r2}));
  const auto deg = g.degrees();
  EXPECT_EQ(deg[banana::r1], 6u);
  EXPECT_EQ(deg[banana::a1], 4u);
}

TEST(DoubleBanana, FixturePartitionsCoverTheEdgeSet) {
  for (const auto& f : banana_fixture_partitions()) {
    auto all = concat({f.partition.s1, f.partition.s2, f.partition.s3});
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, double_banana().sorted_edges());
    EXPECT_EQ(f.partition.s1.size(), 7u);
    EXPECT_EQ(f.partition.s2.size(), 6u);
    EXPECT_EQ(f.partition.s3.size(), 5u);
  }
}

TEST(Henneberg, ZeroExtensionAddsThreeEdges) {
  const Graph g = henneberg_0_extend(complete_graph(4), {0, 2, 3});
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 9u);
  EXPECT_TRUE(g.has_edge(Edge{2, 4}));
  EXPECT_THROW(henneberg_0_extend(complete_graph(4), {0, 0, 3}), Error);
  EXPECT_THROW(henneberg_0_extend(complete_graph(4), {0, 1, 9}), Error);
}

TEST(Henneberg, RandomChainsAreSimpleWithThreeNMinusSixEdges) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 4 + seed % 10;
    const Graph g = random_henneberg_graph(n, seed);
    EXPECT_EQ(g.vertex_count(), n);
    EXPECT_EQ(g.edge_count(), 3 * n - 6);
    EXPECT_TRUE(g.is_simple());
    EXPECT_EQ(g, random_henneberg_graph(n, seed));
  }
}

TEST(SpanningTree, AgreesWithDefinitionOnAllEdgeSubsetsOfK4) {
  const auto edges = complete_graph(4).sorted_edges();
  std::size_t trees = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Edge> chosen;
    for (unsigned i = 0; i < 6; ++i)
      if (mask >> i & 1) chosen.push_back(edges[i]);
    // Acyclic with 3 edges on 4 vertices iff no triangle is chosen.
    bool triangle = false;
    for (VertexId skip = 0; skip < 4; ++skip) {
      std::size_t inside = 0;
      for (const Edge& e : chosen) inside += !e.touches(skip);
      triangle = triangle || inside == 3;
    }
    const bool expected = chosen.size() == 3 && !triangle;
    EXPECT_EQ(is_spanning_tree(4, chosen), expected);
    trees += expected;
  }
  EXPECT_EQ(trees, 16u);  // Cayley: 4^(4-2)
}

TEST(GraphText, RoundTripsCanonically) {
  const Graph g = double_banana();
  const std::string text = serialize_graph(g);
  EXPECT_EQ(parse_graph(text), g);
  EXPECT_EQ(serialize_graph(parse_graph(text)), text);
}

TEST(GraphText, CommentsBlankLinesAndParallelEdges) {
  const Graph g = parse_graph("# demo\n3\n\n0 1  # first\n1 0\n 2 1\n");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.multiplicity(Edge{0, 1}), 2u);
  EXPECT_EQ(serialize_graph(g), "3\n0 1\n0 1\n1 2\n");
}

TEST(GraphText, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_graph(text);
    } catch (const ParseError& ex) {
      return ex.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("3\n0 1\n0 3\n"), 3u);
  EXPECT_EQ(line_of("3\n1 1\n"), 2u);
  EXPECT_EQ(line_of("3\n0 x\n"), 2u);
  EXPECT_EQ(line_of("3 4\n"), 1u);
  EXPECT_EQ(line_of("4\n0 1 2\n"), 2u);
  EXPECT_NE(line_of(""), 0u);
  EXPECT_EQ(line_of("2\n-1 0\n"), 2u);
}
