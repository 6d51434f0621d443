#include "rigidity/graph.hpp"
#include "rigidity/rigidity.hpp"

#include <gtest/gtest.h>

using namespace rigidity;

TEST(RigidityMatrix, EntriesAreCoordinateDifferences) {
  Realization p(3, 2);
  p.at(0, 0) = 0, p.at(0, 1) = 0;
  p.at(1, 0) = 3, p.at(1, 1) = 1;
  p.at(2, 0) = 1, p.at(2, 1) = 5;
  const auto r = rigidity_matrix(path_graph(3), p);
  // Column (v, i) at i * n + v.
  const ExactMatrix expected{{-3, 3, 0, -1, 1, 0}, {0, 2, -2, 0, -4, 4}};
  EXPECT_EQ(r.matrix, expected);
  EXPECT_EQ(r.column(2, 1), 5u);
}

TEST(RigidityMatrix, MissingCoordinates) {
  try {
    rigidity_matrix(complete_graph(3), Realization(2, 2));
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::MissingCoordinates);
  }
}

TEST(RigidityMatrix, TranslationLeavesItUnchanged) {
  const Graph g = complete_graph(4);
  const Realization p = sample_generic(g, 3, 5);
  const std::vector<Rational> offset{7, -2, Rational(1, 3)};
  EXPECT_EQ(rigidity_matrix(g, p).matrix, rigidity_matrix(g, p.translated(offset)).matrix);
}

TEST(IsRigid, CompleteGraphs) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto v = is_rigid(complete_graph(n), d, n);
      EXPECT_TRUE(v.rigid) << "K" << n << " d=" << d;
      EXPECT_EQ(v.rank, rigid_rank(n, d));
    }
  }
}

TEST(IsRigid, K4In3DHasFullRank) {
  const auto v = is_rigid(complete_graph(4), 3, 0);
  EXPECT_TRUE(v.rigid);
  EXPECT_EQ(v.rank, 6u);
  EXPECT_EQ(v.target, 6u);
  ASSERT_TRUE(v.certificate.has_value());
  EXPECT_EQ(rank_exact(rigidity_matrix(complete_graph(4), *v.certificate).matrix), 6u);
}

TEST(IsRigid, DoubleBananaStopsOneShort) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto v = is_rigid(double_banana(), 3, seed);
    EXPECT_FALSE(v.rigid);
    EXPECT_EQ(v.rank, 17u);
    EXPECT_EQ(v.target, 18u);
    EXPECT_FALSE(v.exact_negative);
    EXPECT_LT(v.log2_failure_bound, -39.0);
  }
}

TEST(IsRigid, TooFewEdgesIsAnExactNo) {
  const auto v = is_rigid(path_graph(4), 2, 0);
  EXPECT_FALSE(v.rigid);
  EXPECT_TRUE(v.exact_negative);
  EXPECT_TRUE(is_rigid(complete_graph(3), 3, 0).rigid);
  EXPECT_TRUE(is_rigid(Graph(3, std::vector<Edge>{{0, 1}, {1, 2}}), 3, 0).exact_negative);
}

TEST(IsRigid, Laman2DExamples) {
  // Triangular prism is rigid in the plane; K_{3,3} drawn generically is too.
  Graph prism(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
  EXPECT_TRUE(is_minimally_rigid(prism, 2, 0).minimal);
  Graph k33(6);
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 3; b < 6; ++b) k33.add_edge(a, b);
  EXPECT_TRUE(is_minimally_rigid(k33, 2, 0).minimal);
  // Two triangles sharing a vertex, plus one edge: flexible despite 7 edges.
  Graph bowtie(5, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {0, 1}});
  EXPECT_FALSE(is_rigid(bowtie, 2, 0).rigid);
}

TEST(IsRigid, HennebergGraphsAreMinimallyRigidIn3D) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto v = is_minimally_rigid(random_henneberg_graph(5 + seed, seed), 3, seed);
    EXPECT_TRUE(v.minimal);
  }
  EXPECT_FALSE(is_minimally_rigid(complete_graph(5), 3, 0).minimal);
  EXPECT_TRUE(is_minimally_rigid(complete_graph(5), 3, 0).rigidity.rigid);
}

TEST(IsRigid, DeterministicPerSeed) {
  const auto a = is_rigid(double_banana(), 3, 42);
  const auto b = is_rigid(double_banana(), 3, 42);
  EXPECT_EQ(a.rank, b.rank);
  EXPECT_EQ(sample_generic(double_banana(), 3, 42), sample_generic(double_banana(), 3, 42));
  EXPECT_NE(sample_generic(double_banana(), 3, 42), sample_generic(double_banana(), 3, 43));
}

TEST(SampleGeneric, RespectsBound) {
  const Realization p = sample_generic(complete_graph(6), 3, 1, 4);
  for (VertexId v = 0; v < 6; ++v)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(p.at(v, i), 4);
      EXPECT_GE(p.at(v, i), -4);
    }
}

TEST(Normalized, FrameAndReducedMatrixShape) {
  const Graph g = random_henneberg_graph(7, 3);
  const Edge e = g.sorted_edges()[4];
  const VertexId z = default_pin(e);
  EXPECT_FALSE(e.touches(z));
  const auto p = sample_normalized(g, e, z, 9);
  EXPECT_EQ(p.y, e.u);
  EXPECT_EQ(p.x, e.v);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p.base.at(z, i), 0);
  EXPECT_EQ(p.base.at(p.x, 0) - p.base.at(p.y, 0), p.lambda);
  EXPECT_NE(p.lambda, 0);
  EXPECT_EQ(p.base.at(p.x, 1), p.base.at(p.y, 1));
  EXPECT_EQ(p.base.at(p.x, 2), p.base.at(p.y, 2));

  const auto r = reduced_matrix(g.vertex_count(), g.edges(), p);
  const std::size_t n = g.vertex_count();
  EXPECT_EQ(r.matrix.rows(), 3 * n - 6);
  EXPECT_EQ(r.matrix.cols(), 3 * n - 6);
  EXPECT_EQ(r.block[0].size(), n - 1);
  EXPECT_EQ(r.block[1].size(), n - 2);
  EXPECT_EQ(r.block[2].size(), n - 3);
  EXPECT_EQ(rank_exact(r.matrix), 3 * n - 6);
  const auto row = static_cast<std::size_t>(std::find(g.edges().begin(), g.edges().end(), e) - g.edges().begin());
  for (std::size_t c : r.block[1]) EXPECT_EQ(r.matrix(row, c), 0);
  for (std::size_t c : r.block[2]) EXPECT_EQ(r.matrix(row, c), 0);
}

TEST(Normalized, MergedColumnsEqualSumsOfRigidityColumns) {
  const Graph g = complete_graph(5);
  Graph h(5);
  for (const Edge& f : g.edges())
    if (f != Edge{3, 4}) h.add_edge(f);  // K5 minus an edge, 9 edges
  const Edge e{1, 2};
  const auto p = sample_normalized(h, e, default_pin(e), 0);
  const auto full = rigidity_matrix(h, p.base);
  const auto red = reduced_matrix(5, h.edges(), p);
  for (std::size_t k = 0; k < h.edge_count(); ++k) {
    for (std::size_t c = 0; c < red.columns.size(); ++c) {
      const auto [v, i] = red.columns[c];
      Rational expected = full.matrix(k, full.column(v, i));
      if (i > 0 && v == p.y) expected += full.matrix(k, full.column(p.x, i));
      EXPECT_EQ(red.matrix(k, c), expected);
    }
  }
}

TEST(Normalized, FlexibleGraphsExhaustResamples) {
  try {
    sample_normalized(double_banana(), Edge{0, 2}, 1, 0);
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::DegenerateSample);
  }
  EXPECT_THROW(sample_normalized(complete_graph(4), Edge{0, 1}, 1, 0), Error);
}
