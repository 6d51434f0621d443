#pragma once

// Constructive edge tripartition for minimally 3-rigid graphs.
//
// Both steps work on the reduced matrix M of a normalized realization (see
// reduced_matrix): coordinate 1 with z dropped, coordinates 2 and 3 with x
// merged into y and z (and, in coordinate 3, y) dropped.
//
//  * Spanning-tree step: Laplace-split M along the coordinate-1 block. The
//    rows that land there form a spanning tree F through e; the rest,
//    contracted along e, is planar rigid.
//  * Split step: order rows F - e, e, E - F; eliminate F - e on the
//    coordinate-2 block (a Schur complement Y) and Laplace-split Y between
//    coordinates 1 and 3. e lands with coordinate 1; the other rows there
//    form R1 and the remaining ones R2.
//
// (S1, S2, S3) = (F, R1, R2). Every conclusion is confirmed with the (2,3)
// pebble game before it is returned.

#include "rigidity/exact_linalg.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/rigidity.hpp"
#include "rigidity/sparsity.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace rigidity {

struct TreeSplit {
  std::vector<Edge> r1;
  std::vector<Edge> r2;
};

/// Intermediate matrices of the split step, kept for inspection.
struct EliminationWorkspace {
  std::vector<Edge> rows;  // F - e ascending, e, then E - F ascending
  std::size_t tree_rows = 0;
  ExactMatrix x;
  ExactMatrix x11, x12, x13, x21, x22, x23;
  ExactMatrix lower_left;  // X21 - X21 X11^-1 X11, zero by construction
  ExactMatrix y;           // [Y1 Y2], first row is e
  std::size_t y1_cols = 0;
};

/// Intermediate matrices of the spanning-tree step.
struct TreeWorkspace {
  std::vector<Edge> rows;  // e first, then the remaining edges ascending
  ExactMatrix z;
  std::vector<std::size_t> tree_block;
  std::vector<std::size_t> split_rows;
};

namespace detail {

inline std::vector<std::size_t> iota_indices(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out(end - begin);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

inline std::vector<Edge> sorted_difference(std::vector<Edge> all, std::vector<Edge> remove) {
  std::sort(all.begin(), all.end());
  std::sort(remove.begin(), remove.end());
  std::vector<Edge> out;
  std::set_difference(all.begin(), all.end(), remove.begin(), remove.end(), std::back_inserter(out));
  return out;
}

// Positions (in the kept-column list) of the columns of one coordinate.
struct ColumnBlocks {
  std::vector<std::size_t> kept;  // indices into R(G, p)
  std::array<std::vector<std::size_t>, 3> block;
};

inline ColumnBlocks column_blocks(std::size_t n, std::vector<std::size_t> deleted) {
  std::sort(deleted.begin(), deleted.end());
  ColumnBlocks cb;
  cb.kept = complement(deleted, 3 * n);
  for (std::size_t pos = 0; pos < cb.kept.size(); ++pos) cb.block[cb.kept[pos] / n].push_back(pos);
  return cb;
}

inline ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline void require_minimally_rigid(const Graph& g, std::uint64_t seed) {
  if (g.vertex_count() < 4) throw Error(ErrorCode::NotMinimallyRigid, "need at least 4 vertices");
  if (!g.is_simple()) throw Error(ErrorCode::NotMinimallyRigid, "graph has parallel edges");
  const auto verdict = is_minimally_rigid(g, 3, seed);
  if (!verdict.minimal) {
    throw Error(ErrorCode::NotMinimallyRigid, "rank " + std::to_string(verdict.rigidity.rank) + " of " +
                                                  std::to_string(verdict.rigidity.target) + " with " +
                                                  std::to_string(g.edge_count()) + " edges");
  }
}

inline void require_edge(const Graph& g, Edge e) {
  if (e.is_loop() || e.v >= g.vertex_count() || !g.has_edge(e)) {
    throw Error(ErrorCode::EdgeNotPresent, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
}

}  // namespace detail

/// Spanning-tree step on a fixed normalized realization. Returns F sorted.
inline std::vector<Edge> partition_tree(const Graph& g, Edge e, const NormalizedRealization& p,
                                              TreeWorkspace* workspace = nullptr) {
  const std::size_t n = g.vertex_count();
  TreeWorkspace ws;
  ws.rows.push_back(e);
  for (const Edge& f : detail::sorted_difference(g.sorted_edges(), {e})) ws.rows.push_back(f);

  auto r = reduced_matrix(n, ws.rows, p);
  ws.z = std::move(r.matrix);
  detail::ensure(ws.z.square(), "reduced matrix is not square");
  detail::ensure(det_exact(ws.z) != 0, "reduced matrix is singular");

  ws.tree_block = r.block[0];
  ws.split_rows = laplace_split(ws.z, ws.tree_block);
  const auto& s = ws.split_rows;
  detail::ensure(std::binary_search(s.begin(), s.end(), std::size_t{0}), "edge row missing from the split");

  std::vector<Edge> tree;
  for (std::size_t i : s) tree.push_back(ws.rows[i]);
  std::sort(tree.begin(), tree.end());
  detail::ensure(is_spanning_tree(n, tree), "split rows do not form a spanning tree");

  auto rest = detail::sorted_difference(g.sorted_edges(), tree);
  rest.push_back(e);
  detail::ensure(is_minimally_2_rigid_combinatorial(contract_subgraph(n, rest, e)),
                 "contracted complement is not (2,3)-tight");
  if (workspace) *workspace = std::move(ws);
  return tree;
}

/// Samples its own normalized realization from `seed`.
inline std::vector<Edge> partition_tree(const Graph& g, Edge e, std::uint64_t seed) {
  detail::require_edge(g, e);
  detail::require_minimally_rigid(g, seed);
  const auto p = sample_normalized(g, e, default_pin(e), seed);
  return partition_tree(g, e, p);
}

/// Split step on a fixed normalized realization.
inline TreeSplit partition_split(const Graph& g, const std::vector<Edge>& tree, Edge e,
                                    const NormalizedRealization& p, EliminationWorkspace* workspace = nullptr) {
  const std::size_t n = g.vertex_count();
  EliminationWorkspace ws;
  std::vector<Edge> f = tree;
  std::sort(f.begin(), f.end());
  const auto others = detail::sorted_difference(g.sorted_edges(), f);
  ws.rows = detail::sorted_difference(f, {e});
  ws.tree_rows = ws.rows.size();
  ws.rows.push_back(e);
  ws.rows.insert(ws.rows.end(), others.begin(), others.end());

  const auto r = reduced_matrix(n, ws.rows, p);
  ws.x = r.matrix;
  detail::ensure(ws.x.square(), "reduced matrix is not square");
  detail::ensure(det_exact(ws.x) != 0, "reduced matrix is singular");

  const auto top = detail::iota_indices(0, ws.tree_rows);
  const auto bottom = detail::iota_indices(ws.tree_rows, ws.rows.size());
  ws.x11 = ws.x.submatrix(top, r.block[1]);
  ws.x12 = ws.x.submatrix(top, r.block[0]);
  ws.x13 = ws.x.submatrix(top, r.block[2]);
  ws.x21 = ws.x.submatrix(bottom, r.block[1]);
  ws.x22 = ws.x.submatrix(bottom, r.block[0]);
  ws.x23 = ws.x.submatrix(bottom, r.block[2]);

  ExactMatrix x11_inv;
  try {
    x11_inv = invert_exact(ws.x11);
  } catch (const Error&) {
    throw Error(ErrorCode::InternalAssertionFailed, "tree block X11 is singular");
  }
  const ExactMatrix w = ws.x21 * x11_inv;
  ws.lower_left = ws.x21 - w * ws.x11;
  const ExactMatrix y1 = ws.x22 - w * ws.x12;
  const ExactMatrix y2 = ws.x23 - w * ws.x13;
  ws.y = detail::hstack(y1, y2);
  ws.y1_cols = y1.cols();
  detail::ensure(ws.lower_left.is_zero(), "block elimination left a nonzero lower-left block");
  detail::ensure(ws.y.square() && det_exact(ws.y) != 0, "Schur complement is singular");

  // Row 0 of Y is e, which is zero on the Y2 columns.
  const auto t_idx = laplace_split(ws.y, detail::iota_indices(0, ws.y1_cols));
  detail::ensure(!t_idx.empty() && t_idx.front() == 0, "edge row missing from the split");
  TreeSplit split;
  for (std::size_t i : t_idx)
    if (i != 0) split.r1.push_back(others[i - 1]);
  for (std::size_t i : complement(t_idx, ws.y.rows())) split.r2.push_back(others[i - 1]);

  detail::ensure(split.r1.size() == n - 2 && split.r2.size() == n - 3, "split sizes are off");
  detail::ensure(is_minimally_2_rigid_combinatorial(Graph(n, concat({f, split.r1}))),
                 "(V, F + R1) is not (2,3)-tight");
  detail::ensure(is_minimally_2_rigid_combinatorial(contract_subgraph(n, concat({f, split.r2}), e)),
                 "(V, F + R2)/e is not (2,3)-tight");
  if (workspace) *workspace = std::move(ws);
  return split;
}

/// Checks that `tree` is a spanning tree of g through e, then samples its own
/// normalized realization from `seed`.
inline TreeSplit partition_split(const Graph& g, const std::vector<Edge>& tree, Edge e, std::uint64_t seed) {
  detail::require_edge(g, e);
  detail::require_minimally_rigid(g, seed);
  const bool in_graph = std::all_of(tree.begin(), tree.end(), [&](const Edge& f) { return g.has_edge(f); });
  if (!in_graph || !is_spanning_tree(g.vertex_count(), tree) ||
      std::find(tree.begin(), tree.end(), e) == tree.end()) {
    throw Error(ErrorCode::NotSpanningTree, "F must be a spanning tree of G containing e");
  }
  const auto p = sample_normalized(g, e, default_pin(e), seed);
  return partition_split(g, tree, e, p);
}

/// Outcome of checking the three tripartition conditions.
struct PartitionReport {
  std::array<std::size_t, 3> sizes{};
  bool sizes_ok = false;        // |S_i| = |V| - i
  bool contains_edge = false;   // e in S1
  bool s1s2_ok = false;         // (V, S1 + S2) minimally 2-rigid
  bool s1s3_ok = false;         // (V, S1 + S3)/e minimally 2-rigid
  bool s2s3e_ok = false;        // (V, S2 + S3 + e)/e minimally 2-rigid

  bool rigidity_ok() const { return s1s2_ok && s1s3_ok && s2s3e_ok; }
  bool ok() const { return sizes_ok && contains_edge && rigidity_ok(); }
};

/// Purely combinatorial check of a tripartition of E(g) for edge e.
/// Throws NotAPartition unless s1, s2, s3 together are exactly E(g).
inline PartitionReport verify_partition(const Graph& g, Edge e, const EdgePartition& part) {
  auto all = concat({part.s1, part.s2, part.s3});
  std::sort(all.begin(), all.end());
  if (all != g.sorted_edges()) throw Error(ErrorCode::NotAPartition, "parts do not partition the edge set");

  const std::size_t n = g.vertex_count();
  PartitionReport report;
  report.sizes = {part.s1.size(), part.s2.size(), part.s3.size()};
  report.sizes_ok = n >= 3 && report.sizes[0] == n - 1 && report.sizes[1] == n - 2 && report.sizes[2] == n - 3;
  report.contains_edge = std::find(part.s1.begin(), part.s1.end(), e) != part.s1.end();

  report.s1s2_ok = is_minimally_2_rigid_combinatorial(Graph(n, concat({part.s1, part.s2})));
  if (report.contains_edge) {
    report.s1s3_ok = is_minimally_2_rigid_combinatorial(contract_subgraph(n, concat({part.s1, part.s3}), e));
    auto rest = concat({part.s2, part.s3});
    rest.push_back(e);
    report.s2s3e_ok = is_minimally_2_rigid_combinatorial(contract_subgraph(n, rest, e));
  }
  return report;
}

/// Builds (S1, S2, S3) = (F, R1, R2) from one normalized realization sampled
/// from `seed`. Throws NotMinimallyRigid when g fails the exact rigidity
/// test, EdgeNotPresent for a foreign edge and DegenerateSample if no usable
/// realization turns up.
inline EdgePartition partition_for_edge(const Graph& g, Edge e, std::uint64_t seed) {
  detail::require_edge(g, e);
  detail::require_minimally_rigid(g, seed);
  const auto p = sample_normalized(g, e, default_pin(e), seed);
  const auto tree = partition_tree(g, e, p);
  const auto split = partition_split(g, tree, e, p);

  EdgePartition part{tree, split.r1, split.r2};
  part.normalize();
  const std::size_t n = g.vertex_count();
  detail::ensure(part.s1.size() + part.s2.size() == 2 * n - 3, "|S1 + S2| != 2|V| - 3");
  detail::ensure(part.s1.size() + part.s3.size() == 2 * n - 4, "|S1 + S3| != 2|V| - 4");
  detail::ensure(part.s2.size() + part.s3.size() + 1 == 2 * n - 4, "|S2 + S3 + e| != 2|V| - 4");
  detail::ensure(verify_partition(g, e, part).ok(), "constructed partition fails verification");
  return part;
}

}  // namespace rigidity
