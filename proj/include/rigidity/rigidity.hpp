#pragma once

#include "rigidity/exact_linalg.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/random.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rigidity {

inline constexpr std::int64_t kDefaultCoordBound = std::int64_t{1} << 20;
inline constexpr std::size_t kDefaultTrials = 3;
inline constexpr std::size_t kMaxResamples = 16;

/// Point assignment V -> Q^d, stored vertex-major.
class Realization {
 public:
  Realization() = default;
  Realization(std::size_t vertices, std::size_t dim) : n_(vertices), d_(dim), coords_(vertices * dim) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t dim() const { return d_; }

  Rational& at(VertexId v, std::size_t i) { return coords_[v * d_ + i]; }
  const Rational& at(VertexId v, std::size_t i) const { return coords_[v * d_ + i]; }

  /// Adds `offset` to every point.
  Realization translated(std::span<const Rational> offset) const {
    Realization out = *this;
    for (std::size_t v = 0; v < n_; ++v)
      for (std::size_t i = 0; i < d_; ++i) out.coords_[v * d_ + i] += offset[i];
    return out;
  }

  friend bool operator==(const Realization&, const Realization&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<Rational> coords_;
};

/// Three-dimensional realization with p(z) = 0 and p(x) - p(y) = (lambda, 0, 0).
struct NormalizedRealization {
  Realization base;
  VertexId x{};
  VertexId y{};
  VertexId z{};
  Rational lambda;
};

/// Rigidity matrix with its row and column labels. Column (v, i) sits at
/// index i * n + v, so columns are ordered by coordinate first, then vertex.
struct RigidityMatrix {
  ExactMatrix matrix;
  std::vector<Edge> rows;
  std::size_t vertices = 0;
  std::size_t dim = 0;

  std::size_t column(VertexId v, std::size_t coord) const { return coord * vertices + v; }
};

/// Builds R(G, p) with one row per entry of `rows`, in that order.
inline RigidityMatrix rigidity_matrix(std::size_t n, std::span<const Edge> rows, const Realization& p) {
  if (p.vertex_count() < n) throw Error(ErrorCode::MissingCoordinates, "realization does not cover every vertex");
  const std::size_t d = p.dim();
  RigidityMatrix r{ExactMatrix(rows.size(), d * n), {rows.begin(), rows.end()}, n, d};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Edge& e = rows[k];
    if (e.v >= n) throw Error(ErrorCode::MissingCoordinates, "edge endpoint outside the vertex range");
    for (std::size_t i = 0; i < d; ++i) {
      const Rational diff = p.at(e.u, i) - p.at(e.v, i);
      r.matrix(k, r.column(e.u, i)) = diff;
      r.matrix(k, r.column(e.v, i)) = -diff;
    }
  }
  return r;
}

inline RigidityMatrix rigidity_matrix(const Graph& g, const Realization& p) {
  return rigidity_matrix(g.vertex_count(), g.edges(), p);
}

/// Uniform integer coordinates in [-coord_bound, coord_bound].
inline Realization sample_generic(const Graph& g, std::size_t d, std::uint64_t seed,
                                  std::int64_t coord_bound = kDefaultCoordBound) {
  Realization p(g.vertex_count(), d);
  Rng rng(seed);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (std::size_t i = 0; i < d; ++i) p.at(v, i) = rng.between(-coord_bound, coord_bound);
  return p;
}

/// Smallest vertex id outside {x, y}.
inline VertexId default_pin(Edge e) {
  VertexId z = 0;
  while (e.touches(z)) ++z;
  return z;
}

/// Square matrix behind the tripartition construction. Rows are edges;
/// columns come in three coordinate blocks:
///   block 0: (v, 1) for v != z
///   block 1: (v, 2) for v != x, z, where column y carries (x,2) + (y,2)
///   block 2: (v, 3) for v != x, y, z
/// Merging x into y in the last two coordinates, where p(x) and p(y) agree,
/// turns those blocks into the planar rigidity matrix of the contraction.
/// Block 0 alone is a scaled incidence matrix, and the row of e vanishes
/// outside it.
struct ReducedMatrix {
  ExactMatrix matrix;
  std::vector<Edge> rows;
  std::array<std::vector<std::size_t>, 3> block;
  std::vector<std::pair<VertexId, std::size_t>> columns;  // (vertex, coordinate)
};

inline ReducedMatrix reduced_matrix(std::size_t n, std::span<const Edge> rows, const NormalizedRealization& p) {
  ReducedMatrix r;
  r.rows.assign(rows.begin(), rows.end());
  std::vector<std::vector<std::ptrdiff_t>> position(3, std::vector<std::ptrdiff_t>(n, -1));
  for (std::size_t i = 0; i < 3; ++i) {
    for (VertexId v = 0; v < n; ++v) {
      if (v == p.z || (i > 0 && v == p.x) || (i == 2 && v == p.y)) continue;
      position[i][v] = static_cast<std::ptrdiff_t>(r.columns.size());
      r.block[i].push_back(r.columns.size());
      r.columns.emplace_back(v, i);
    }
  }
  r.matrix = ExactMatrix(rows.size(), r.columns.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Edge& f = rows[k];
    if (f.v >= n) throw Error(ErrorCode::MissingCoordinates, "edge endpoint outside the vertex range");
    for (std::size_t i = 0; i < 3; ++i) {
      const Rational diff = p.base.at(f.u, i) - p.base.at(f.v, i);
      auto target = [&](VertexId v) { return i > 0 && v == p.x ? p.y : v; };
      if (auto c = position[i][target(f.u)]; c >= 0) r.matrix(k, static_cast<std::size_t>(c)) += diff;
      if (auto c = position[i][target(f.v)]; c >= 0) r.matrix(k, static_cast<std::size_t>(c)) -= diff;
    }
  }
  return r;
}

/// Samples p with p(z) at the origin and x - y along the first axis, where
/// y = e.u is the endpoint that survives contraction and x = e.v. A sample is
/// accepted once every edge other than e has nonzero differences in all three
/// coordinates and the reduced matrix (side 3|V| - 6) is invertible. Throws
/// DegenerateSample after 16 rejected attempts, which for practical purposes
/// means g is not minimally 3-rigid.
inline NormalizedRealization sample_normalized(const Graph& g, Edge e, VertexId z, std::uint64_t seed,
                                               std::int64_t coord_bound = kDefaultCoordBound) {
  const std::size_t n = g.vertex_count();
  if (e.is_loop() || e.v >= n || z >= n || e.touches(z)) {
    throw Error(ErrorCode::BadNeighbors, "x, y and z must be distinct vertices of the graph");
  }
  NormalizedRealization out;
  out.y = e.u;
  out.x = e.v;
  out.z = z;
  for (std::size_t attempt = 0; attempt < kMaxResamples; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    Realization p(n, 3);
    for (VertexId v = 0; v < n; ++v)
      for (std::size_t i = 0; i < 3; ++i) p.at(v, i) = rng.between(-coord_bound, coord_bound);
    std::int64_t lambda = 0;
    while (lambda == 0) lambda = rng.between(-coord_bound, coord_bound);
    for (std::size_t i = 0; i < 3; ++i) p.at(z, i) = 0;
    p.at(out.x, 0) = p.at(out.y, 0) + lambda;
    p.at(out.x, 1) = p.at(out.y, 1);
    p.at(out.x, 2) = p.at(out.y, 2);

    bool generic_edges = true;
    for (const Edge& f : g.edges()) {
      if (f == e) continue;
      for (std::size_t i = 0; i < 3; ++i) generic_edges = generic_edges && p.at(f.u, i) != p.at(f.v, i);
    }
    if (!generic_edges || 3 * n < 6 || g.edge_count() != 3 * n - 6) continue;

    out.base = std::move(p);
    out.lambda = lambda;
    const auto r = reduced_matrix(n, g.edges(), out);
    if (rank_exact(r.matrix) == 3 * n - 6) return out;
  }
  throw Error(ErrorCode::DegenerateSample, "no normalized sample of full rank after 16 attempts");
}

/// Outcome of a rigidity test. `rigid` is an exact certificate (the rank was
/// reached at `certificate`); a negative answer is exact when
/// `exact_negative` is set and otherwise fails with probability at most
/// 2^log2_failure_bound.
struct RigidityVerdict {
  bool rigid = false;
  std::size_t rank = 0;
  std::size_t target = 0;
  std::size_t trials = 0;
  bool exact_negative = false;
  double log2_failure_bound = 0.0;
  std::optional<Realization> certificate;
};

/// Rank of an infinitesimally rigid realization: d|V| - C(d+1, 2) when
/// |V| > d, and C(|V|, 2) for the complete graph on |V| <= d points.
inline std::size_t rigid_rank(std::size_t n, std::size_t d) {
  if (n <= d) return n * (n - 1) / 2;
  return d * n - d * (d + 1) / 2;
}

inline bool is_complete_simple(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return g.is_simple() && g.edge_count() == n * (n - 1) / 2;
}

/// Random-evaluation rigidity test. Each trial samples integer coordinates
/// in [-coord_bound, coord_bound] from derive_seed(seed, trial) and computes
/// the exact rank. A maximal nonzero minor has degree `target`, so a
/// rigid graph looks flexible at one trial with probability at most
/// target / (2 coord_bound + 1).
/// Graphs with |V| <= d are rigid only if complete; |V| = d is treated the
/// same way.
inline RigidityVerdict is_rigid(const Graph& g, std::size_t d, std::uint64_t seed,
                                std::size_t trials = kDefaultTrials,
                                std::int64_t coord_bound = kDefaultCoordBound) {
  RigidityVerdict verdict;
  const std::size_t n = g.vertex_count();
  verdict.target = rigid_rank(n, d);
  if (n <= d && !is_complete_simple(g)) {
    verdict.exact_negative = true;
    return verdict;
  }
  if (verdict.target == 0) {
    verdict.rigid = true;
    verdict.certificate = Realization(n, d);
    return verdict;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    ++verdict.trials;
    Realization p = sample_generic(g, d, derive_seed(seed, t), coord_bound);
    const std::size_t rank = rank_exact(rigidity_matrix(g, p).matrix);
    verdict.rank = std::max(verdict.rank, rank);
    if (rank >= verdict.target) {
      verdict.rigid = true;
      verdict.certificate = std::move(p);
      return verdict;
    }
  }
  if (g.edge_count() < verdict.target) {
    verdict.exact_negative = true;
  } else {
    const double per_trial = static_cast<double>(verdict.target) / (2.0 * static_cast<double>(coord_bound) + 1.0);
    verdict.log2_failure_bound = static_cast<double>(verdict.trials) * std::log2(per_trial);
  }
  return verdict;
}

struct MinimalRigidityVerdict {
  RigidityVerdict rigidity;
  bool minimal = false;
};

/// Rigid with exactly target-many edges; full row rank then makes every edge
/// necessary.
inline MinimalRigidityVerdict is_minimally_rigid(const Graph& g, std::size_t d, std::uint64_t seed,
                                                 std::size_t trials = kDefaultTrials,
                                                 std::int64_t coord_bound = kDefaultCoordBound) {
  MinimalRigidityVerdict out;
  out.rigidity = is_rigid(g, d, seed, trials, coord_bound);
  out.minimal = out.rigidity.rigid && g.edge_count() == out.rigidity.target;
  return out;
}

}  // namespace rigidity
