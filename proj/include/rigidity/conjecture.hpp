#pragma once

#include "rigidity/combinations.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/partition.hpp"
#include "rigidity/random.hpp"
#include "rigidity/rigidity.hpp"
#include "rigidity/sparsity.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rigidity {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

enum class SearchStatus { Found, NotFound, BudgetExceeded };

constexpr std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "FOUND";
    case SearchStatus::NotFound: return "NOT-FOUND";
    case SearchStatus::BudgetExceeded: return "BUDGET-EXCEEDED";
  }
  return "?";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<EdgePartition> witness;
  /// Candidate pairs (S1, S2) accounted for, including those discarded
  /// wholesale by pruning.
  std::size_t tried = 0;

  bool found() const { return status == SearchStatus::Found; }
};

namespace detail {

inline bool planar_tight(const Graph& g) { return check_sparsity(g, kLaman).tight(); }

class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, Edge e, std::size_t budget)
      : g_(g), e_(e), n_(g.vertex_count()), budget_(budget), others_(sorted_difference(g.sorted_edges(), {e})) {}

  SearchOutcome run() {
    const std::size_t s1_rest = n_ - 2;
    const std::size_t s2_size = n_ - 2;
    const std::size_t remaining = others_.size() - s1_rest;
    const std::size_t per_s1 = binomial(remaining, s2_size);

    auto idx = first_combination(s1_rest);
    do {
      std::vector<Edge> s1{e_};
      for (std::size_t i : idx) s1.push_back(others_[i]);
      PebbleGame game(n_, kLaman);
      const bool sparse = std::all_of(s1.begin(), s1.end(), [&](const Edge& f) { return game.try_add(f); });
      if (!sparse) {
        if (!charge(per_s1)) return exceeded();
        continue;
      }
      rest_.clear();
      std::size_t j = 0;
      for (std::size_t i = 0; i < others_.size(); ++i) {
        if (j < idx.size() && idx[j] == i) {
          ++j;
        } else {
          rest_.push_back(others_[i]);
        }
      }
      std::sort(s1.begin(), s1.end());
      s1_ = std::move(s1);
      chosen_.clear();
      if (extend(game, 0, s2_size)) return found_;
      if (exceeded_) return exceeded();
    } while (next_combination(idx, others_.size()));

    SearchOutcome out;
    out.tried = tried_;
    return out;
  }

 private:
  bool charge(std::size_t count) {
    if (count > budget_ - std::min(budget_, tried_)) {
      tried_ = budget_;
      exceeded_ = true;
      return false;
    }
    tried_ += count;
    return true;
  }

  SearchOutcome exceeded() const {
    SearchOutcome out;
    out.status = SearchStatus::BudgetExceeded;
    out.tried = tried_;
    return out;
  }

  // Chooses S2 from rest_[start..] in lexicographic order, growing a copy of
  // the pebble game so that S1 + S2 stays (2,3)-sparse.
  bool extend(const PebbleGame& game, std::size_t start, std::size_t need) {
    if (need == 0) {
      if (!charge(1)) return false;
      return check_leaf();
    }
    for (std::size_t i = start; i + need <= rest_.size(); ++i) {
      PebbleGame next = game;
      if (!next.try_add(rest_[i])) {
        if (!charge(binomial(rest_.size() - i - 1, need - 1))) return false;
        continue;
      }
      chosen_.push_back(i);
      const bool hit = extend(next, i + 1, need - 1);
      chosen_.pop_back();
      if (hit) return true;
      if (exceeded_) return false;
    }
    return false;
  }

  bool check_leaf() {
    std::vector<Edge> s2, s3;
    std::size_t j = 0;
    for (std::size_t i = 0; i < rest_.size(); ++i) {
      if (j < chosen_.size() && chosen_[j] == i) {
        s2.push_back(rest_[i]);
        ++j;
      } else {
        s3.push_back(rest_[i]);
      }
    }
    if (!planar_tight(contract_subgraph(n_, concat({s1_, s3}), e_))) return false;
    auto tail = concat({s2, s3});
    tail.push_back(e_);
    if (!planar_tight(contract_subgraph(n_, tail, e_))) return false;
    found_.status = SearchStatus::Found;
    found_.witness = EdgePartition{s1_, s2, s3};
    found_.tried = tried_;
    return true;
  }

  const Graph& g_;
  Edge e_;
  std::size_t n_;
  std::size_t budget_;
  std::vector<Edge> others_;
  std::vector<Edge> rest_;
  std::vector<Edge> s1_;
  std::vector<std::size_t> chosen_;
  std::size_t tried_ = 0;
  bool exceeded_ = false;
  SearchOutcome found_;
};

}  // namespace detail

/// Looks for (S1, S2, S3) with |S_i| = |V| - i, e in S1, and (V, S1 + S2),
/// (V, S1 + S3)/e, (V, S2 + S3 + e)/e all (2,3)-tight. S1 runs over
/// (|V|-2)-subsets of E - e in lexicographic order, S2 likewise over the
/// leftover edges; the first witness wins. The only pruning is (2,3)-sparsity
/// of S1 and of S1 + S2, both implied by the target condition.
inline SearchOutcome search_partition_exhaustive(const Graph& g, Edge e, std::size_t budget = kDefaultBudget) {
  const std::size_t n = g.vertex_count();
  if (n < 4 || e.is_loop() || e.v >= n || !g.has_edge(e) || g.edge_count() != 3 * n - 6) return {};
  return detail::PartitionSearch(g, e, budget).run();
}

struct EdgeCondition {
  Edge edge;
  SearchOutcome outcome;
};

struct ConditionReport {
  std::string graph_id;
  std::vector<EdgeCondition> edges;  // sorted edge order, one entry per parallel copy
  bool tightness_3_6 = false;
  RigidityVerdict rigid_3;

  bool holds() const {
    return std::all_of(edges.begin(), edges.end(), [](const EdgeCondition& c) { return c.outcome.found(); });
  }
  bool refuted() const {
    return std::any_of(edges.begin(), edges.end(),
                       [](const EdgeCondition& c) { return c.outcome.status == SearchStatus::NotFound; });
  }
};

inline ConditionReport check_condition_all_edges(const Graph& g, std::size_t budget = kDefaultBudget,
                                                 std::uint64_t seed = 0, std::string graph_id = {}) {
  ConditionReport report;
  report.graph_id = std::move(graph_id);
  report.tightness_3_6 = check_sparsity(g, kSpatial).tight();
  report.rigid_3 = is_rigid(g, 3, seed);
  for (const Edge& e : g.sorted_edges()) report.edges.push_back({e, search_partition_exhaustive(g, e, budget)});
  return report;
}

namespace detail {

// Would adding u-v to the (k, ell)-sparse g break sparsity? Every violating
// subgraph contains u, v and at least k vertices in total.
inline bool addition_keeps_sparse(const Graph& g, Edge uv, SparsityParams params) {
  std::map<Edge, long> pairs;
  for (const Edge& f : g.edges()) ++pairs[f];
  ++pairs[uv];
  const ClosureProblem problem(g.vertex_count(), pairs, params.k);
  const std::size_t extra = params.k > 2 ? static_cast<std::size_t>(params.k) - 2 : 0;
  std::vector<VertexId> candidates;
  for (VertexId w = 0; w < g.vertex_count(); ++w)
    if (!uv.touches(w)) candidates.push_back(w);
  if (candidates.size() < extra) return true;
  auto idx = first_combination(extra);
  do {
    std::vector<VertexId> pinned{uv.u, uv.v};
    for (std::size_t i : idx) pinned.push_back(candidates[i]);
    if (problem.solve(pinned).value > -static_cast<long long>(params.ell)) return false;
  } while (next_combination(idx, candidates.size()));
  return true;
}

}  // namespace detail

inline constexpr std::size_t kGenerationRestarts = 64;

/// Random simple (k, ell)-tight graph on n vertices. Starts from the largest
/// tight complete graph, then makes one pass over the shuffled non-edges,
/// keeping each one that preserves sparsity. A pass that ends short of
/// k n - ell edges is restarted from derive_seed(seed, attempt); after 64
/// restarts GenerationStalled is thrown.
inline Graph random_tight_graph(std::size_t n, std::uint64_t seed, SparsityParams params = kSpatial) {
  params.validate();
  const long long target = params.bound(n);
  std::size_t base = std::min(n, static_cast<std::size_t>(params.k));
  while (base + 1 <= n && static_cast<long long>(base * (base + 1) / 2) <= params.bound(base + 1)) ++base;
  if (target < 0 || base == 0 || (base < n && static_cast<long long>(n * (n - 1) / 2) < target)) {
    throw std::invalid_argument("no simple tight graph with these parameters on " + std::to_string(n) + " vertices");
  }

  for (std::size_t attempt = 0; attempt < kGenerationRestarts; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    Graph g(n);
    for (VertexId a = 0; a < base; ++a)
      for (VertexId b = a + 1; b < base; ++b) g.add_edge(a, b);
    std::vector<Edge> pool;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        if (b >= base) pool.push_back(Edge{a, b});
    rng.shuffle(pool);
    std::optional<PebbleGame> game;
    if (params.pebble_game_applies()) {
      game.emplace(n, params);
      for (const Edge& f : g.edges()) game->try_add(f);
    }
    for (const Edge& uv : pool) {
      if (static_cast<long long>(g.edge_count()) == target) break;
      const bool ok = game ? game->try_add(uv) : detail::addition_keeps_sparse(g, uv, params);
      if (ok) g.add_edge(uv);
    }
    if (static_cast<long long>(g.edge_count()) == target) return g;
  }
  throw Error(ErrorCode::GenerationStalled, "no tight graph after 64 restarts");
}

struct ScanGraph {
  std::string id;
  Graph graph;
};

struct ScanRecord {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t edges = 0;
  Edge edge;
  SearchStatus status = SearchStatus::NotFound;
  std::size_t tried = 0;
  double elapsed_ms = 0.0;
};

/// A graph contradicting one direction of the tight-iff-partition question:
/// tight with an edge that has no partition, or every edge partitioned while
/// the graph is not tight.
struct ScanCandidate {
  std::string graph_id;
  Graph graph;
  bool tight = false;
  bool condition = false;
};

struct ScanSummary {
  std::vector<ScanRecord> records;
  std::vector<ScanCandidate> candidates;
  std::size_t graphs = 0;
  std::size_t holding = 0;
  std::size_t inconclusive = 0;
};

inline std::string scan_graph_id(std::size_t n, std::size_t sample) {
  return "n" + std::to_string(n) + "-s" + std::to_string(sample);
}

/// Samples `samples_per_n` (3,6)-tight graphs for each n in 4..n_max (graph
/// number j of size n uses derive_seed(seed, n * 1000 + j)), appends
/// `injected`, and runs the all-edge search on every one.
inline ScanSummary conjecture_scan(std::size_t n_max, std::size_t samples_per_n, std::uint64_t seed,
                                   std::size_t budget = kDefaultBudget, std::vector<ScanGraph> injected = {}) {
  std::vector<ScanGraph> graphs;
  for (std::size_t n = 4; n <= n_max; ++n) {
    for (std::size_t j = 0; j < samples_per_n; ++j) {
      graphs.push_back({scan_graph_id(n, j), random_tight_graph(n, derive_seed(seed, n * 1000 + j))});
    }
  }
  for (auto& extra : injected) graphs.push_back(std::move(extra));

  ScanSummary summary;
  for (const auto& [id, g] : graphs) {
    ++summary.graphs;
    const bool tight = g.vertex_count() >= 4 && check_sparsity(g, kSpatial).tight();
    bool all_found = g.vertex_count() >= 4;
    bool any_missing = false;
    for (const Edge& e : g.sorted_edges()) {
      const auto start = std::chrono::steady_clock::now();
      const auto outcome = search_partition_exhaustive(g, e, budget);
      const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
      summary.records.push_back({id, g.vertex_count(), g.edge_count(), e, outcome.status, outcome.tried, took.count()});
      all_found = all_found && outcome.found();
      any_missing = any_missing || outcome.status == SearchStatus::NotFound;
    }
    const bool decided = all_found || any_missing;
    if (!decided) ++summary.inconclusive;
    if (all_found) ++summary.holding;
    if (decided && tight != all_found) summary.candidates.push_back({id, g, tight, all_found});
  }
  return summary;
}

}  // namespace rigidity
