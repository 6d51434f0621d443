#pragma once

#include "rigidity/combinations.hpp"
#include "rigidity/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigidity {

/// (k, ell) for the count condition |E'| <= k|V'| - ell on every subgraph
/// with at least k vertices.
struct SparsityParams {
  int k = 2;
  int ell = 3;

  void validate() const {
    if (k < 1 || ell < 0) {
      throw std::invalid_argument("sparsity parameters need k >= 1 and ell >= 0, got (" + std::to_string(k) + "," +
                                  std::to_string(ell) + ")");
    }
  }

  /// The pebble game decides exactly this count condition when it is
  /// matroidal and no subgraph below k vertices can carry an edge.
  bool pebble_game_applies() const { return ell < 2 * k && k <= 2; }

  long long bound(std::size_t vertices) const {
    return static_cast<long long>(k) * static_cast<long long>(vertices) - ell;
  }
};

inline constexpr SparsityParams kLaman{2, 3};
inline constexpr SparsityParams kSpatial{3, 6};

enum class Sparsity { Sparse, Tight, NotSparse };

constexpr std::string_view to_string(Sparsity s) {
  switch (s) {
    case Sparsity::Sparse: return "SPARSE";
    case Sparsity::Tight: return "TIGHT";
    case Sparsity::NotSparse: return "NOT-SPARSE";
  }
  return "?";
}

struct SparsityResult {
  Sparsity status = Sparsity::Sparse;
  /// For NotSparse: edges of a subgraph on at least k vertices whose count
  /// exceeds k|V'| - ell.
  std::vector<Edge> witness;

  bool sparse() const { return status != Sparsity::NotSparse; }
  bool tight() const { return status == Sparsity::Tight; }
};

/// Incremental (k, ell) pebble game, 0 <= ell < 2k. Every vertex starts with
/// k pebbles; an edge is accepted when ell + 1 pebbles can be gathered on its
/// endpoints. Pebble searches run depth-first from the lower endpoint first,
/// following out-edges in ascending head order.
class PebbleGame {
 public:
  PebbleGame(std::size_t n, SparsityParams params) : params_(params), pebbles_(n, params.k), out_(n) {
    params.validate();
    if (params.ell >= 2 * params.k) throw std::invalid_argument("pebble game needs ell < 2k");
  }

  std::size_t accepted() const { return edges_.size(); }
  std::size_t vertex_count() const { return pebbles_.size(); }
  int free_pebbles() const {
    int total = 0;
    for (int p : pebbles_) total += p;
    return total;
  }
  int pebbles(VertexId v) const { return pebbles_[v]; }
  std::size_t out_degree(VertexId v) const { return out_[v].size(); }

  /// Accepts `e` if independent of the accepted edges. On rejection the
  /// violating subgraph is available through last_witness().
  bool try_add(Edge e) {
    if (e.is_loop()) throw std::invalid_argument("loops cannot be added to a pebble game");
    const int need = params_.ell + 1;
    while (pebbles_[e.u] + pebbles_[e.v] < need) {
      if (fetch(e.u, e.v)) continue;
      if (fetch(e.v, e.u)) continue;
      record_witness(e);
      return false;
    }
    const VertexId tail = pebbles_[e.u] > 0 ? e.u : e.v;
    --pebbles_[tail];
    tails_.push_back(tail);
    edges_.push_back(e);
    insert_out(tail, edges_.size() - 1);
    return true;
  }

  const std::vector<Edge>& last_witness() const { return witness_; }
  const std::vector<Edge>& accepted_edges() const { return edges_; }

 private:
  VertexId head(std::size_t id) const { return edges_[id].other(tails_[id]); }

  void insert_out(VertexId v, std::size_t id) {
    auto& list = out_[v];
    const auto key = std::make_pair(head(id), id);
    auto pos = std::lower_bound(list.begin(), list.end(), key, [this](std::size_t a, const auto& k) {
      return std::make_pair(head(a), a) < k;
    });
    list.insert(pos, id);
  }

  void remove_out(VertexId v, std::size_t id) {
    auto& list = out_[v];
    list.erase(std::find(list.begin(), list.end(), id));
  }

  // Moves one pebble to `start` along a reversed directed path, never
  // touching `keep`.
  bool fetch(VertexId start, VertexId keep) {
    if (pebbles_[start] >= params_.k) return false;
    std::vector<char> seen(pebbles_.size(), 0);
    seen[start] = seen[keep] = 1;
    std::vector<std::size_t> path;
    if (!dfs(start, seen, path)) return false;
    --pebbles_[head(path.back())];
    ++pebbles_[start];
    for (std::size_t id : path) {
      const VertexId from = tails_[id];
      const VertexId to = head(id);
      remove_out(from, id);
      tails_[id] = to;
      insert_out(to, id);
    }
    return true;
  }

  bool dfs(VertexId v, std::vector<char>& seen, std::vector<std::size_t>& path) const {
    for (std::size_t id : out_[v]) {
      const VertexId w = head(id);
      if (seen[w]) continue;
      seen[w] = 1;
      path.push_back(id);
      if (pebbles_[w] > 0 || dfs(w, seen, path)) return true;
      path.pop_back();
    }
    return false;
  }

  // Vertices reachable from the endpoints span at least k|R| - ell accepted
  // edges, so together with e they violate the count.
  void record_witness(Edge e) {
    std::vector<char> reach(pebbles_.size(), 0);
    std::vector<VertexId> stack{e.u, e.v};
    reach[e.u] = reach[e.v] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (std::size_t id : out_[v]) {
        const VertexId w = head(id);
        if (!reach[w]) {
          reach[w] = 1;
          stack.push_back(w);
        }
      }
    }
    witness_.clear();
    for (const Edge& f : edges_)
      if (reach[f.u] && reach[f.v]) witness_.push_back(f);
    witness_.push_back(e);
    std::sort(witness_.begin(), witness_.end());
  }

  SparsityParams params_;
  std::vector<int> pebbles_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Edge> edges_;
  std::vector<VertexId> tails_;
  std::vector<Edge> witness_;
};

namespace detail {

// max over V' containing `pinned` of |E(V')| - k|V'|, as a max-weight closure:
// source -> pair (multiplicity), pair -> endpoints (inf), vertex -> sink (k),
// source -> pinned vertex (inf).
struct ClosureProblem {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using FlowGraph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

  struct Outcome {
    long long value = 0;
    std::vector<VertexId> vertices;
  };

  ClosureProblem(std::size_t n, const std::map<Edge, long>& pairs, int k) : n_(n), pairs_(pairs), k_(k) {}

  Outcome solve(const std::vector<VertexId>& pinned) const {
    const std::size_t source = n_ + pairs_.size();
    const std::size_t sink = source + 1;
    FlowGraph flow(sink + 1);
    auto cap = boost::get(boost::edge_capacity, flow);
    auto rev = boost::get(boost::edge_reverse, flow);
    auto res = boost::get(boost::edge_residual_capacity, flow);
    auto add_arc = [&](std::size_t a, std::size_t b, long c) {
      auto fwd = boost::add_edge(a, b, flow).first;
      auto back = boost::add_edge(b, a, flow).first;
      cap[fwd] = c;
      cap[back] = 0;
      rev[fwd] = back;
      rev[back] = fwd;
    };
    long total = 0;
    long infinite = 1;
    for (const auto& [e, m] : pairs_) infinite += m;
    infinite += static_cast<long>(k_) * static_cast<long>(n_);
    std::size_t node = n_;
    for (const auto& [e, m] : pairs_) {
      add_arc(source, node, m);
      add_arc(node, e.u, infinite);
      add_arc(node, e.v, infinite);
      total += m;
      ++node;
    }
    for (std::size_t v = 0; v < n_; ++v) add_arc(v, sink, k_);
    for (VertexId v : pinned) add_arc(source, v, infinite);

    const long cut = boost::edmonds_karp_max_flow(flow, source, sink);

    std::vector<char> side(sink + 1, 0);
    std::vector<std::size_t> stack{source};
    side[source] = 1;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (auto [it, end] = boost::out_edges(a, flow); it != end; ++it) {
        const std::size_t b = boost::target(*it, flow);
        if (!side[b] && res[*it] > 0) {
          side[b] = 1;
          stack.push_back(b);
        }
      }
    }
    Outcome out;
    out.value = static_cast<long long>(total) - cut;
    for (std::size_t v = 0; v < n_; ++v)
      if (side[v]) out.vertices.push_back(static_cast<VertexId>(v));
    return out;
  }

 private:
  std::size_t n_;
  const std::map<Edge, long>& pairs_;
  int k_;
};

inline std::vector<Edge> induced_edges(const Graph& g, const std::vector<VertexId>& vertices) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : vertices) in[v] = 1;
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

inline SparsityResult check_sparsity_by_cuts(const Graph& g, SparsityParams params) {
  SparsityResult result;
  const std::size_t n = g.vertex_count();
  const std::size_t k = static_cast<std::size_t>(params.k);
  if (n >= k) {
    std::map<Edge, long> pairs;
    for (const Edge& e : g.edges()) ++pairs[e];
    const ClosureProblem problem(n, pairs, params.k);
    auto pins = first_combination(k);
    do {
      std::vector<VertexId> pinned(pins.begin(), pins.end());
      const auto best = problem.solve(pinned);
      if (best.value > -static_cast<long long>(params.ell)) {
        result.status = Sparsity::NotSparse;
        result.witness = induced_edges(g, best.vertices);
        return result;
      }
    } while (next_combination(pins, n));
  }
  result.status = static_cast<long long>(g.edge_count()) == params.bound(n) ? Sparsity::Tight : Sparsity::Sparse;
  return result;
}

inline SparsityResult check_sparsity_by_pebbles(const Graph& g, SparsityParams params) {
  SparsityResult result;
  PebbleGame game(g.vertex_count(), params);
  for (const Edge& e : g.edges()) {
    if (!game.try_add(e)) {
      result.status = Sparsity::NotSparse;
      result.witness = game.last_witness();
      return result;
    }
  }
  result.status = static_cast<long long>(g.edge_count()) == params.bound(g.vertex_count()) ? Sparsity::Tight
                                                                                           : Sparsity::Sparse;
  return result;
}

}  // namespace detail

/// Decides (k, ell)-sparsity and tightness, counting parallel edges with
/// multiplicity. Uses the pebble game where it is exact (k <= 2,
/// ell < 2k); otherwise, e.g. for (3, 6), maximizes |E(V')| - k|V'| over all
/// V' containing each k-subset of vertices by a min-cut closure computation.
inline SparsityResult check_sparsity(const Graph& g, SparsityParams params) {
  params.validate();
  if (params.pebble_game_applies()) return detail::check_sparsity_by_pebbles(g, params);
  return detail::check_sparsity_by_cuts(g, params);
}

/// Geiringer-Laman: (2,3)-tight, or a single vertex.
inline bool is_minimally_2_rigid_combinatorial(const Graph& g) {
  if (g.vertex_count() == 1) return true;
  return check_sparsity(g, kLaman).tight();
}

}  // namespace rigidity
