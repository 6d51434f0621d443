#pragma once

#include "rigidity/error.hpp"
#include "rigidity/random.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace rigidity {

/// Vertex ids are dense in [0, n); numeric order is the vertex order used to
/// lay out rigidity-matrix columns.
using VertexId = std::uint32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u{};
  VertexId v{};

  constexpr Edge() = default;
  constexpr Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr bool is_loop() const { return u == v; }
  constexpr bool touches(VertexId w) const { return u == w || v == w; }
  constexpr VertexId other(VertexId w) const { return w == u ? v : u; }

  constexpr auto operator<=>(const Edge&) const = default;
};

/// Finite multigraph without loops. Parallel edges appear as repeated entries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n) {}
  Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) add_edge(e);
  }
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  VertexId add_vertex() { return static_cast<VertexId>(n_++); }

  void add_edge(Edge e) {
    if (e.is_loop()) throw Error(ErrorCode::BadNeighbors, "loops are not allowed");
    if (e.v >= n_) throw Error(ErrorCode::BadNeighbors, "edge endpoint out of range");
    edges_.push_back(e);
  }
  void add_edge(VertexId a, VertexId b) { add_edge(Edge{a, b}); }

  std::size_t multiplicity(Edge e) const {
    return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), e));
  }
  bool has_edge(Edge e) const {
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
  }

  bool is_simple() const {
    auto sorted = sorted_edges();
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  std::vector<Edge> sorted_edges() const {
    std::vector<Edge> out(edges_);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Same graph with edges in ascending (u, v) order.
  Graph canonical() const {
    Graph g(n_);
    g.edges_ = sorted_edges();
    return g;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (const Edge& e : edges_) {
      ++deg[e.u];
      ++deg[e.v];
    }
    return deg;
  }

  std::vector<std::vector<VertexId>> adjacency() const {
    std::vector<std::vector<VertexId>> adj(n_);
    for (const Edge& e : edges_) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  /// Equality as multigraphs (edge order ignored).
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.sorted_edges() == b.sorted_edges();
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Edge tripartition (S1, S2, S3) with edges kept sorted.
struct EdgePartition {
  std::vector<Edge> s1;
  std::vector<Edge> s2;
  std::vector<Edge> s3;

  void normalize() {
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    std::sort(s3.begin(), s3.end());
  }

  friend bool operator==(const EdgePartition&, const EdgePartition&) = default;
};

/// Result of contracting an edge. `relabel[w]` is the new id of old vertex w.
struct Contraction {
  Graph graph;
  std::vector<VertexId> relabel;
  VertexId merged{};
  std::size_t loops_removed = 0;
};

inline std::vector<Edge> concat(std::initializer_list<std::span<const Edge>> parts) {
  std::vector<Edge> out;
  for (auto part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

/// Merges the endpoints of `e` into its smaller endpoint and shifts the ids
/// above the larger endpoint down by one. One copy of `e` disappears, any
/// further copies become loops and are dropped, and every other parallel
/// edge is kept.
inline Contraction contract_edge(const Graph& g, Edge e) {
  if (e.is_loop() || !g.has_edge(e)) {
    throw Error(ErrorCode::EdgeNotPresent,
                "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not in the graph");
  }
  Contraction out;
  out.merged = e.u;
  out.relabel.resize(g.vertex_count());
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    out.relabel[w] = w == e.v ? e.u : (w > e.v ? w - 1 : w);
  }
  out.graph = Graph(g.vertex_count() - 1);
  bool skipped = false;
  for (const Edge& f : g.edges()) {
    if (f == e && !skipped) {
      skipped = true;
      continue;
    }
    Edge mapped{out.relabel[f.u], out.relabel[f.v]};
    if (mapped.is_loop()) {
      ++out.loops_removed;
      continue;
    }
    out.graph.add_edge(mapped);
  }
  return out;
}

/// Contraction of (V, edges) along e, where e must be one of `edges`.
inline Graph contract_subgraph(std::size_t n, std::span<const Edge> edges, Edge e) {
  return contract_edge(Graph(n, edges), e).graph;
}

/// Adds vertex n adjacent to every existing vertex.
inline Graph cone(const Graph& g) {
  Graph out(g.vertex_count(), g.edges());
  const VertexId apex = out.add_vertex();
  for (VertexId w = 0; w < apex; ++w) out.add_edge(w, apex);
  return out;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (VertexId a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
  return g;
}

// Double banana: two copies of K5 minus an edge glued along the missing edge
// r1r2.
namespace banana {
inline constexpr VertexId r1 = 0, r2 = 1, a1 = 2, b1 = 3, c1 = 4, a2 = 5, b2 = 6, c2 = 7;
inline constexpr std::array<std::string_view, 8> names{"r1", "r2", "a1", "b1", "c1", "a2", "b2", "c2"};
}  // namespace banana

inline Graph double_banana() {
  using namespace banana;
  Graph g(8);
  for (VertexId w : {a1, b1, c1, a2, b2, c2}) {
    g.add_edge(r1, w);
    g.add_edge(r2, w);
  }
  g.add_edge(a1, b1);
  g.add_edge(a1, c1);
  g.add_edge(b1, c1);
  g.add_edge(a2, b2);
  g.add_edge(a2, c2);
  g.add_edge(b2, c2);
  return g;
}

struct FixturePartition {
  Edge edge;
  EdgePartition partition;
};

/// The two hand-coloured tripartitions of the double banana, for the edges
/// r1b1 and a1b1.
inline std::vector<FixturePartition> banana_fixture_partitions() {
  using namespace banana;
  FixturePartition a{Edge{r1, b1},
                     {{{r1, a1}, {r1, b1}, {r1, c1}, {r1, a2}, {r1, c2}, {r2, b1}, {r2, b2}},
                      {{r1, b2}, {r2, a1}, {a1, b1}, {b1, c1}, {a2, b2}, {a2, c2}},
                      {{r2, c1}, {r2, a2}, {r2, c2}, {a1, c1}, {b2, c2}}}};
  FixturePartition b{Edge{a1, b1},
                     {{{r1, b1}, {r1, a2}, {r2, b1}, {r2, b2}, {a1, b1}, {b1, c1}, {a2, c2}},
                      {{r1, a1}, {r1, b2}, {r1, c2}, {r2, a1}, {a1, c1}, {a2, b2}},
                      {{r1, c1}, {r2, c1}, {r2, a2}, {r2, c2}, {b2, c2}}}};
  a.partition.normalize();
  b.partition.normalize();
  return {a, b};
}

/// Henneberg 0-extension: a new vertex joined to three distinct existing ones.
inline Graph henneberg_0_extend(const Graph& g, std::array<VertexId, 3> neighbors) {
  const auto [p, q, r] = neighbors;
  if (p == q || p == r || q == r) throw Error(ErrorCode::BadNeighbors, "neighbors must be distinct");
  for (VertexId w : neighbors) {
    if (w >= g.vertex_count()) throw Error(ErrorCode::BadNeighbors, "neighbor out of range");
  }
  Graph out(g.vertex_count(), g.edges());
  const VertexId fresh = out.add_vertex();
  for (VertexId w : neighbors) out.add_edge(w, fresh);
  return out;
}

/// Random chain of 0-extensions starting from K4 until `n` vertices.
inline Graph random_henneberg_graph(std::size_t n, std::uint64_t seed) {
  Graph g = complete_graph(std::min<std::size_t>(n, 4));
  Rng rng(seed);
  while (g.vertex_count() < n) {
    std::vector<VertexId> pool(g.vertex_count());
    std::iota(pool.begin(), pool.end(), VertexId{0});
    rng.shuffle(pool);
    g = henneberg_0_extend(g, {pool[0], pool[1], pool[2]});
  }
  return g;
}

inline bool is_connected(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) return true;
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId w) {
    while (parent[w] != w) w = parent[w] = parent[parent[w]];
    return w;
  };
  std::size_t components = n;
  for (const Edge& e : edges) {
    VertexId a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

/// (V, edges) is connected and acyclic.
inline bool is_spanning_tree(std::size_t n, std::span<const Edge> edges) {
  return n > 0 && edges.size() == n - 1 && is_connected(n, edges);
}

// .grf edge-list text: first non-comment line is the vertex count, then one
// "u v" pair per line. '#' starts a comment. Repeated lines are parallel edges.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::uint64_t> parse_integers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc{} ||
        (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(line_no, "expected a non-negative integer in '" + std::string(line) + "'");
    }
    values.push_back(value);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return values;
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  Graph g;
  bool have_count = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto values = detail::parse_integers(line, line_no);
    if (!have_count) {
      if (values.size() != 1) throw ParseError(line_no, "first line must hold the vertex count");
      g = Graph(values[0]);
      have_count = true;
    } else {
      if (values.size() != 2) throw ParseError(line_no, "edge lines hold exactly two ids");
      if (values[0] == values[1]) throw ParseError(line_no, "loop edge");
      if (values[0] >= g.vertex_count() || values[1] >= g.vertex_count()) {
        throw ParseError(line_no, "vertex id out of range");
      }
      g.add_edge(static_cast<VertexId>(values[0]), static_cast<VertexId>(values[1]));
    }
    if (end == text.size()) break;
  }
  if (!have_count) throw ParseError(line_no, "missing vertex count");
  return g;
}

/// Canonical text: vertex count, then edges in ascending order.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (const Edge& e : g.sorted_edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace rigidity
