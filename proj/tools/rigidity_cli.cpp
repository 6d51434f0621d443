#include "rigidity.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace rigidity;

enum Exit { kHolds = 0, kFails = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string fixture;
  std::string edge;
  std::optional<std::uint64_t> seed;
  std::size_t dim = 3;
  int k = 2;
  int ell = 3;
  std::size_t budget = kDefaultBudget;
  std::string format = "text";
  bool minimal = false;
  std::string partition_file;
  std::size_t n_max = 6;
  std::size_t samples = 2;
  std::vector<std::string> inject;
  std::string candidates_dir;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph fixture_graph(const std::string& name) {
  if (name == "double-banana") return double_banana();
  if (name == "k4") return complete_graph(4);
  if (name == "k5") return complete_graph(5);
  throw UsageError("unknown fixture '" + name + "' (double-banana, k4, k5)");
}

Graph load_graph(const Config& c) {
  if (!c.input.empty() && !c.fixture.empty()) throw UsageError("give either --input or --fixture, not both");
  if (!c.fixture.empty()) return fixture_graph(c.fixture);
  if (c.input.empty()) throw UsageError("a graph is required: --input FILE or --fixture NAME");
  return parse_graph(read_file(c.input));
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw UsageError("bad " + what + " '" + std::string(text) + "'");
  return value;
}

std::uint64_t resolve_seed(const Config& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("RIGIDITY_SEED"); env && *env) return parse_u64(env, "RIGIDITY_SEED");
  return 0;
}

Edge parse_edge(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("edge must look like u,v");
  const auto a = parse_u64(text.substr(0, comma), "edge endpoint");
  const auto b = parse_u64(text.substr(comma + 1), "edge endpoint");
  if (a == b) throw UsageError("edge endpoints must differ");
  return Edge{static_cast<VertexId>(a), static_cast<VertexId>(b)};
}

Edge require_edge_flag(const Config& c) {
  if (c.edge.empty()) throw UsageError("--edge u,v is required");
  return parse_edge(c.edge);
}

bool json(const Config& c) { return c.format == "json"; }

std::string edge_text(Edge e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

std::string edges_text(const std::vector<Edge>& edges) {
  std::string out;
  for (const Edge& e : edges) out += (out.empty() ? "" : " ") + edge_text(e);
  return out;
}

void print_partition_text(const EdgePartition& p) {
  std::cout << "S1: " << edges_text(p.s1) << "\nS2: " << edges_text(p.s2) << "\nS3: " << edges_text(p.s3) << '\n';
}

void print_report_text(const PartitionReport& r) {
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  std::cout << "sizes " << r.sizes[0] << '/' << r.sizes[1] << '/' << r.sizes[2] << ": " << mark(r.sizes_ok) << '\n'
            << "e in S1: " << mark(r.contains_edge) << '\n'
            << "(V, S1+S2) (2,3)-tight: " << mark(r.s1s2_ok) << '\n'
            << "(V, S1+S3)/e (2,3)-tight: " << mark(r.s1s3_ok) << '\n'
            << "(V, S2+S3+e)/e (2,3)-tight: " << mark(r.s2s3e_ok) << '\n'
            << "verify: " << (r.ok() ? "ok" : "FAIL") << '\n';
}

std::string rigidity_label(const RigidityVerdict& v) {
  if (v.rigid) return "RIGID";
  return v.exact_negative ? "FLEXIBLE" : "PROBABLY-FLEXIBLE";
}

Json verdict_json(const RigidityVerdict& v) {
  Json j;
  j["verdict"] = rigidity_label(v);
  j["rank"] = v.rank;
  j["target"] = v.target;
  j["trials"] = v.trials;
  j["exact"] = v.rigid || v.exact_negative;
  if (!v.rigid && !v.exact_negative) j["log2_failure_bound"] = v.log2_failure_bound;
  return j;
}

int cmd_sparsity(const Config& c) {
  const Graph g = load_graph(c);
  const SparsityParams params{c.k, c.ell};
  params.validate();
  const auto result = check_sparsity(g, params);
  if (json(c)) {
    Json j;
    j["k"] = c.k;
    j["ell"] = c.ell;
    j["status"] = to_string(result.status);
    if (!result.sparse()) j["witness"] = edges_to_json(result.witness);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << to_string(result.status) << '\n';
    if (!result.sparse()) std::cout << "witness: " << edges_text(result.witness) << '\n';
  }
  return result.sparse() ? kHolds : kFails;
}

int cmd_rigid(const Config& c) {
  const Graph g = load_graph(c);
  const auto seed = resolve_seed(c);
  const auto verdict = is_minimally_rigid(g, c.dim, seed);
  const auto& v = verdict.rigidity;
  const bool holds = c.minimal ? verdict.minimal : v.rigid;
  std::string label = rigidity_label(v);
  if (c.minimal && v.rigid) label = verdict.minimal ? "MINIMALLY-RIGID" : "RIGID-NOT-MINIMAL";
  if (json(c)) {
    Json j = verdict_json(v);
    j["verdict"] = label;
    j["dim"] = c.dim;
    j["seed"] = seed;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << label << " rank=" << v.rank << '/' << v.target << '\n';
    if (!v.rigid && !v.exact_negative) {
      std::cout << "failure probability <= 2^" << v.log2_failure_bound << " over " << v.trials << " trials\n";
    }
  }
  return holds ? kHolds : kFails;
}

int cmd_partition(const Config& c) {
  const Graph g = load_graph(c);
  const Edge e = require_edge_flag(c);
  const auto seed = resolve_seed(c);
  EdgePartition part;
  try {
    part = partition_for_edge(g, e, seed);
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::NotMinimallyRigid && ex.code() != ErrorCode::DegenerateSample) throw;
    if (json(c)) {
      Json j;
      j["edge"] = edge_to_json(e);
      j["error"] = to_string(ex.code());
      j["message"] = ex.what();
      std::cout << j.dump() << '\n';
    } else {
      std::cout << ex.what() << '\n';
    }
    return kFails;
  }
  const auto report = verify_partition(g, e, part);
  if (json(c)) {
    std::cout << partition_to_json(e, part, seed).dump() << '\n';
  } else {
    print_partition_text(part);
    std::cout << "verify: " << (report.ok() ? "ok" : "FAIL") << '\n';
  }
  return report.ok() ? kHolds : kFails;
}

int cmd_verify(const Config& c) {
  const Graph g = load_graph(c);
  if (c.partition_file.empty()) throw UsageError("--partition FILE is required");
  const auto file = parse_partition(read_file(c.partition_file));
  const Edge e = c.edge.empty() ? file.edge : parse_edge(c.edge);
  const auto report = verify_partition(g, e, file.partition);
  if (json(c)) {
    Json j = report_to_json(report);
    j["edge"] = edge_to_json(e);
    std::cout << j.dump() << '\n';
  } else {
    print_report_text(report);
  }
  return report.ok() ? kHolds : kFails;
}

int cmd_search(const Config& c) {
  const Graph g = load_graph(c);
  const Edge e = require_edge_flag(c);
  if (!g.has_edge(e)) throw Error(ErrorCode::EdgeNotPresent, "edge " + edge_text(e));
  const auto outcome = search_partition_exhaustive(g, e, c.budget);
  if (json(c)) {
    Json j;
    j["edge"] = edge_to_json(e);
    j["status"] = to_string(outcome.status);
    j["tried"] = outcome.tried;
    if (outcome.witness) {
      j["s1"] = edges_to_json(outcome.witness->s1);
      j["s2"] = edges_to_json(outcome.witness->s2);
      j["s3"] = edges_to_json(outcome.witness->s3);
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << to_string(outcome.status) << " tried=" << outcome.tried << '\n';
    if (outcome.witness) print_partition_text(*outcome.witness);
  }
  return outcome.found() ? kHolds : kFails;
}

int cmd_banana(const Config& c) {
  const Graph g = double_banana();
  const auto seed = resolve_seed(c);

  const bool tight = check_sparsity(g, kSpatial).tight();

  std::vector<RigidityVerdict> ranks;
  bool flexible = true;
  for (std::uint64_t i = 0; i < 3; ++i) {
    ranks.push_back(is_rigid(g, 3, derive_seed(seed, i)));
    flexible = flexible && !ranks.back().rigid && ranks.back().rank == 17;
  }

  std::vector<std::pair<FixturePartition, PartitionReport>> fixtures;
  bool fixtures_ok = true;
  for (const auto& f : banana_fixture_partitions()) {
    fixtures.emplace_back(f, verify_partition(g, f.edge, f.partition));
    fixtures_ok = fixtures_ok && fixtures.back().second.ok();
  }

  const auto condition = check_condition_all_edges(g, c.budget, seed, "double-banana");
  const bool all_found = condition.holds();
  const bool reproduced = tight && flexible && fixtures_ok && all_found;

  auto named = [](Edge e) {
    return std::string(banana::names[e.u]) + "-" + std::string(banana::names[e.v]);
  };
  if (json(c)) {
    Json j;
    j["tight_3_6"] = tight;
    Json rs = Json::array();
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      Json r = verdict_json(ranks[i]);
      r["seed"] = derive_seed(seed, i);
      rs.push_back(r);
    }
    j["rigidity"] = rs;
    Json fs = Json::array();
    for (const auto& [f, report] : fixtures) {
      Json item = report_to_json(report);
      item["edge"] = edge_to_json(f.edge);
      fs.push_back(item);
    }
    j["fixtures"] = fs;
    Json es = Json::array();
    for (const auto& ec : condition.edges) {
      Json item;
      item["edge"] = edge_to_json(ec.edge);
      item["status"] = to_string(ec.outcome.status);
      item["tried"] = ec.outcome.tried;
      es.push_back(item);
    }
    j["search"] = es;
    j["reproduced"] = reproduced;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "(3,6)-sparsity: " << (tight ? "TIGHT" : "NOT TIGHT") << '\n';
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      std::cout << "3-rigidity seed " << derive_seed(seed, i) << ": " << rigidity_label(ranks[i])
                << " rank=" << ranks[i].rank << '/' << ranks[i].target << '\n';
    }
    for (const auto& [f, report] : fixtures) {
      std::cout << "fixture partition for " << named(f.edge) << ": " << (report.ok() ? "ok" : "FAIL") << '\n';
    }
    std::size_t found = 0;
    for (const auto& ec : condition.edges) {
      found += ec.outcome.found();
      std::cout << "search " << named(ec.edge) << ": " << to_string(ec.outcome.status)
                << " tried=" << ec.outcome.tried << '\n';
    }
    std::cout << "partitions found for " << found << '/' << condition.edges.size() << " edges\n";
    std::cout << (reproduced ? "converse counter-example reproduced" : "reproduction FAILED") << '\n';
  }
  return reproduced ? kHolds : kFails;
}

int cmd_scan(const Config& c) {
  const auto seed = resolve_seed(c);
  std::vector<ScanGraph> injected;
  for (const auto& path : c.inject) injected.push_back({std::filesystem::path(path).stem().string(), parse_graph(read_file(path))});
  if (!c.fixture.empty()) injected.push_back({c.fixture, fixture_graph(c.fixture)});
  if (!c.input.empty()) injected.push_back({std::filesystem::path(c.input).stem().string(), parse_graph(read_file(c.input))});

  const auto summary = conjecture_scan(c.n_max, c.samples, seed, c.budget, injected);

  if (!c.candidates_dir.empty()) {
    std::filesystem::create_directories(c.candidates_dir);
    for (const auto& cand : summary.candidates) {
      std::ofstream out(std::filesystem::path(c.candidates_dir) / (cand.graph_id + ".grf"));
      out << "# " << (cand.tight ? "(3,6)-tight" : "not (3,6)-tight") << ", partition condition "
          << (cand.condition ? "holds" : "fails") << '\n'
          << serialize_graph(cand.graph);
    }
  }

  if (json(c)) {
    for (const auto& r : summary.records) std::cout << scan_record_to_json(r, c.timing).dump() << '\n';
  } else {
    std::cout << "graphs: " << summary.graphs << "\ncondition holds: " << summary.holding
              << "\ninconclusive (budget): " << summary.inconclusive << "\ncandidates: " << summary.candidates.size()
              << '\n';
    for (const auto& cand : summary.candidates) {
      std::cout << "  " << cand.graph_id << (cand.tight ? " tight" : " not tight") << ", condition "
                << (cand.condition ? "holds" : "fails") << '\n';
    }
    if (c.timing) {
      double total = 0;
      for (const auto& r : summary.records) total += r.elapsed_ms;
      std::cout << "search time: " << total << " ms\n";
    }
  }
  return summary.candidates.empty() ? kHolds : kFails;
}

int cmd_cone(const Config& c) {
  const Graph coned = cone(load_graph(c));
  if (json(c)) {
    Json j;
    j["n"] = coned.vertex_count();
    j["edges"] = edges_to_json(coned.sorted_edges());
    std::cout << j.dump() << '\n';
  } else {
    std::cout << serialize_graph(coned);
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigidity, sparsity and edge-tripartition tools"};
  app.require_subcommand(1);
  Config c;

  auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("-i,--input", c.input, "graph file (.grf)");
    sub->add_option("--fixture", c.fixture, "named graph: double-banana, k4, k5");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "random seed (default: $RIGIDITY_SEED, else 0)");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* sparsity = app.add_subcommand("sparsity", "(k,l)-sparsity and tightness");
  graph_opts(sparsity);
  common(sparsity);
  sparsity->add_option("--k", c.k, "k (default 2)");
  sparsity->add_option("--ell", c.ell, "l (default 3)");

  auto* rigid = app.add_subcommand("rigid", "generic d-rigidity by random exact evaluation");
  graph_opts(rigid);
  common(rigid);
  rigid->add_option("-d,--dim", c.dim, "dimension (default 3)")->check(CLI::Range(1, 16));
  rigid->add_flag("--minimal", c.minimal, "require minimal rigidity");

  auto* partition = app.add_subcommand("partition", "construct the edge tripartition of a minimally 3-rigid graph");
  graph_opts(partition);
  common(partition);
  partition->add_option("--edge", c.edge, "edge u,v");

  auto* verify = app.add_subcommand("verify", "check a tripartition given as JSON");
  graph_opts(verify);
  common(verify);
  verify->add_option("--partition", c.partition_file, "partition JSON file");
  verify->add_option("--edge", c.edge, "override the edge stored in the file");

  auto* search = app.add_subcommand("search", "exhaustive tripartition search for one edge");
  graph_opts(search);
  common(search);
  search->add_option("--edge", c.edge, "edge u,v");
  search->add_option("--budget", c.budget, "candidate budget");

  auto* banana_cmd = app.add_subcommand("banana", "double banana: tight, flexible, yet partitionable at every edge");
  common(banana_cmd);
  banana_cmd->add_option("--budget", c.budget, "candidate budget per edge");

  auto* scan = app.add_subcommand("scan", "sample (3,6)-tight graphs and test the partition condition");
  graph_opts(scan);
  common(scan);
  scan->add_option("--n-max", c.n_max, "largest vertex count (default 6)");
  scan->add_option("--samples", c.samples, "graphs per vertex count (default 2)");
  scan->add_option("--budget", c.budget, "candidate budget per edge");
  scan->add_option("--inject", c.inject, "extra graph files to test");
  scan->add_option("--candidates-dir", c.candidates_dir, "write candidate graphs here");
  scan->add_flag("--timing", c.timing, "include elapsed_ms in records");

  auto* cone_cmd = app.add_subcommand("cone", "add a vertex joined to every vertex");
  graph_opts(cone_cmd);
  common(cone_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sparsity) return cmd_sparsity(c);
    if (*rigid) return cmd_rigid(c);
    if (*partition) return cmd_partition(c);
    if (*verify) return cmd_verify(c);
    if (*search) return cmd_search(c);
    if (*banana_cmd) return cmd_banana(c);
    if (*scan) return cmd_scan(c);
    if (*cone_cmd) return cmd_cone(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
