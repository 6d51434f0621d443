#pragma once

#include "rigidity/conjecture.hpp"
#include "rigidity/error.hpp"
#include "rigidity/graph.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rigidity {

using Json = nlohmann::ordered_json;

inline Json edge_to_json(Edge e) { return Json::array({e.u, e.v}); }

inline Json edges_to_json(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(edge_to_json(e));
  return out;
}

inline Edge edge_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw Error(ErrorCode::ParseError, "edge must be a pair of non-negative integers");
  }
  const auto a = j[0].get<std::uint64_t>();
  const auto b = j[1].get<std::uint64_t>();
  if (a == b) throw Error(ErrorCode::ParseError, "loop edge in partition file");
  return Edge{static_cast<VertexId>(a), static_cast<VertexId>(b)};
}

inline std::vector<Edge> edges_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "edge list must be an array");
  std::vector<Edge> out;
  for (const auto& item : j) out.push_back(edge_from_json(item));
  return out;
}

inline Json partition_to_json(Edge e, const EdgePartition& part, std::uint64_t seed) {
  Json j;
  j["edge"] = edge_to_json(e);
  j["s1"] = edges_to_json(part.s1);
  j["s2"] = edges_to_json(part.s2);
  j["s3"] = edges_to_json(part.s3);
  j["seed"] = seed;
  return j;
}

struct PartitionFile {
  Edge edge;
  EdgePartition partition;
  std::uint64_t seed = 0;
};

inline PartitionFile partition_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "partition file must hold a JSON object");
  for (const char* key : {"edge", "s1", "s2", "s3"}) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("partition file lacks \"") + key + "\"");
  }
  PartitionFile out;
  out.edge = edge_from_json(j["edge"]);
  out.partition = {edges_from_json(j["s1"]), edges_from_json(j["s2"]), edges_from_json(j["s3"])};
  out.partition.normalize();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
  return out;
}

inline PartitionFile parse_partition(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
  return partition_from_json(j);
}

inline Json scan_record_to_json(const ScanRecord& r, bool timing) {
  Json j;
  j["graph"] = r.graph_id;
  j["n"] = r.n;
  j["edges"] = r.edges;
  j["edge"] = edge_to_json(r.edge);
  j["exists"] = r.status == SearchStatus::Found;
  j["tried"] = r.tried;
  j["status"] = to_string(r.status);
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json report_to_json(const PartitionReport& r) {
  Json j;
  j["sizes"] = r.sizes;
  j["sizes_ok"] = r.sizes_ok;
  j["contains_edge"] = r.contains_edge;
  j["s1_s2"] = r.s1s2_ok;
  j["s1_s3_contracted"] = r.s1s3_ok;
  j["s2_s3_e_contracted"] = r.s2s3e_ok;
  j["ok"] = r.ok();
  return j;
}

}  // namespace rigidity
