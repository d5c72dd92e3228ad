#include "tdag/io.hpp"

#include <fstream>
#include <map>
#include <ostream>

namespace tdag {

using nlohmann::json;

Weight weight_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Weight(j.get<std::int64_t>());
    if (j.is_number_float()) return Weight::parse(j.dump());
    if (j.is_string()) return Weight::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

json weight_to_json(const Weight& w) { return w.str(); }

namespace {

template <class T>
T get_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

TaskFile task_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("task file must be a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseError("missing 'vertices' array");

  TaskFile out;
  std::map<std::int64_t, VertexId> ids;
  std::vector<Vertex> vertices;
  for (const json& v : j["vertices"]) {
    if (!v.is_object()) throw ParseError("vertex entries must be objects");
    auto id = get_field<std::int64_t>(v, "id");
    auto type = get_field<std::int64_t>(v, "type");
    if (!v.contains("wcet")) throw ParseError("vertex " + std::to_string(id) + " lacks 'wcet'");
    Weight wcet = weight_from_json(v["wcet"]);
    if (wcet < Weight(0)) throw ParseError("vertex " + std::to_string(id) + " has a negative wcet");
    if (type < 0) throw ParseError("vertex " + std::to_string(id) + " has a negative type");
    if (!ids.emplace(id, VertexId(vertices.size())).second) {
      throw ParseError("duplicate vertex id " + std::to_string(id));
    }
    vertices.push_back({wcet, CoreTypeId(static_cast<std::uint32_t>(type))});
  }

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("'edges' must be an array");
    for (const json& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw ParseError("edges must be [u, v] integer pairs");
      }
      auto u = e[0].get<std::int64_t>();
      auto v = e[1].get<std::int64_t>();
      auto iu = ids.find(u);
      auto iv = ids.find(v);
      if (iu == ids.end() || iv == ids.end()) {
        // Report the unknown end with an index past the vertex range.
        VertexId bad(vertices.size());
        throw DanglingEdge({iu == ids.end() ? bad : iu->second, iv == ids.end() ? bad : iv->second});
      }
      edges.push_back({iu->second, iv->second});
    }
  }
  out.dag = TypedDag(std::move(vertices), std::move(edges));

  if (j.contains("platform")) {
    if (!j["platform"].is_array()) throw ParseError("'platform' must be an array of core counts");
    std::vector<std::uint32_t> cores;
    for (const json& m : j["platform"]) {
      if (!m.is_number_integer() || m.get<std::int64_t>() < 1) throw ParseError("core counts must be integers >= 1");
      cores.push_back(m.get<std::uint32_t>());
    }
    out.platform = Platform(std::move(cores));
  }
  if (j.contains("types")) {
    auto types = get_field<std::int64_t>(j, "types");
    if (types < 0) throw ParseError("'types' must be non-negative");
    out.types = static_cast<std::size_t>(types);
    if (out.platform && out.platform->type_count() != out.types) {
      throw ParseError("'types' disagrees with the platform length");
    }
  } else {
    out.types = out.platform ? out.platform->type_count() : out.dag.type_span();
  }
  return out;
}

json task_to_json(const TypedDag& dag, const Platform& platform) {
  json vertices = json::array();
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const Vertex& v = dag.vertex(VertexId(i));
    json wcet = v.wcet.is_integer() ? json(v.wcet.num()) : json(v.wcet.fraction_str());
    vertices.push_back({{"id", i}, {"wcet", wcet}, {"type", v.type.value}});
  }
  json edges = json::array();
  for (const Edge& e : dag.edges()) edges.push_back({e.from.value, e.to.value});
  return {{"types", platform.type_count()},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"platform", platform.core_counts()}};
}

TaskFile read_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return task_from_json(j);
}

json report_to_json(const BoundReport& report) {
  json j;
  j["old_b"] = report.old_b.fraction_str();
  j["new_b_1"] = report.new_b_1.fraction_str();
  if (report.new_b_2) j["new_b_2"] = report.new_b_2->fraction_str();
  json stats;
  if (report.search) {
    stats["tuples_generated"] = report.search->generated;
    stats["tuples_retained_peak"] = report.search->retained_peak;
    stats["tuples_pruned"] = report.search->pruned;
    stats["tuples_evicted"] = report.search->evicted;
  }
  if (report.complete_path_count) {
    stats["complete_path_count"] = *report.complete_path_count;
  } else {
    stats["complete_path_count"] = "not counted";
  }
  j["stats"] = stats;
  json durations{{"old_b", report.old_b_time.count()}, {"new_b_1", report.new_b_1_time.count()}};
  if (report.new_b_2) durations["new_b_2"] = report.new_b_2_time.count();
  j["durations_ns"] = durations;
  return j;
}

json sequence_to_json(const TypedDag& dag, const ExecutionSequence& sequence) {
  json vertices = json::array();
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const ScheduledVertex& s = sequence.slots[i];
    vertices.push_back({{"id", i},
                        {"start", s.start.fraction_str()},
                        {"finish", s.finish.fraction_str()},
                        {"core_type", s.core.type.value},
                        {"core_index", s.core.index}});
  }
  return {{"response_time", sequence.response_time.fraction_str()}, {"vertices", std::move(vertices)}};
}

void write_sequence_csv(std::ostream& os, const TypedDag& dag, const ExecutionSequence& sequence) {
  os << "vertex,type,core,start,finish,start_value,finish_value\n";
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const ScheduledVertex& s = sequence.slots[i];
    os << i << ',' << s.core.type.value << ',' << s.core.index << ',' << s.start.fraction_str() << ','
       << s.finish.fraction_str() << ',' << s.start.decimal_str(6) << ',' << s.finish.decimal_str(6) << '\n';
  }
}

}  // namespace tdag
