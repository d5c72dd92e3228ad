#pragma once

// JSON and CSV surfaces. Rationals travel as "p/q" strings; integer weights
// may also appear as plain JSON numbers.
//
// Task:     { "types": |S|, "vertices": [{"id", "wcet", "type"}],
//             "edges": [[u, v], ...], "platform": [M_0, M_1, ...] }
// Report:   bound values as "p/q", durations in nanoseconds.
// Sequence: per-vertex start/finish/core plus the response time.

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "tdag/bounds.hpp"
#include "tdag/graph.hpp"
#include "tdag/simulator.hpp"

namespace tdag {

class ParseError : public TdagError {
public:
  using TdagError::TdagError;
};

struct TaskFile {
  TypedDag dag;
  std::optional<Platform> platform;
  std::size_t types = 0;
};

Weight weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const Weight& w);

/// Throws ParseError on schema problems and DanglingEdge on unknown edge ends.
/// Vertex ids are remapped densely in order of appearance.
TaskFile task_from_json(const nlohmann::json& j);
nlohmann::json task_to_json(const TypedDag& dag, const Platform& platform);

TaskFile read_task_file(const std::string& path);

nlohmann::json report_to_json(const BoundReport& report);
nlohmann::json sequence_to_json(const TypedDag& dag, const ExecutionSequence& sequence);
/// One line per execution interval: vertex,type,core,start,finish,start_value,finish_value.
void write_sequence_csv(std::ostream& os, const TypedDag& dag, const ExecutionSequence& sequence);

}  // namespace tdag
