#pragma once

// Parameter sweeps over randomly generated tasks (acceptance ratio,
// normalized bound, analysis time) and the tuple-vs-path state-space report.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tdag/generator.hpp"

namespace tdag {

enum class SweepParameter { Utilization, Vertices, EdgeProbability, Types, Cores };

/// "U", "V", "pr", "S", "M" (case-insensitive); throws std::invalid_argument.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct BoundSelection {
  bool old_b = true;
  bool new_b_1 = true;
  bool new_b_2 = true;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Utilization;
  std::vector<double> values;
  std::size_t trials = 500;
  GenConfig base = GenConfig::desk();
  BoundSelection bounds;
  /// Deterministic per-instance budget for the tuple search.
  std::uint64_t tuple_budget = 10'000'000;
  /// Optional wall-clock budget; makes timeouts depend on the machine.
  std::optional<std::chrono::milliseconds> time_budget;
  /// Count complete paths when there are at most this many (0 disables).
  std::uint64_t path_count_limit = 1'000'000;
  std::size_t workers = 1;

  void check() const;
};

struct BoundColumn {
  double acceptance = 0.0;   // fraction with bound <= period
  double normalized = 0.0;   // mean of bound / OLD-B
  double mean_time_ms = 0.0;
};

struct SweepRow {
  double value = 0.0;
  std::size_t instances = 0;
  std::size_t completed = 0;   // instances that finished every enabled bound
  std::size_t timeouts = 0;    // tuple or time budget exceeded
  std::optional<BoundColumn> old_b;
  std::optional<BoundColumn> new_b_1;
  std::optional<BoundColumn> new_b_2;
  double mean_tuples = 0.0;
  std::optional<double> mean_paths;  // over instances whose paths were counted
  std::size_t paths_counted = 0;
};

/// GenConfig for one sweep point: base with the swept parameter pinned and a
/// seed that depends on the trial only.
GenConfig sweep_point_config(const SweepSpec& spec, std::size_t point, std::size_t trial);

/// Aggregates are computed over completed instances only.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);
nlohmann::json sweep_summary_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

// ---- state space ----------------------------------------------------------

struct StateSpaceSpec {
  std::vector<std::uint32_t> diamond_ks{1, 2, 3, 4, 5, 6, 8, 10, 12, 14};
  std::size_t random_instances = 100;
  GenConfig random_config = [] {
    GenConfig c = GenConfig::desk();
    c.vertices = {15, 15};
    c.types = {1, 3};
    return c;
  }();
  std::uint64_t path_limit = 100'000'000;
};

struct StateSpaceRow {
  std::string family;   // "diamonds" or "random"
  std::uint64_t parameter = 0;  // k for diamonds, seed index for random
  std::size_t vertices = 0;
  std::uint64_t paths = 0;
  std::uint64_t tuples = 0;
  std::size_t max_path_vertices = 0;
  double ratio = 0.0;  // tuples / paths
};

struct StateSpaceSummary {
  std::vector<StateSpaceRow> rows;
  std::size_t skipped = 0;  // path count above the limit
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
};

StateSpaceSummary state_space_report(const StateSpaceSpec& spec);
void write_state_space_csv(std::ostream& os, const StateSpaceSummary& summary);

/// Worker count from TDAG_WORKERS, else hardware concurrency.
std::size_t default_worker_count();

}  // namespace tdag
