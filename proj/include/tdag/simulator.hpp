#pragma once

// Non-preemptive, work-conserving list scheduling of one typed DAG job.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

struct CoreRef {
  CoreTypeId type;
  std::uint32_t index = 0;
  friend bool operator==(const CoreRef&, const CoreRef&) = default;
};

/// Actual execution times plus the priority order used to break ties among
/// simultaneously eligible vertices (earlier in `priority` wins).
struct ExecutionScenario {
  std::vector<Weight> actual_time;
  std::vector<VertexId> priority;

  /// Every vertex runs for its WCET; ties by vertex index.
  static ExecutionScenario full_wcet(const TypedDag& dag);
  /// actual(v) = c(v) * k / 64 with k uniform in 1..64, and a shuffled
  /// priority order. Deterministic in `seed`.
  static ExecutionScenario random(const TypedDag& dag, std::uint64_t seed);
};

/// Throws std::invalid_argument unless 0 < actual(v) <= c(v) (or both are 0)
/// and `priority` is a permutation of the vertices.
void check_scenario(const TypedDag& dag, const ExecutionScenario& scenario);

struct ScheduledVertex {
  Weight start;
  Weight finish;
  CoreRef core;
};

struct ExecutionSequence {
  std::vector<ScheduledVertex> slots;  // indexed by vertex
  Weight response_time;
};

/// Event-driven list schedule. At every instant completions are processed
/// first, then eligible vertices take free cores of their type in priority
/// order. Zero-length vertices complete at their start instant.
ExecutionSequence simulate(const TypedDag& dag, const Platform& platform, const ExecutionScenario& scenario);

/// Walks back from the sink, each step taking the predecessor with the
/// latest finish time (lowest index on ties).
Path critical_path_of(const TypedDag& dag, const ExecutionSequence& sequence);

/// True when every step of `path` satisfies the critical-path condition.
bool is_critical_path(const TypedDag& dag, const ExecutionSequence& sequence, std::span<const VertexId> path);

struct Violation {
  Weight time;
  VertexId vertex;
  CoreTypeId type;
  std::string reason;
};

/// Checks structure (core assignment, precedence, no overlap on one core)
/// and that no eligible vertex ever waits while a core of its type idles.
/// Returns the earliest violation found, or nullopt.
std::optional<Violation> check_work_conserving(const TypedDag& dag, const Platform& platform,
                                               const ExecutionSequence& sequence);

}  // namespace tdag
