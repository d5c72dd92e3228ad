#pragma once

// Hand-built tasks and test-only oracles. Nothing here calls into the
// library's reachability, path enumeration, or bound code.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag::testing {

struct Task {
  TypedDag dag;
  Platform platform;
};

/// Builds a graph from (wcet, type) pairs and index edges.
TypedDag make_dag(std::vector<std::pair<Weight, std::uint32_t>> vertices,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// 13-vertex two-type task (core types 0 and 1) with len(G) = 19,
/// vol_0 = 11, vol_1 = 34, longest path v0 v1 v7 v11 v12 and
/// par(v1) = {v2,v4,v5,v8,v9,v10}, par(v7) = {v6}, par(v11) = {v4,v5,v8,v9,v10}.
TypedDag example_task();
/// A different topology with the same len/vol aggregates.
TypedDag example_task_alt();

TypedDag chain(std::vector<Weight> wcets, std::uint32_t type = 0);
/// src -> {a, b} -> snk; a and b have the given types and WCETs.
TypedDag diamond(Weight a, std::uint32_t type_a, Weight b, std::uint32_t type_b);

/// Random normalized task: up to max_vertices vertices, up to max_types types,
/// core counts in [1, max_cores], WCETs in {0, 1/2, 1, ..., 9}.
Task random_task(std::uint64_t seed, std::uint32_t max_vertices = 15, std::uint32_t max_types = 3,
                 std::uint32_t max_cores = 4);

// ---- oracles --------------------------------------------------------------

/// Is there a path u -> ... -> v of length >= 1? Plain DFS per query.
bool dfs_reaches(const TypedDag& dag, VertexId u, VertexId v);

/// All complete paths by naive recursion from every source to every sink.
std::vector<Path> naive_complete_paths(const TypedDag& dag);

/// par(v) straight from the definition, using dfs_reaches.
std::vector<VertexId> naive_par(const TypedDag& dag, VertexId v);

/// len(pi) + sum_s w(union of naive_par over type-s path vertices) / M_s.
Weight naive_path_bound(const TypedDag& dag, const Platform& platform, const Path& path);

}  // namespace tdag::testing
