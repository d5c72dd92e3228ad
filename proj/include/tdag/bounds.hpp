#pragma once

// Worst-case response time bounds for a typed DAG on a heterogeneous platform:
//
//   old_b     (1 - 1/max M) * len(G) + sum_s vol_s / M_s
//   new_b_1   len(scaled G) + sum_s vol_s / M_s
//   new_b_2   max over complete paths of len(pi) + sum_s w(ivs(pi, s)) / M_s
//
// new_b_2 is computed exactly by a width-first search over abstract tuples
// <v, last vertex of each type, accumulated bound> with dominance pruning;
// new_b_2_bruteforce enumerates paths and serves as its oracle.

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

class ResourceLimit : public TdagError {
public:
  explicit ResourceLimit(std::uint64_t limit);
};

class TimeBudgetExceeded : public TdagError {
public:
  TimeBudgetExceeded() : TdagError("analysis time budget exceeded") {}
};

class NotASuccessor : public TdagError {
public:
  NotASuccessor(VertexId from, VertexId to);
};

class VertexMismatch : public TdagError {
public:
  VertexMismatch(VertexId a, VertexId b);
};

/// Precomputed per-(task, platform) data shared by the path-based bounds.
/// Requires a normalized, valid task whose types the platform covers.
class BoundContext {
public:
  BoundContext(const TypedDag& dag, const Platform& platform);

  const TypedDag& dag() const { return dag_; }
  const Platform& platform() const { return platform_; }
  const Reachability& reach() const { return reach_; }
  const std::vector<VertexId>& topo_order() const { return topo_; }
  std::size_t type_count() const { return platform_.type_count(); }

  VertexId source() const { return source_; }
  VertexId sink() const { return sink_; }

  const VertexSet& par(VertexId v) const { return par_[v.idx()]; }
  /// Total WCET of the vertices in `set`.
  Weight weight_of(const VertexSet& set) const;

  /// w(par(v) \ par(prev)) / M_type(v); prev = nullopt stands for "no earlier
  /// vertex of this type", whose par set is empty.
  const Weight& interference_step(VertexId v, std::optional<VertexId> prev) const;
  /// par(x) and des(y) are disjoint.
  bool par_disjoint_from_descendants(VertexId x, VertexId y) const;

private:
  TypedDag dag_;
  Platform platform_;
  Reachability reach_;
  std::vector<VertexId> topo_;
  VertexId source_;
  VertexId sink_;
  std::vector<VertexSet> par_;
  std::vector<std::uint32_t> rank_in_type_;          // position of v among vertices of its type
  std::vector<std::vector<VertexId>> members_;       // vertices of each type
  std::vector<std::vector<Weight>> step_;            // [v][rank(prev)+1], slot 0 = no prev
  std::vector<VertexSet> compatible_;                // [x] bit y set iff par(x) & des(y) empty
};

// ---- closed-form bounds ---------------------------------------------------

Weight old_b(const TypedDag& dag, const Platform& platform);
TypedDag scaled_graph(const TypedDag& dag, const Platform& platform);
Weight new_b_1(const TypedDag& dag, const Platform& platform);

// ---- path-based bound -----------------------------------------------------

VertexSet ivs_bits(const BoundContext& ctx, std::span<const VertexId> path, CoreTypeId s);
std::vector<VertexId> ivs(const BoundContext& ctx, std::span<const VertexId> path, CoreTypeId s);
/// len(pi) + sum_s w(ivs(pi, s)) / M_s.
Weight path_bound(const BoundContext& ctx, std::span<const VertexId> path);

/// Maximum path_bound over every complete path. Throws PathExplosion.
Weight new_b_2_bruteforce(const BoundContext& ctx, std::uint64_t path_limit);
Weight new_b_2_bruteforce(const TypedDag& dag, const Platform& platform, std::uint64_t path_limit);

// ---- tuple search ---------------------------------------------------------

/// Abstraction of every path prefix ending at `vertex` that shares the same
/// per-type last vertex (`delta`, nullopt = type not seen yet) and bound `r`.
struct AbstractTuple {
  VertexId vertex;
  std::vector<std::optional<VertexId>> delta;
  Weight r;

  friend bool operator==(const AbstractTuple&, const AbstractTuple&) = default;
};

/// Tuple for the path consisting of the source alone.
AbstractTuple initial_tuple(const BoundContext& ctx);
/// Extends `t` by the successor `v`. Throws NotASuccessor.
AbstractTuple extend_tuple(const BoundContext& ctx, const AbstractTuple& t, VertexId v);
/// t1 dominates t2: r1 >= r2 and, per type, delta1 is unset or both are set
/// with par(delta1) disjoint from des(delta2). Throws VertexMismatch.
bool dominates(const BoundContext& ctx, const AbstractTuple& t1, const AbstractTuple& t2);

struct SearchOptions {
  /// Discard tuples dominated by a retained tuple at the same vertex.
  bool pruning = true;
  /// Only reject dominated newcomers; never evict retained tuples.
  bool strict_paper = false;
  std::uint64_t max_retained = 10'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchStats {
  std::uint64_t generated = 0;
  std::uint64_t retained_peak = 0;
  std::uint64_t pruned = 0;   // newcomers rejected
  std::uint64_t evicted = 0;  // retained tuples displaced by a newcomer
};

struct SearchResult {
  Weight bound;
  SearchStats stats;
};

/// Exact max over complete paths of path_bound, by tuple search.
/// Throws ResourceLimit or TimeBudgetExceeded.
SearchResult new_b_2(const BoundContext& ctx, const SearchOptions& options = {});
SearchResult new_b_2(const TypedDag& dag, const Platform& platform, const SearchOptions& options = {});

// ---- report ---------------------------------------------------------------

struct AnalyzeOptions {
  bool compute_new_b_2 = true;
  SearchOptions search;
  /// Count complete paths when there are at most this many.
  std::optional<std::uint64_t> count_paths_up_to;
};

struct BoundReport {
  Weight old_b;
  Weight new_b_1;
  std::optional<Weight> new_b_2;
  std::optional<SearchStats> search;
  std::optional<std::uint64_t> complete_path_count;
  std::chrono::nanoseconds old_b_time{0};
  std::chrono::nanoseconds new_b_1_time{0};
  std::chrono::nanoseconds new_b_2_time{0};
};

BoundReport analyze(const TypedDag& dag, const Platform& platform, const AnalyzeOptions& options = {});

}  // namespace tdag
