#pragma once

// Typed DAG task model: vertices carry a WCET and a core type, edges are
// precedence constraints. Everything in here is immutable once built.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tdag/rational.hpp"

namespace tdag {

template <class Tag>
struct Index {
  std::uint32_t value = 0;

  constexpr Index() = default;
  constexpr explicit Index(std::uint32_t v) : value(v) {}
  constexpr explicit Index(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Index(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t idx() const { return value; }
  friend constexpr auto operator<=>(Index, Index) = default;
};

using VertexId = Index<struct VertexTag>;
using CoreTypeId = Index<struct CoreTypeTag>;

struct Vertex {
  Weight wcet;
  CoreTypeId type;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  VertexId from;
  VertexId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Path = std::vector<VertexId>;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

// ---- errors ---------------------------------------------------------------

class TdagError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CycleDetected : public TdagError {
public:
  explicit CycleDetected(Path cycle);
  const Path& cycle() const { return cycle_; }

private:
  Path cycle_;
};

class DanglingEdge : public TdagError {
public:
  explicit DanglingEdge(Edge edge);
  Edge edge() const { return edge_; }

private:
  Edge edge_;
};

class EmptyGraph : public TdagError {
public:
  EmptyGraph() : TdagError("task graph has no vertices") {}
};

class NotAPath : public TdagError {
public:
  using TdagError::TdagError;
};

class PathExplosion : public TdagError {
public:
  explicit PathExplosion(std::uint64_t limit);
};

class UnknownType : public TdagError {
public:
  UnknownType(VertexId v, CoreTypeId type);
};

// ---- model ----------------------------------------------------------------

class TypedDag {
public:
  TypedDag() = default;
  /// Duplicate edges are dropped. Edges are not checked here; see validate().
  TypedDag(std::vector<Vertex> vertices, std::vector<Edge> edges);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(VertexId v) const { return vertices_[v.idx()]; }
  const Weight& wcet(VertexId v) const { return vertices_[v.idx()].wcet; }
  CoreTypeId type(VertexId v) const { return vertices_[v.idx()].type; }

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(VertexId u, VertexId v) const;
  std::span<const VertexId> successors(VertexId v) const { return succ_[v.idx()]; }
  std::span<const VertexId> predecessors(VertexId v) const { return pred_[v.idx()]; }

  std::vector<VertexId> sources() const;
  std::vector<VertexId> sinks() const;
  /// Unique source/sink; throws TdagError when the graph is not normalized.
  VertexId source() const;
  VertexId sink() const;

  /// One past the largest core type referenced by any vertex.
  std::size_t type_span() const;

  friend bool operator==(const TypedDag& a, const TypedDag& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> succ_;
  std::vector<std::vector<VertexId>> pred_;
};

/// Core type set S with M_s cores for each type.
class Platform {
public:
  Platform() = default;
  explicit Platform(std::vector<std::uint32_t> core_counts);

  std::size_t type_count() const { return cores_.size(); }
  std::uint32_t cores(CoreTypeId s) const { return cores_.at(s.idx()); }
  std::uint32_t max_cores() const;
  const std::vector<std::uint32_t>& core_counts() const { return cores_; }

  /// Copy with M_s replaced.
  Platform with_cores(CoreTypeId s, std::uint32_t count) const;

  friend bool operator==(const Platform&, const Platform&) = default;

private:
  std::vector<std::uint32_t> cores_;
};

/// Throws UnknownType if some vertex uses a type the platform lacks.
void check_types(const TypedDag& dag, const Platform& platform);

/// Ancestor/descendant relation as dense bit rows.
class Reachability {
public:
  Reachability() = default;
  explicit Reachability(const TypedDag& dag);

  bool is_ancestor(VertexId u, VertexId v) const { return des_[u.idx()].test(v.idx()); }
  bool ordered(VertexId u, VertexId v) const { return is_ancestor(u, v) || is_ancestor(v, u); }
  const VertexSet& descendants(VertexId v) const { return des_[v.idx()]; }
  const VertexSet& ancestors(VertexId v) const { return ans_[v.idx()]; }
  std::size_t size() const { return des_.size(); }

private:
  std::vector<VertexSet> des_;
  std::vector<VertexSet> ans_;
};

// ---- operations -----------------------------------------------------------

/// Checks edge endpoints and acyclicity (self-loops count as cycles).
/// Throws DanglingEdge or CycleDetected.
void validate(const TypedDag& dag);

/// Kahn order, ties by lowest index. Throws CycleDetected.
std::vector<VertexId> topological_order(const TypedDag& dag);

/// Adds a zero-WCET dummy source and/or sink (core type 0) when the graph
/// has several sources or sinks. Throws EmptyGraph, or the validate() errors.
TypedDag normalize(const TypedDag& dag);

Weight vol(const TypedDag& dag);
Weight vol(const TypedDag& dag, CoreTypeId s);

/// Length of the longest path, by DP over a topological order.
Weight longest_path(const TypedDag& dag);
/// A path achieving longest_path(), ties broken by lowest vertex index.
Path longest_path_vertices(const TypedDag& dag);

/// Sum of WCETs along the path. Throws NotAPath on a missing edge.
Weight path_length(const TypedDag& dag, std::span<const VertexId> path);

bool is_complete_path(const TypedDag& dag, std::span<const VertexId> path);

Reachability reachability(const TypedDag& dag);

/// par(v): same-type vertices neither ancestor nor descendant of v, v excluded.
VertexSet par_bits(const TypedDag& dag, const Reachability& reach, VertexId v);
std::vector<VertexId> par_set(const TypedDag& dag, const Reachability& reach, VertexId v);

/// Calls visit once per complete path in lexicographic successor order.
/// Throws PathExplosion as soon as more than `limit` paths have been seen.
void for_each_complete_path(const TypedDag& dag, std::uint64_t limit,
                            const std::function<void(std::span<const VertexId>)>& visit);
std::vector<Path> enumerate_complete_paths(const TypedDag& dag, std::uint64_t limit);

/// Number of complete paths, or nullopt when it exceeds `limit`.
std::optional<std::uint64_t> count_complete_paths(const TypedDag& dag, std::uint64_t limit);

std::vector<VertexId> to_vertex_ids(const VertexSet& bits);

}  // namespace tdag

template <class Tag>
struct std::hash<tdag::Index<Tag>> {
  std::size_t operator()(tdag::Index<Tag> i) const noexcept { return std::hash<std::uint32_t>{}(i.value); }
};
