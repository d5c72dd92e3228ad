#include "tdag/graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tdag {

namespace {

std::string describe_cycle(const Path& cycle) {
  std::ostringstream os;
  os << "cycle detected:";
  for (VertexId v : cycle) os << ' ' << v.value;
  return os.str();
}

}  // namespace

CycleDetected::CycleDetected(Path cycle) : TdagError(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

DanglingEdge::DanglingEdge(Edge edge)
    : TdagError("edge (" + std::to_string(edge.from.value) + ", " + std::to_string(edge.to.value) +
                ") references an unknown vertex"),
      edge_(edge) {}

PathExplosion::PathExplosion(std::uint64_t limit)
    : TdagError("more than " + std::to_string(limit) + " complete paths") {}

UnknownType::UnknownType(VertexId v, CoreTypeId type)
    : TdagError("vertex " + std::to_string(v.value) + " has core type " + std::to_string(type.value) +
                " which the platform does not define") {}

// ---------------------------------------------------------------------------

TypedDag::TypedDag(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  succ_.resize(vertices_.size());
  pred_.resize(vertices_.size());
  for (const Edge& e : edges_) {
    if (e.from.idx() >= vertices_.size() || e.to.idx() >= vertices_.size()) continue;
    succ_[e.from.idx()].push_back(e.to);
    pred_[e.to.idx()].push_back(e.from);
  }
  for (auto& p : pred_) std::sort(p.begin(), p.end());
}

bool TypedDag::has_edge(VertexId u, VertexId v) const {
  if (u.idx() >= size()) return false;
  const auto& s = succ_[u.idx()];
  return std::binary_search(s.begin(), s.end(), v);
}

std::vector<VertexId> TypedDag::sources() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (pred_[i].empty()) out.emplace_back(i);
  return out;
}

std::vector<VertexId> TypedDag::sinks() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (succ_[i].empty()) out.emplace_back(i);
  return out;
}

VertexId TypedDag::source() const {
  auto s = sources();
  if (s.size() != 1) throw TdagError("graph does not have a unique source; normalize it first");
  return s.front();
}

VertexId TypedDag::sink() const {
  auto s = sinks();
  if (s.size() != 1) throw TdagError("graph does not have a unique sink; normalize it first");
  return s.front();
}

std::size_t TypedDag::type_span() const {
  std::size_t span = 0;
  for (const Vertex& v : vertices_) span = std::max(span, v.type.idx() + 1);
  return span;
}

Platform::Platform(std::vector<std::uint32_t> core_counts) : cores_(std::move(core_counts)) {
  for (std::size_t s = 0; s < cores_.size(); ++s) {
    if (cores_[s] < 1) {
      throw std::invalid_argument("core type " + std::to_string(s) + " needs at least one core");
    }
  }
}

std::uint32_t Platform::max_cores() const {
  if (cores_.empty()) throw std::invalid_argument("platform defines no core types");
  return *std::max_element(cores_.begin(), cores_.end());
}

Platform Platform::with_cores(CoreTypeId s, std::uint32_t count) const {
  auto counts = cores_;
  counts.at(s.idx()) = count;
  return Platform(std::move(counts));
}

void check_types(const TypedDag& dag, const Platform& platform) {
  for (std::size_t i = 0; i < dag.size(); ++i) {
    VertexId v(i);
    if (dag.type(v).idx() >= platform.type_count()) throw UnknownType(v, dag.type(v));
  }
}

// ---------------------------------------------------------------------------

void validate(const TypedDag& dag) {
  for (const Edge& e : dag.edges()) {
    if (e.from.idx() >= dag.size() || e.to.idx() >= dag.size()) throw DanglingEdge(e);
  }
  (void)topological_order(dag);
}

std::vector<VertexId> topological_order(const TypedDag& dag) {
  const std::size_t n = dag.size();
  std::vector<std::size_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = dag.predecessors(VertexId(i)).size();

  // Min-index frontier keeps the order deterministic.
  std::vector<VertexId> frontier;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) frontier.emplace_back(i);
  std::make_heap(frontier.begin(), frontier.end(), std::greater<>{});

  std::vector<VertexId> order;
  order.reserve(n);
  while (!frontier.empty()) {
    std::pop_heap(frontier.begin(), frontier.end(), std::greater<>{});
    VertexId v = frontier.back();
    frontier.pop_back();
    order.push_back(v);
    for (VertexId w : dag.successors(v)) {
      if (--indegree[w.idx()] == 0) {
        frontier.push_back(w);
        std::push_heap(frontier.begin(), frontier.end(), std::greater<>{});
      }
    }
  }
  if (order.size() == n) return order;

  // Every leftover vertex has a leftover predecessor; walk backwards until a repeat.
  std::size_t start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<std::size_t> seen_at(n, std::numeric_limits<std::size_t>::max());
  Path walk;
  VertexId cur(start);
  while (seen_at[cur.idx()] == std::numeric_limits<std::size_t>::max()) {
    seen_at[cur.idx()] = walk.size();
    walk.push_back(cur);
    for (VertexId p : dag.predecessors(cur)) {
      if (indegree[p.idx()] != 0) {
        cur = p;
        break;
      }
    }
  }
  Path cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[cur.idx()]), walk.end());
  std::reverse(cycle.begin(), cycle.end());
  throw CycleDetected(std::move(cycle));
}

TypedDag normalize(const TypedDag& dag) {
  if (dag.empty()) throw EmptyGraph();
  validate(dag);
  auto sources = dag.sources();
  auto sinks = dag.sinks();
  if (sources.size() == 1 && sinks.size() == 1) return dag;

  std::vector<Vertex> vertices = dag.vertices();
  std::vector<Edge> edges = dag.edges();
  if (sources.size() > 1) {
    VertexId src(vertices.size());
    vertices.push_back({Weight(0), CoreTypeId(0)});
    for (VertexId s : sources) edges.push_back({src, s});
  }
  if (sinks.size() > 1) {
    VertexId snk(vertices.size());
    vertices.push_back({Weight(0), CoreTypeId(0)});
    for (VertexId s : sinks) edges.push_back({s, snk});
  }
  return TypedDag(std::move(vertices), std::move(edges));
}

Weight vol(const TypedDag& dag) {
  Weight total;
  for (const Vertex& v : dag.vertices()) total += v.wcet;
  return total;
}

Weight vol(const TypedDag& dag, CoreTypeId s) {
  Weight total;
  for (const Vertex& v : dag.vertices())
    if (v.type == s) total += v.wcet;
  return total;
}

namespace {

struct LongestPathTable {
  std::vector<Weight> best;  // longest path ending at v, inclusive
  std::vector<std::optional<VertexId>> prev;
};

LongestPathTable longest_path_table(const TypedDag& dag) {
  LongestPathTable t;
  t.best.resize(dag.size());
  t.prev.resize(dag.size());
  for (VertexId v : topological_order(dag)) {
    Weight into;
    for (VertexId p : dag.predecessors(v)) {
      if (!t.prev[v.idx()] || t.best[p.idx()] > into) {
        into = t.best[p.idx()];
        t.prev[v.idx()] = p;
      }
    }
    t.best[v.idx()] = into + dag.wcet(v);
  }
  return t;
}

}  // namespace

Weight longest_path(const TypedDag& dag) {
  auto t = longest_path_table(dag);
  Weight best;
  for (const Weight& w : t.best) best = std::max(best, w);
  return best;
}

Path longest_path_vertices(const TypedDag& dag) {
  if (dag.empty()) return {};
  auto t = longest_path_table(dag);
  std::optional<std::size_t> end;
  for (std::size_t i = 0; i < t.best.size(); ++i)
    if (dag.successors(VertexId(i)).empty() && (!end || t.best[i] > t.best[*end])) end = i;
  Path path{VertexId(*end)};
  while (auto p = t.prev[path.back().idx()]) path.push_back(*p);
  std::reverse(path.begin(), path.end());
  return path;
}

Weight path_length(const TypedDag& dag, std::span<const VertexId> path) {
  Weight total;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].idx() >= dag.size()) throw NotAPath("vertex " + std::to_string(path[i].value) + " does not exist");
    if (i > 0 && !dag.has_edge(path[i - 1], path[i])) {
      throw NotAPath("no edge (" + std::to_string(path[i - 1].value) + ", " + std::to_string(path[i].value) + ")");
    }
    total += dag.wcet(path[i]);
  }
  return total;
}

bool is_complete_path(const TypedDag& dag, std::span<const VertexId> path) {
  if (path.empty()) return false;
  if (!dag.predecessors(path.front()).empty() || !dag.successors(path.back()).empty()) return false;
  for (std::size_t i = 1; i < path.size(); ++i)
    if (!dag.has_edge(path[i - 1], path[i])) return false;
  return true;
}

Reachability::Reachability(const TypedDag& dag) {
  const std::size_t n = dag.size();
  des_.assign(n, VertexSet(n));
  ans_.assign(n, VertexSet(n));
  auto order = topological_order(dag);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexSet& row = des_[it->idx()];
    for (VertexId w : dag.successors(*it)) {
      row.set(w.idx());
      row |= des_[w.idx()];
    }
  }
  for (VertexId v : order) {
    VertexSet& row = ans_[v.idx()];
    for (VertexId p : dag.predecessors(v)) {
      row.set(p.idx());
      row |= ans_[p.idx()];
    }
  }
}

Reachability reachability(const TypedDag& dag) { return Reachability(dag); }

VertexSet par_bits(const TypedDag& dag, const Reachability& reach, VertexId v) {
  VertexSet out(dag.size());
  const CoreTypeId s = dag.type(v);
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (dag.type(VertexId(i)) == s) out.set(i);
  out -= reach.ancestors(v);
  out -= reach.descendants(v);
  out.reset(v.idx());
  return out;
}

std::vector<VertexId> par_set(const TypedDag& dag, const Reachability& reach, VertexId v) {
  return to_vertex_ids(par_bits(dag, reach, v));
}

std::vector<VertexId> to_vertex_ids(const VertexSet& bits) {
  std::vector<VertexId> out;
  out.reserve(bits.count());
  for (auto i = bits.find_first(); i != VertexSet::npos; i = bits.find_next(i)) out.emplace_back(i);
  return out;
}

void for_each_complete_path(const TypedDag& dag, std::uint64_t limit,
                            const std::function<void(std::span<const VertexId>)>& visit) {
  if (dag.empty()) return;
  const VertexId src = dag.source();
  Path path{src};
  std::vector<std::size_t> next_child{0};
  std::uint64_t seen = 0;
  while (!path.empty()) {
    VertexId top = path.back();
    auto succ = dag.successors(top);
    if (succ.empty()) {
      if (++seen > limit) throw PathExplosion(limit);
      visit(path);
      path.pop_back();
      next_child.pop_back();
      continue;
    }
    std::size_t& k = next_child.back();
    if (k == succ.size()) {
      path.pop_back();
      next_child.pop_back();
      continue;
    }
    path.push_back(succ[k++]);
    next_child.push_back(0);
  }
}

std::vector<Path> enumerate_complete_paths(const TypedDag& dag, std::uint64_t limit) {
  std::vector<Path> out;
  for_each_complete_path(dag, limit, [&](std::span<const VertexId> p) { out.emplace_back(p.begin(), p.end()); });
  return out;
}

std::optional<std::uint64_t> count_complete_paths(const TypedDag& dag, std::uint64_t limit) {
  if (dag.empty()) return 0;
  // Saturating count of paths from each vertex to a sink.
  const std::uint64_t cap = limit + 1;
  std::vector<std::uint64_t> to_sink(dag.size(), 0);
  auto order = topological_order(dag);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto succ = dag.successors(*it);
    if (succ.empty()) {
      to_sink[it->idx()] = 1;
      continue;
    }
    std::uint64_t total = 0;
    for (VertexId w : succ) total = std::min(cap, total + to_sink[w.idx()]);
    to_sink[it->idx()] = total;
  }
  std::uint64_t total = 0;
  for (VertexId s : dag.sources()) total = std::min(cap, total + to_sink[s.idx()]);
  if (total > limit) return std::nullopt;
  return total;
}

}  // namespace tdag
