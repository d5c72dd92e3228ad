#include "support/fixtures.hpp"

#include <algorithm>
#include <set>

namespace tdag::testing {

TypedDag make_dag(std::vector<std::pair<Weight, std::uint32_t>> vertices,
                  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<Vertex> vs;
  for (auto& [w, t] : vertices) vs.push_back({w, CoreTypeId(t)});
  std::vector<Edge> es;
  for (auto [u, v] : edges) es.push_back({VertexId(u), VertexId(v)});
  return TypedDag(std::move(vs), std::move(es));
}

TypedDag example_task() {
  // index:           0       1       2       3       4       5       6
  //                  7       8       9      10      11      12
  return make_dag({{2, 1}, {5, 1}, {3, 1}, {2, 0}, {4, 1}, {4, 1}, {3, 0},
                   {4, 0}, {3, 1}, {3, 1}, {4, 1}, {6, 1}, {2, 0}},
                  {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6},
                   {1, 7}, {2, 7}, {3, 7},
                   {4, 8}, {5, 9}, {8, 10}, {9, 10},
                   {7, 11}, {11, 12}, {10, 12}, {6, 12}});
}

TypedDag example_task_alt() {
  // Fork at 0, join at 3. Branches 0-1-2-3, 0-4-3 and 0-7-3 are 19 long,
  // 0-5-6-3 is 15.
  return make_dag({{5, 1}, {4, 0}, {6, 1}, {4, 0}, {10, 1}, {3, 0}, {3, 1}, {10, 1}},
                  {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 3}, {0, 5}, {5, 6}, {6, 3}, {0, 7}, {7, 3}});
}

TypedDag chain(std::vector<Weight> wcets, std::uint32_t type) {
  std::vector<std::pair<Weight, std::uint32_t>> vs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
  for (std::size_t i = 0; i < wcets.size(); ++i) {
    vs.emplace_back(wcets[i], type);
    if (i > 0) es.emplace_back(static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(i));
  }
  return make_dag(std::move(vs), std::move(es));
}

TypedDag diamond(Weight a, std::uint32_t type_a, Weight b, std::uint32_t type_b) {
  return make_dag({{0, 0}, {a, type_a}, {b, type_b}, {0, 0}}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

Task random_task(std::uint64_t seed, std::uint32_t max_vertices, std::uint32_t max_types, std::uint32_t max_cores) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) { return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng); };
  const std::uint32_t n = pick(1, max_vertices);
  const std::uint32_t types = pick(1, max_types);
  const double density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  std::bernoulli_distribution edge(density);

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Vertex> vs(n);
  for (auto& v : vs) {
    std::uint32_t w = pick(0, 18);
    v.wcet = Weight(w, 2);
    v.type = CoreTypeId(pick(0, types - 1));
  }
  std::vector<Edge> es;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (edge(rng)) es.push_back({VertexId(order[i]), VertexId(order[j])});

  std::vector<std::uint32_t> cores(types);
  for (auto& m : cores) m = pick(1, max_cores);
  return {normalize(TypedDag(std::move(vs), std::move(es))), Platform(std::move(cores))};
}

bool dfs_reaches(const TypedDag& dag, VertexId u, VertexId v) {
  std::vector<bool> seen(dag.size(), false);
  std::vector<VertexId> stack(dag.successors(u).begin(), dag.successors(u).end());
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    if (seen[x.idx()]) continue;
    seen[x.idx()] = true;
    for (VertexId y : dag.successors(x)) stack.push_back(y);
  }
  return false;
}

namespace {

void extend_paths(const TypedDag& dag, Path& prefix, std::vector<Path>& out) {
  auto succ = dag.successors(prefix.back());
  if (succ.empty()) {
    out.push_back(prefix);
    return;
  }
  for (VertexId w : succ) {
    prefix.push_back(w);
    extend_paths(dag, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Path> naive_complete_paths(const TypedDag& dag) {
  std::vector<Path> out;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (!dag.predecessors(VertexId(i)).empty()) continue;
    Path p{VertexId(i)};
    extend_paths(dag, p, out);
  }
  return out;
}

std::vector<VertexId> naive_par(const TypedDag& dag, VertexId v) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    VertexId u(i);
    if (u == v || dag.type(u) != dag.type(v)) continue;
    if (dfs_reaches(dag, u, v) || dfs_reaches(dag, v, u)) continue;
    out.push_back(u);
  }
  return out;
}

Weight naive_path_bound(const TypedDag& dag, const Platform& platform, const Path& path) {
  Weight bound;
  for (VertexId v : path) bound += dag.wcet(v);
  for (std::size_t s = 0; s < platform.type_count(); ++s) {
    std::set<VertexId> ivs;
    for (VertexId v : path) {
      if (dag.type(v).idx() != s) continue;
      for (VertexId u : naive_par(dag, v)) ivs.insert(u);
    }
    Weight interfering;
    for (VertexId u : ivs) interfering += dag.wcet(u);
    bound += interfering / Weight(platform.cores(CoreTypeId(s)));
  }
  return bound;
}

}  // namespace tdag::testing
