#include "tdag/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace tdag {

ExecutionScenario ExecutionScenario::full_wcet(const TypedDag& dag) {
  ExecutionScenario sc;
  sc.actual_time.reserve(dag.size());
  for (const Vertex& v : dag.vertices()) sc.actual_time.push_back(v.wcet);
  for (std::size_t i = 0; i < dag.size(); ++i) sc.priority.emplace_back(i);
  return sc;
}

ExecutionScenario ExecutionScenario::random(const TypedDag& dag, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> grid(1, 64);
  ExecutionScenario sc;
  sc.actual_time.reserve(dag.size());
  for (const Vertex& v : dag.vertices()) sc.actual_time.push_back(v.wcet * Weight(grid(rng), 64));
  for (std::size_t i = 0; i < dag.size(); ++i) sc.priority.emplace_back(i);
  std::shuffle(sc.priority.begin(), sc.priority.end(), rng);
  return sc;
}

void check_scenario(const TypedDag& dag, const ExecutionScenario& scenario) {
  if (scenario.actual_time.size() != dag.size() || scenario.priority.size() != dag.size()) {
    throw std::invalid_argument("scenario does not cover every vertex");
  }
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const Weight& a = scenario.actual_time[i];
    const Weight& c = dag.wcet(VertexId(i));
    bool ok = c.is_zero() ? a.is_zero() : (a > Weight(0) && a <= c);
    if (!ok) {
      throw std::invalid_argument("actual time of vertex " + std::to_string(i) + " must lie in (0, " + c.str() + "]");
    }
  }
  std::vector<bool> seen(dag.size(), false);
  for (VertexId v : scenario.priority) {
    if (v.idx() >= dag.size() || seen[v.idx()]) throw std::invalid_argument("priority is not a permutation");
    seen[v.idx()] = true;
  }
}

namespace {

struct Running {
  Weight finish;
  VertexId vertex;
  bool operator>(const Running& o) const {
    if (finish != o.finish) return finish > o.finish;
    return vertex > o.vertex;
  }
};

}  // namespace

ExecutionSequence simulate(const TypedDag& dag, const Platform& platform, const ExecutionScenario& scenario) {
  check_types(dag, platform);
  check_scenario(dag, scenario);
  const std::size_t n = dag.size();

  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[scenario.priority[i].idx()] = i;
  auto by_rank = [&](VertexId a, VertexId b) { return rank[a.idx()] < rank[b.idx()]; };

  std::vector<std::vector<bool>> busy(platform.type_count());
  for (std::size_t s = 0; s < busy.size(); ++s) busy[s].assign(platform.cores(CoreTypeId(s)), false);

  std::vector<std::size_t> waiting_on(n);
  std::vector<VertexId> ready;
  for (std::size_t i = 0; i < n; ++i) {
    waiting_on[i] = dag.predecessors(VertexId(i)).size();
    if (waiting_on[i] == 0) ready.emplace_back(i);
  }

  ExecutionSequence seq;
  seq.slots.resize(n);
  std::priority_queue<Running, std::vector<Running>, std::greater<>> running;
  std::size_t done = 0;
  Weight now;

  while (done < n) {
    bool progressed = true;
    while (progressed) {
      progressed = false;
      while (!running.empty() && running.top().finish <= now) {
        VertexId v = running.top().vertex;
        running.pop();
        ++done;
        const CoreRef& core = seq.slots[v.idx()].core;
        busy[core.type.idx()][core.index] = false;
        for (VertexId w : dag.successors(v))
          if (--waiting_on[w.idx()] == 0) ready.push_back(w);
        progressed = true;
      }
      std::sort(ready.begin(), ready.end(), by_rank);
      std::vector<VertexId> still_waiting;
      for (VertexId v : ready) {
        auto& cores = busy[dag.type(v).idx()];
        auto free = std::find(cores.begin(), cores.end(), false);
        if (free == cores.end()) {
          still_waiting.push_back(v);
          continue;
        }
        *free = true;
        ScheduledVertex& slot = seq.slots[v.idx()];
        slot.core = {dag.type(v), static_cast<std::uint32_t>(free - cores.begin())};
        slot.start = now;
        slot.finish = now + scenario.actual_time[v.idx()];
        running.push({slot.finish, v});
        progressed = true;
      }
      ready = std::move(still_waiting);
    }
    if (done == n) break;
    if (running.empty()) throw std::logic_error("simulation stalled; graph is not a DAG");
    now = running.top().finish;
  }

  for (const ScheduledVertex& slot : seq.slots) seq.response_time = std::max(seq.response_time, slot.finish);
  return seq;
}

Path critical_path_of(const TypedDag& dag, const ExecutionSequence& sequence) {
  Path path{dag.sink()};
  while (true) {
    auto preds = dag.predecessors(path.back());
    if (preds.empty()) break;
    VertexId best = preds.front();
    for (VertexId p : preds)
      if (sequence.slots[p.idx()].finish > sequence.slots[best.idx()].finish) best = p;
    path.push_back(best);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_critical_path(const TypedDag& dag, const ExecutionSequence& sequence, std::span<const VertexId> path) {
  if (!is_complete_path(dag, path)) return false;
  for (std::size_t i = 1; i < path.size(); ++i) {
    Weight latest;
    for (VertexId u : dag.predecessors(path[i])) latest = std::max(latest, sequence.slots[u.idx()].finish);
    if (sequence.slots[path[i - 1].idx()].finish != latest) return false;
  }
  return true;
}

std::optional<Violation> check_work_conserving(const TypedDag& dag, const Platform& platform,
                                               const ExecutionSequence& sequence) {
  const std::size_t n = dag.size();
  if (sequence.slots.size() != n) {
    return Violation{Weight(0), VertexId(0), CoreTypeId(0), "sequence does not cover every vertex"};
  }
  std::optional<Violation> first;
  auto report = [&](Weight time, VertexId v, std::string reason) {
    if (!first || time < first->time || (time == first->time && v < first->vertex)) {
      first = Violation{time, v, dag.type(v), std::move(reason)};
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    VertexId v(i);
    const ScheduledVertex& slot = sequence.slots[i];
    if (slot.core.type != dag.type(v) || slot.core.type.idx() >= platform.type_count() ||
        slot.core.index >= platform.cores(slot.core.type)) {
      report(slot.start, v, "vertex placed on a core of the wrong type or a nonexistent core");
    }
    if (slot.start < Weight(0) || slot.finish < slot.start) report(slot.start, v, "invalid execution interval");
    for (VertexId p : dag.predecessors(v))
      if (slot.start < sequence.slots[p.idx()].finish) report(slot.start, v, "started before a predecessor finished");
  }

  // Overlap on a physical core; zero-length intervals occupy nothing.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = sequence.slots[a];
    const auto& sb = sequence.slots[b];
    if (sa.core.type != sb.core.type) return sa.core.type < sb.core.type;
    if (sa.core.index != sb.core.index) return sa.core.index < sb.core.index;
    return sa.start < sb.start;
  });
  std::optional<std::size_t> prev;
  for (std::size_t i : order) {
    const auto& cur = sequence.slots[i];
    if (cur.finish == cur.start) continue;
    if (prev && sequence.slots[*prev].core == cur.core && cur.start < sequence.slots[*prev].finish) {
      report(cur.start, VertexId(i), "overlaps another vertex on the same core");
    }
    if (!prev || !(sequence.slots[*prev].core == cur.core) || cur.finish > sequence.slots[*prev].finish) prev = i;
  }

  // Busy count of a type only drops at finish instants, so it suffices to
  // probe the eligibility instant and every finish inside the wait.
  auto busy_at = [&](CoreTypeId s, const Weight& t) {
    std::uint32_t count = 0;
    for (std::size_t u = 0; u < n; ++u) {
      const auto& su = sequence.slots[u];
      if (dag.type(VertexId(u)) == s && su.start <= t && t < su.finish) ++count;
    }
    return count;
  };
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v(i);
    const ScheduledVertex& slot = sequence.slots[i];
    Weight eligible;
    for (VertexId p : dag.predecessors(v)) eligible = std::max(eligible, sequence.slots[p.idx()].finish);
    if (!(eligible < slot.start)) continue;
    std::vector<Weight> probes{eligible};
    for (const auto& other : sequence.slots)
      if (eligible < other.finish && other.finish < slot.start) probes.push_back(other.finish);
    std::sort(probes.begin(), probes.end());
    const CoreTypeId s = dag.type(v);
    const std::uint32_t cores = s.idx() < platform.type_count() ? platform.cores(s) : 0;
    for (const Weight& t : probes) {
      if (busy_at(s, t) < cores) {
        report(t, v, "eligible vertex waits while a core of its type is idle");
        break;
      }
    }
  }

  Weight latest;
  for (const auto& slot : sequence.slots) latest = std::max(latest, slot.finish);
  if (sequence.response_time != latest) report(latest, VertexId(0), "response time differs from the last finish time");
  return first;
}

}  // namespace tdag
