#include "tdag/bounds.hpp"

#include <algorithm>
#include <unordered_map>

namespace tdag {

ResourceLimit::ResourceLimit(std::uint64_t limit)
    : TdagError("tuple search exceeded the limit of " + std::to_string(limit) + " retained tuples") {}

NotASuccessor::NotASuccessor(VertexId from, VertexId to)
    : TdagError("vertex " + std::to_string(to.value) + " is not a successor of " + std::to_string(from.value)) {}

VertexMismatch::VertexMismatch(VertexId a, VertexId b)
    : TdagError("tuples end at different vertices (" + std::to_string(a.value) + " vs " +
                std::to_string(b.value) + ")") {}

// ---------------------------------------------------------------------------

BoundContext::BoundContext(const TypedDag& dag, const Platform& platform)
    : dag_(dag), platform_(platform), reach_(dag), topo_(topological_order(dag)) {
  check_types(dag_, platform_);
  source_ = dag_.source();
  sink_ = dag_.sink();

  const std::size_t n = dag_.size();
  members_.resize(platform_.type_count());
  rank_in_type_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& m = members_[dag_.type(VertexId(i)).idx()];
    rank_in_type_[i] = static_cast<std::uint32_t>(m.size());
    m.emplace_back(i);
  }

  par_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) par_.push_back(par_bits(dag_, reach_, VertexId(i)));

  step_.resize(n);
  compatible_.assign(n, VertexSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v(i);
    const auto& same = members_[dag_.type(v).idx()];
    const Weight cores(platform_.cores(dag_.type(v)));
    auto& row = step_[i];
    row.reserve(same.size() + 1);
    row.push_back(weight_of(par_[i]) / cores);
    for (VertexId u : same) row.push_back(weight_of(par_[i] - par_[u.idx()]) / cores);
    for (VertexId u : same)
      if (!par_[i].intersects(reach_.descendants(u))) compatible_[i].set(u.idx());
  }
}

Weight BoundContext::weight_of(const VertexSet& set) const {
  Weight total;
  for (auto i = set.find_first(); i != VertexSet::npos; i = set.find_next(i)) total += dag_.wcet(VertexId(i));
  return total;
}

const Weight& BoundContext::interference_step(VertexId v, std::optional<VertexId> prev) const {
  if (!prev) return step_[v.idx()][0];
  return step_[v.idx()][rank_in_type_[prev->idx()] + 1];
}

bool BoundContext::par_disjoint_from_descendants(VertexId x, VertexId y) const {
  if (dag_.type(x) == dag_.type(y)) return compatible_[x.idx()].test(y.idx());
  return !par_[x.idx()].intersects(reach_.descendants(y));
}

// ---------------------------------------------------------------------------

Weight old_b(const TypedDag& dag, const Platform& platform) {
  check_types(dag, platform);
  Weight bound = (Weight(1) - Weight(1, platform.max_cores())) * longest_path(dag);
  for (std::size_t s = 0; s < platform.type_count(); ++s) {
    CoreTypeId type(s);
    bound += vol(dag, type) / Weight(platform.cores(type));
  }
  return bound;
}

TypedDag scaled_graph(const TypedDag& dag, const Platform& platform) {
  check_types(dag, platform);
  std::vector<Vertex> vertices = dag.vertices();
  for (Vertex& v : vertices) v.wcet *= Weight(1) - Weight(1, platform.cores(v.type));
  return TypedDag(std::move(vertices), dag.edges());
}

Weight new_b_1(const TypedDag& dag, const Platform& platform) {
  Weight bound = longest_path(scaled_graph(dag, platform));
  for (std::size_t s = 0; s < platform.type_count(); ++s) {
    CoreTypeId type(s);
    bound += vol(dag, type) / Weight(platform.cores(type));
  }
  return bound;
}

// ---------------------------------------------------------------------------

VertexSet ivs_bits(const BoundContext& ctx, std::span<const VertexId> path, CoreTypeId s) {
  VertexSet out(ctx.dag().size());
  for (VertexId v : path)
    if (ctx.dag().type(v) == s) out |= ctx.par(v);
  return out;
}

std::vector<VertexId> ivs(const BoundContext& ctx, std::span<const VertexId> path, CoreTypeId s) {
  return to_vertex_ids(ivs_bits(ctx, path, s));
}

Weight path_bound(const BoundContext& ctx, std::span<const VertexId> path) {
  Weight bound = path_length(ctx.dag(), path);
  for (std::size_t s = 0; s < ctx.type_count(); ++s) {
    CoreTypeId type(s);
    bound += ctx.weight_of(ivs_bits(ctx, path, type)) / Weight(ctx.platform().cores(type));
  }
  return bound;
}

Weight new_b_2_bruteforce(const BoundContext& ctx, std::uint64_t path_limit) {
  Weight best;
  for_each_complete_path(ctx.dag(), path_limit, [&](std::span<const VertexId> path) {
    best = std::max(best, path_bound(ctx, path));
  });
  return best;
}

Weight new_b_2_bruteforce(const TypedDag& dag, const Platform& platform, std::uint64_t path_limit) {
  return new_b_2_bruteforce(BoundContext(dag, platform), path_limit);
}

// ---------------------------------------------------------------------------

AbstractTuple initial_tuple(const BoundContext& ctx) {
  AbstractTuple t;
  t.vertex = ctx.source();
  t.delta.assign(ctx.type_count(), std::nullopt);
  t.delta[ctx.dag().type(t.vertex).idx()] = t.vertex;
  t.r = ctx.dag().wcet(t.vertex) + ctx.interference_step(t.vertex, std::nullopt);
  return t;
}

AbstractTuple extend_tuple(const BoundContext& ctx, const AbstractTuple& t, VertexId v) {
  if (!ctx.dag().has_edge(t.vertex, v)) throw NotASuccessor(t.vertex, v);
  const std::size_t s = ctx.dag().type(v).idx();
  AbstractTuple next;
  next.vertex = v;
  next.r = t.r + ctx.dag().wcet(v) + ctx.interference_step(v, t.delta[s]);
  next.delta = t.delta;
  next.delta[s] = v;
  return next;
}

namespace {

bool dominates_unchecked(const BoundContext& ctx, const AbstractTuple& t1, const AbstractTuple& t2) {
  if (t1.r < t2.r) return false;
  for (std::size_t s = 0; s < t1.delta.size(); ++s) {
    const auto& d1 = t1.delta[s];
    if (!d1) continue;
    const auto& d2 = t2.delta[s];
    if (!d2 || !ctx.par_disjoint_from_descendants(*d1, *d2)) return false;
  }
  return true;
}

struct DeltaHash {
  std::size_t operator()(const std::vector<std::optional<VertexId>>& delta) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& d : delta) {
      h ^= d ? d->value + 1 : 0;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

/// Tuples retained at one vertex.
class Bucket {
public:
  std::vector<AbstractTuple> tuples;

  /// Returns the change in retained count.
  std::int64_t insert(const BoundContext& ctx, AbstractTuple t, const SearchOptions& opt, SearchStats& stats) {
    if (!opt.pruning) return insert_merging(std::move(t), stats);
    for (const AbstractTuple& kept : tuples) {
      if (dominates_unchecked(ctx, kept, t)) {
        ++stats.pruned;
        return 0;
      }
    }
    std::int64_t removed = 0;
    if (!opt.strict_paper) {
      auto dead = std::remove_if(tuples.begin(), tuples.end(),
                                 [&](const AbstractTuple& kept) { return dominates_unchecked(ctx, t, kept); });
      removed = tuples.end() - dead;
      tuples.erase(dead, tuples.end());
      stats.evicted += static_cast<std::uint64_t>(removed);
    }
    tuples.push_back(std::move(t));
    return 1 - removed;
  }

  void clear() {
    tuples.clear();
    tuples.shrink_to_fit();
    by_delta_.clear();
  }

private:
  // Without dominance pruning, tuples with identical delta still collapse to
  // the one with the largest bound.
  std::int64_t insert_merging(AbstractTuple t, SearchStats& stats) {
    auto [it, fresh] = by_delta_.try_emplace(t.delta, tuples.size());
    if (fresh) {
      tuples.push_back(std::move(t));
      return 1;
    }
    ++stats.pruned;
    AbstractTuple& kept = tuples[it->second];
    if (t.r > kept.r) kept.r = t.r;
    return 0;
  }

  std::unordered_map<std::vector<std::optional<VertexId>>, std::size_t, DeltaHash> by_delta_;
};

}  // namespace

bool dominates(const BoundContext& ctx, const AbstractTuple& t1, const AbstractTuple& t2) {
  if (t1.vertex != t2.vertex) throw VertexMismatch(t1.vertex, t2.vertex);
  return dominates_unchecked(ctx, t1, t2);
}

SearchResult new_b_2(const BoundContext& ctx, const SearchOptions& options) {
  const TypedDag& dag = ctx.dag();
  std::vector<Bucket> buckets(dag.size());
  SearchStats stats;

  buckets[ctx.source().idx()].tuples.push_back(initial_tuple(ctx));
  stats.generated = 1;
  std::uint64_t retained = 1;
  stats.retained_peak = 1;

  // Topological order: a bucket is expanded only after every predecessor's
  // bucket has been expanded and dropped.
  auto past_deadline = [&] { return options.deadline && std::chrono::steady_clock::now() > *options.deadline; };
  for (VertexId v : ctx.topo_order()) {
    if (v == ctx.sink()) continue;
    if (past_deadline()) throw TimeBudgetExceeded();
    Bucket& here = buckets[v.idx()];
    for (const AbstractTuple& t : here.tuples) {
      for (VertexId w : dag.successors(v)) {
        ++stats.generated;
        std::int64_t delta = buckets[w.idx()].insert(ctx, extend_tuple(ctx, t, w), options, stats);
        retained = static_cast<std::uint64_t>(static_cast<std::int64_t>(retained) + delta);
        stats.retained_peak = std::max(stats.retained_peak, retained);
        if (retained > options.max_retained) throw ResourceLimit(options.max_retained);
        if ((stats.generated & 0x3ff) == 0 && past_deadline()) throw TimeBudgetExceeded();
      }
    }
    retained -= here.tuples.size();
    here.clear();
  }

  Weight best;
  for (const AbstractTuple& t : buckets[ctx.sink().idx()].tuples) best = std::max(best, t.r);
  return {best, stats};
}

SearchResult new_b_2(const TypedDag& dag, const Platform& platform, const SearchOptions& options) {
  return new_b_2(BoundContext(dag, platform), options);
}

// ---------------------------------------------------------------------------

BoundReport analyze(const TypedDag& dag, const Platform& platform, const AnalyzeOptions& options) {
  using clock = std::chrono::steady_clock;
  BoundReport report;

  auto t0 = clock::now();
  report.old_b = old_b(dag, platform);
  auto t1 = clock::now();
  report.new_b_1 = new_b_1(dag, platform);
  auto t2 = clock::now();
  report.old_b_time = t1 - t0;
  report.new_b_1_time = t2 - t1;

  if (options.compute_new_b_2) {
    auto t3 = clock::now();
    SearchResult result = new_b_2(dag, platform, options.search);
    report.new_b_2_time = clock::now() - t3;
    report.new_b_2 = result.bound;
    report.search = result.stats;
  }
  if (options.count_paths_up_to) report.complete_path_count = count_complete_paths(dag, *options.count_paths_up_to);
  return report;
}

}  // namespace tdag
