// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "tdag/bounds.hpp"
#include "tdag/experiments.hpp"
#include "tdag/generator.hpp"
#include "tdag/simulator.hpp"

using namespace tdag;
using namespace tdag::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

GeneratedTask desk_task(std::uint64_t seed) {
  GenConfig c = GenConfig::desk();
  c.seed = seed;
  return gen_task(c);
}

Path random_complete_path(const TypedDag& g, std::mt19937_64& rng) {
  Path p{g.source()};
  while (!g.successors(p.back()).empty()) {
    auto succ = g.successors(p.back());
    p.push_back(succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)]);
  }
  return p;
}

Outcome two_type_example() {
  Outcome out;
  std::ostringstream d;
  for (const TypedDag& g : {example_task(), example_task_alt()}) {
    Weight a = old_b(g, Platform({2, 3}));
    Weight b = old_b(g, Platform({20, 3}));
    out.ok &= a == Weight(59, 2) && b == Weight(449, 15);
    d << a.str() << " -> " << b.str() << "; ";
  }
  out.detail = d.str() + "two graphs with len 19, vol 11/34";
  return out;
}

Outcome dominance_chain() {
  Outcome out;
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    auto t = desk_task(seed);
    Weight b2 = new_b_2(t.dag, t.platform).bound;
    Weight b1 = new_b_1(t.dag, t.platform);
    Weight b0 = old_b(t.dag, t.platform);
    if (!(b2 <= b1 && b1 <= b0)) ++bad;
  }
  out.ok = bad == 0;
  out.detail = "1000 desk instances, " + std::to_string(bad) + " violations";
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  std::size_t mismatch = 0, unpruned_mismatch = 0, largest = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    auto [g, platform] = random_task(seed * 7919, 13, 3);
    largest = std::max(largest, g.size());
    BoundContext ctx(g, platform);
    Weight oracle = new_b_2_bruteforce(ctx, 100'000'000);
    Weight pruned = new_b_2(ctx).bound;
    SearchOptions off;
    off.pruning = false;
    Weight unpruned = new_b_2(ctx, off).bound;
    mismatch += pruned != oracle;
    unpruned_mismatch += unpruned != pruned;
  }
  out.ok = mismatch == 0 && unpruned_mismatch == 0 && largest <= 15;
  out.detail = "500 tasks (|V| <= " + std::to_string(largest) + ", |S| <= 3), " + std::to_string(mismatch) +
               " search/brute-force mismatches, " + std::to_string(unpruned_mismatch) + " pruned/unpruned mismatches";
  return out;
}

Outcome self_sustainability() {
  Outcome out;
  std::size_t increases = 0, sweeps = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto t = desk_task(10'000 + seed);
    for (std::size_t s = 0; s < t.platform.type_count(); ++s) {
      Platform p = t.platform;
      Weight prev1 = new_b_1(t.dag, p);
      Weight prev2 = new_b_2(t.dag, p).bound;
      for (int step = 0; step < 4; ++step) {  // five values in total
        p = p.with_cores(CoreTypeId(s), p.cores(CoreTypeId(s)) + 1);
        Weight b1 = new_b_1(t.dag, p);
        Weight b2 = new_b_2(t.dag, p).bound;
        increases += (b1 > prev1) + (b2 > prev2);
        prev1 = b1;
        prev2 = b2;
      }
      ++sweeps;
    }
  }
  out.ok = increases == 0;
  out.detail = std::to_string(sweeps) + " single-type sweeps over 200 tasks, " + std::to_string(increases) + " increases";
  return out;
}

Outcome bound_safety() {
  Outcome out;
  std::size_t above = 0, broken = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto t = desk_task(20'000 + seed);
    Weight bound = new_b_2(t.dag, t.platform).bound;
    for (std::uint64_t k = 0; k < 50; ++k) {
      auto seq = simulate(t.dag, t.platform, ExecutionScenario::random(t.dag, seed * 1'000 + k));
      ++runs;
      above += seq.response_time > bound;
      broken += check_work_conserving(t.dag, t.platform, seq).has_value();
    }
  }

  // Anomaly witness: same priorities, one vertex shortened, longer schedule.
  std::string witness = "none found";
  bool found = false;
  for (std::uint64_t seed = 1; seed <= 5000 && !found; ++seed) {
    auto [g, platform] = random_task(seed, 8, 2, 2);
    auto base = ExecutionScenario::full_wcet(g);
    const Weight r0 = simulate(g, platform, base).response_time;
    for (std::size_t v = 0; v < g.size() && !found; ++v) {
      if (g.wcet(VertexId(v)).is_zero()) continue;
      auto faster = base;
      faster.actual_time[v] = g.wcet(VertexId(v)) / Weight(2);
      const Weight r1 = simulate(g, platform, faster).response_time;
      if (r1 > r0) {
        found = true;
        witness = "task seed " + std::to_string(seed) + ", vertex " + std::to_string(v) + " halved: " + r0.str() +
                  " -> " + r1.str();
      }
    }
  }
  out.ok = above == 0 && broken == 0 && found;
  out.detail = std::to_string(runs) + " runs, " + std::to_string(above) + " above NEW-B-2, " + std::to_string(broken) +
               " not work-conserving; anomaly: " + witness;
  return out;
}

Outcome sat_iff() {
  Outcome out;
  std::mt19937_64 rng(606);
  std::size_t disagree = 0, out_of_band = 0, sat = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(1, 5)(rng);
    const std::uint32_t m = std::uniform_int_distribution<std::uint32_t>(1, 8)(rng);
    CnfInstance f = random_cnf(n, m, rng);
    SatReduction red = sat_reduction(f);
    Weight b = new_b_2(red.dag, red.platform).bound;
    bool s = sat_brute_force(f);
    sat += s;
    disagree += (b > red.threshold) != s;
    if (s && !(b <= red.threshold + Weight(1))) ++out_of_band;
  }
  out.ok = disagree == 0 && out_of_band == 0;
  out.detail = "100 CNFs (" + std::to_string(sat) + " satisfiable), " + std::to_string(disagree) + " disagreements, " +
               std::to_string(out_of_band) + " outside (m+n+1, m+n+2]";
  return out;
}

Outcome path_fold() {
  Outcome out;
  std::mt19937_64 rng(33);
  std::size_t mismatch = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto [g, platform] = random_task(50'000 + i, 15, 3);
    BoundContext ctx(g, platform);
    Path p = random_complete_path(g, rng);
    AbstractTuple t = initial_tuple(ctx);
    for (std::size_t k = 1; k < p.size(); ++k) t = extend_tuple(ctx, t, p[k]);
    Weight direct = path_bound(ctx, p);
    mismatch += t.r != direct || direct != naive_path_bound(g, platform, p);
  }
  out.ok = mismatch == 0;
  out.detail = "1000 (task, path) pairs, " + std::to_string(mismatch) + " mismatches";
  return out;
}

Outcome state_space() {
  Outcome out;
  StateSpaceSpec spec;
  spec.diamond_ks = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  StateSpaceSummary summary = state_space_report(spec);
  std::size_t diamond_fail = 0, random_fail = 0, random_rows = 0;
  std::uint64_t k14_tuples = 0;
  for (const auto& r : summary.rows) {
    if (r.family == "diamonds") {
      if (r.parameter >= 5 && !(r.tuples < r.paths)) ++diamond_fail;
      if (r.parameter == 14) k14_tuples = r.tuples;
    } else {
      ++random_rows;
      if (r.tuples > r.paths * r.max_path_vertices) ++random_fail;
    }
  }
  std::ostringstream d;
  d << "k=14: " << k14_tuples << " tuples vs 16384 paths; " << random_rows << " random tasks (" << summary.skipped
    << " skipped), " << diamond_fail + random_fail << " failures; ratio median " << summary.median_ratio;
  out.ok = diamond_fail == 0 && random_fail == 0 && random_rows > 0;
  out.detail = d.str();
  return out;
}

Outcome scalability() {
  Outcome out;
  double worst = 0;
  std::uint64_t tuples = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GenConfig c;
    c.vertices = {100, 100};
    c.types = {5, 5};
    c.seed = seed;
    auto t = gen_task(c);
    auto start = Clock::now();
    SearchResult r = new_b_2(t.dag, t.platform);
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    worst = std::max(worst, secs);
    tuples = std::max(tuples, r.stats.generated);
  }
  out.ok = worst < 60.0;
  std::ostringstream d;
  d << "5 instances with |V|=100, |S|=5: slowest " << worst << " s, at most " << tuples << " tuples";
  out.detail = d.str();
  return out;
}

Outcome single_type() {
  Outcome out;
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenConfig c = GenConfig::desk();
    c.types = {1, 1};
    c.seed = 30'000 + seed;
    auto t = gen_task(c);
    const Weight len = longest_path(t.dag);
    const Weight m(t.platform.cores(CoreTypeId(0)));
    bad += old_b(t.dag, t.platform) != len + (vol(t.dag) - len) / m;
  }
  out.ok = bad == 0;
  out.detail = "100 single-type tasks, " + std::to_string(bad) + " mismatches";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two-type example bounds", 0.001, two_type_example},
      {2, "dominance chain", 120, dominance_chain},
      {3, "oracle equivalence", 60, oracle_equivalence},
      {4, "self-sustainability", 300, self_sustainability},
      {5, "bound safety and anomaly witness", 300, bound_safety},
      {6, "3-SAT reduction iff-property", 120, sat_iff},
      {7, "per-path fold consistency", 60, path_fold},
      {8, "state-space reduction trend", 600, state_space},
      {9, "scalability smoke", 60 * 5, scalability},
      {10, "single-type degeneration", 60, single_type},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s criterion %2d  %-34s %10.4f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds, o.detail.c_str(), in_time ? "" : "  [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
