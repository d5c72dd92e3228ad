#include "tdag/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "tdag/bounds.hpp"

namespace tdag {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Runs job(i) for i in [0, count) on up to `workers` threads.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job job) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct InstanceResult {
  bool completed = false;
  bool timed_out = false;
  Weight old_b;
  Weight new_b_1;
  Weight new_b_2;
  double time_ms[3] = {0, 0, 0};
  std::uint64_t tuples = 0;
  std::optional<std::uint64_t> paths;
};

double ms(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

InstanceResult run_instance(const SweepSpec& spec, const GenConfig& config) {
  using clock = std::chrono::steady_clock;
  InstanceResult out;
  GeneratedTask task = gen_task(config);

  auto t0 = clock::now();
  out.old_b = old_b(task.dag, task.platform);
  auto t1 = clock::now();
  out.new_b_1 = new_b_1(task.dag, task.platform);
  auto t2 = clock::now();
  out.time_ms[0] = ms(t1 - t0);
  out.time_ms[1] = ms(t2 - t1);

  if (spec.bounds.new_b_2) {
    SearchOptions opt;
    opt.max_retained = spec.tuple_budget;
    if (spec.time_budget) opt.deadline = clock::now() + *spec.time_budget;
    try {
      auto t3 = clock::now();
      SearchResult r = new_b_2(task.dag, task.platform, opt);
      out.time_ms[2] = ms(clock::now() - t3);
      out.new_b_2 = r.bound;
      out.tuples = r.stats.generated;
    } catch (const ResourceLimit&) {
      out.timed_out = true;
      return out;
    } catch (const TimeBudgetExceeded&) {
      out.timed_out = true;
      return out;
    }
  }
  if (spec.path_count_limit > 0) out.paths = count_complete_paths(task.dag, spec.path_count_limit);
  out.completed = true;
  return out;
}

}  // namespace

SweepParameter parse_sweep_parameter(const std::string& name) {
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "u" || key == "utilization") return SweepParameter::Utilization;
  if (key == "v" || key == "vertices") return SweepParameter::Vertices;
  if (key == "pr" || key == "p_r") return SweepParameter::EdgeProbability;
  if (key == "s" || key == "types") return SweepParameter::Types;
  if (key == "m" || key == "cores") return SweepParameter::Cores;
  throw std::invalid_argument("unknown sweep parameter '" + name + "' (expected U, V, pr, S or M)");
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Utilization: return "U";
    case SweepParameter::Vertices: return "V";
    case SweepParameter::EdgeProbability: return "pr";
    case SweepParameter::Types: return "S";
    case SweepParameter::Cores: return "M";
  }
  return "?";
}

void SweepSpec::check() const {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (trials < 1) throw std::invalid_argument("sweep needs at least one trial per value");
  base.check();
}

GenConfig sweep_point_config(const SweepSpec& spec, std::size_t point, std::size_t trial) {
  GenConfig c = spec.base;
  const double v = spec.values.at(point);
  auto whole = [&](const char* what) {
    if (v < 1 || v != static_cast<double>(static_cast<std::uint32_t>(v))) {
      throw std::invalid_argument(std::string(what) + " sweep values must be positive integers");
    }
    return static_cast<std::uint32_t>(v);
  };
  switch (spec.parameter) {
    case SweepParameter::Utilization: c.utilization = {v, v}; break;
    case SweepParameter::Vertices: c.vertices = {whole("|V|"), whole("|V|")}; break;
    case SweepParameter::EdgeProbability: c.edge_probability = {v, v}; break;
    case SweepParameter::Types: c.types = {whole("|S|"), whole("|S|")}; break;
    case SweepParameter::Cores: c.cores = {whole("M_s"), whole("M_s")}; break;
  }
  // Trial t uses the same seed at every point, so points differ only in the swept parameter.
  c.seed = splitmix64(splitmix64(spec.base.seed) + trial);
  return c;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.check();
  const std::size_t total = spec.values.size() * spec.trials;
  std::vector<GenConfig> configs;
  configs.reserve(total);
  for (std::size_t p = 0; p < spec.values.size(); ++p)
    for (std::size_t t = 0; t < spec.trials; ++t) configs.push_back(sweep_point_config(spec, p, t));

  std::vector<InstanceResult> results(total);
  parallel_for(total, spec.workers, [&](std::size_t i) { results[i] = run_instance(spec, configs[i]); });

  // Aggregate in index order so the output does not depend on scheduling.
  std::vector<SweepRow> rows;
  const Weight& deadline = spec.base.period;
  for (std::size_t p = 0; p < spec.values.size(); ++p) {
    SweepRow row;
    row.value = spec.values[p];
    row.instances = spec.trials;
    std::size_t accepted[3] = {0, 0, 0};
    double norm[3] = {0, 0, 0};
    double time[3] = {0, 0, 0};
    double tuples = 0;
    double paths = 0;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const InstanceResult& r = results[p * spec.trials + t];
      if (r.timed_out) ++row.timeouts;
      if (!r.completed) continue;
      ++row.completed;
      const Weight* bound[3] = {&r.old_b, &r.new_b_1, &r.new_b_2};
      for (int b = 0; b < 3; ++b) {
        if (*bound[b] <= deadline) ++accepted[b];
        norm[b] += r.old_b.is_zero() ? 1.0 : (*bound[b] / r.old_b).to_double();
        time[b] += r.time_ms[b];
      }
      tuples += static_cast<double>(r.tuples);
      if (r.paths) {
        ++row.paths_counted;
        paths += static_cast<double>(*r.paths);
      }
    }
    const double n = row.completed > 0 ? static_cast<double>(row.completed) : 1.0;
    auto column = [&](int b) {
      return BoundColumn{static_cast<double>(accepted[b]) / n, norm[b] / n, time[b] / n};
    };
    if (spec.bounds.old_b) row.old_b = column(0);
    if (spec.bounds.new_b_1) row.new_b_1 = column(1);
    if (spec.bounds.new_b_2) {
      row.new_b_2 = column(2);
      row.mean_tuples = tuples / n;
    }
    if (row.paths_counted > 0) row.mean_paths = paths / static_cast<double>(row.paths_counted);
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  os << to_string(spec.parameter)
     << ",instances,completed,timeouts,"
        "accept_old_b,accept_new_b_1,accept_new_b_2,"
        "norm_old_b,norm_new_b_1,norm_new_b_2,"
        "time_ms_old_b,time_ms_new_b_1,time_ms_new_b_2,"
        "mean_tuples,mean_paths\n";
  auto cell = [&](const std::optional<BoundColumn>& c, double BoundColumn::*field) {
    if (c) os << std::setprecision(10) << (*c).*field;
    os << ',';
  };
  for (const SweepRow& r : rows) {
    os << std::setprecision(10) << r.value << ',' << r.instances << ',' << r.completed << ',' << r.timeouts << ',';
    for (auto field : {&BoundColumn::acceptance, &BoundColumn::normalized, &BoundColumn::mean_time_ms}) {
      cell(r.old_b, field);
      cell(r.new_b_1, field);
      cell(r.new_b_2, field);
    }
    if (r.new_b_2) os << r.mean_tuples;
    os << ',';
    if (r.mean_paths) os << *r.mean_paths;
    os << '\n';
  }
}

nlohmann::json sweep_summary_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  using nlohmann::json;
  auto column = [](const std::optional<BoundColumn>& c) -> json {
    if (!c) return nullptr;
    return {{"acceptance", c->acceptance}, {"normalized", c->normalized}, {"mean_time_ms", c->mean_time_ms}};
  };
  json out;
  out["parameter"] = to_string(spec.parameter);
  out["trials"] = spec.trials;
  out["seed"] = spec.base.seed;
  out["tuple_budget"] = spec.tuple_budget;
  out["rows"] = json::array();
  for (const SweepRow& r : rows) {
    json row{{"value", r.value},
             {"instances", r.instances},
             {"completed", r.completed},
             {"timeouts", r.timeouts},
             {"old_b", column(r.old_b)},
             {"new_b_1", column(r.new_b_1)},
             {"new_b_2", column(r.new_b_2)}};
    if (r.new_b_2) row["mean_tuples"] = r.mean_tuples;
    row["mean_paths"] = r.mean_paths ? json(*r.mean_paths) : json(nullptr);
    out["rows"].push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t max_path_vertices(const TypedDag& dag) {
  std::vector<Vertex> unit = dag.vertices();
  for (Vertex& v : unit) v.wcet = Weight(1);
  return static_cast<std::size_t>(longest_path(TypedDag(std::move(unit), dag.edges())).num());
}

}  // namespace

StateSpaceSummary state_space_report(const StateSpaceSpec& spec) {
  StateSpaceSummary summary;
  auto measure = [&](std::string family, std::uint64_t parameter, const TypedDag& dag, const Platform& platform) {
    auto paths = count_complete_paths(dag, spec.path_limit);
    if (!paths) {
      ++summary.skipped;
      return;
    }
    SearchResult r = new_b_2(dag, platform);
    StateSpaceRow row;
    row.family = std::move(family);
    row.parameter = parameter;
    row.vertices = dag.size();
    row.paths = *paths;
    row.tuples = r.stats.generated;
    row.max_path_vertices = max_path_vertices(dag);
    row.ratio = static_cast<double>(row.tuples) / static_cast<double>(row.paths);
    summary.rows.push_back(std::move(row));
  };

  for (std::uint32_t k : spec.diamond_ks) measure("diamonds", k, stacked_diamonds(k), Platform({2}));
  for (std::size_t i = 0; i < spec.random_instances; ++i) {
    GenConfig c = spec.random_config;
    c.seed = splitmix64(spec.random_config.seed + i);
    GeneratedTask task = gen_task(c);
    measure("random", i, task.dag, task.platform);
  }

  if (!summary.rows.empty()) {
    std::vector<double> ratios;
    for (const auto& r : summary.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    summary.min_ratio = ratios.front();
    summary.max_ratio = ratios.back();
    summary.median_ratio = ratios[ratios.size() / 2];
  }
  return summary;
}

void write_state_space_csv(std::ostream& os, const StateSpaceSummary& summary) {
  os << "family,parameter,vertices,paths,tuples,max_path_vertices,ratio\n";
  for (const auto& r : summary.rows) {
    os << r.family << ',' << r.parameter << ',' << r.vertices << ',' << r.paths << ',' << r.tuples << ','
       << r.max_path_vertices << ',' << std::setprecision(10) << r.ratio << '\n';
  }
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("TDAG_WORKERS")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace tdag
