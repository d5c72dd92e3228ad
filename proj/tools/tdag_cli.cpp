#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tdag/bounds.hpp"
#include "tdag/experiments.hpp"
#include "tdag/generator.hpp"
#include "tdag/io.hpp"
#include "tdag/simulator.hpp"

using nlohmann::json;
using namespace tdag;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

std::string human(const Weight& w) { return w.str() + " (" + w.decimal_str(6) + ")"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::uint32_t> parse_core_list(const std::string& text) {
  std::vector<std::uint32_t> cores;
  for (const std::string& item : split(text, ',')) {
    std::size_t used = 0;
    long value = std::stol(item, &used);
    if (used != item.size() || value < 1) throw std::invalid_argument("bad core count '" + item + "'");
    cores.push_back(static_cast<std::uint32_t>(value));
  }
  if (cores.empty()) throw std::invalid_argument("empty platform");
  return cores;
}

template <class T>
Range<T> parse_range(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_integral_v<T>) {
      value = static_cast<T>(std::stoul(s, &used));
    } else {
      value = static_cast<T>(std::stod(s, &used));
    }
    if (used != s.size()) throw std::invalid_argument("bad range '" + text + "'");
    return value;
  };
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    T v = parse_one(text);
    return {v, v};
  }
  return {parse_one(text.substr(0, colon)), parse_one(text.substr(colon + 1))};
}

struct LoadedTask {
  TypedDag dag;
  Platform platform;
};

/// Reads, validates and normalizes a task; --platform overrides the file.
LoadedTask load_task(const std::string& path, const std::string& platform_override) {
  TaskFile file = read_task_file(path);
  std::optional<Platform> platform = file.platform;
  if (!platform_override.empty()) platform = Platform(parse_core_list(platform_override));
  if (!platform) throw ParseError(path + ": no platform in the file and no --platform given");
  TypedDag dag = normalize(file.dag);
  check_types(dag, *platform);
  return {std::move(dag), std::move(*platform)};
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string task;
  std::string platform;
  std::string bounds = "old,new1,new2";
  std::string deadline;
  bool strict_paper = false;
  bool no_pruning = false;
  std::uint64_t tuple_limit = 10'000'000;
  std::uint64_t time_limit_ms = 0;
  std::uint64_t count_paths = 0;
};

int cmd_analyze(const AnalyzeArgs& a) {
  LoadedTask task = load_task(a.task, a.platform);
  BoundSelection sel{false, false, false};
  for (const std::string& b : split(a.bounds, ',')) {
    if (b == "old" || b == "old_b") sel.old_b = true;
    else if (b == "new1" || b == "new_b_1") sel.new_b_1 = true;
    else if (b == "new2" || b == "new_b_2") sel.new_b_2 = true;
    else throw std::invalid_argument("unknown bound '" + b + "' (expected old, new1, new2)");
  }
  if (!sel.old_b && !sel.new_b_1 && !sel.new_b_2) throw std::invalid_argument("--bounds selects nothing");

  AnalyzeOptions opt;
  opt.compute_new_b_2 = sel.new_b_2;
  opt.search.strict_paper = a.strict_paper;
  opt.search.pruning = !a.no_pruning;
  opt.search.max_retained = a.tuple_limit;
  if (a.time_limit_ms > 0) {
    opt.search.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(a.time_limit_ms);
  }
  if (a.count_paths > 0) opt.count_paths_up_to = a.count_paths;
  BoundReport report = analyze(task.dag, task.platform, opt);

  json out = report_to_json(report);
  if (!sel.old_b) {
    out.erase("old_b");
    out["durations_ns"].erase("old_b");
  }
  if (!sel.new_b_1) {
    out.erase("new_b_1");
    out["durations_ns"].erase("new_b_1");
  }
  out["vertices"] = task.dag.size();
  out["platform"] = task.platform.core_counts();

  const Weight tightest = sel.new_b_2 ? *report.new_b_2 : sel.new_b_1 ? report.new_b_1 : report.old_b;
  const char* tightest_name = sel.new_b_2 ? "new_b_2" : sel.new_b_1 ? "new_b_1" : "old_b";
  int code = kOk;
  std::optional<Weight> deadline;
  if (!a.deadline.empty()) {
    deadline = Weight::parse(a.deadline);
    bool ok = tightest <= *deadline;
    out["deadline"] = deadline->fraction_str();
    out["verdict_bound"] = tightest_name;
    out["schedulable"] = ok;
    if (!ok) code = kNegative;
  }
  std::cout << out.dump(2) << '\n';

  std::cerr << std::left;
  if (sel.old_b) std::cerr << std::setw(10) << "OLD-B" << human(report.old_b) << '\n';
  if (sel.new_b_1) std::cerr << std::setw(10) << "NEW-B-1" << human(report.new_b_1) << '\n';
  if (sel.new_b_2) std::cerr << std::setw(10) << "NEW-B-2" << human(*report.new_b_2) << '\n';
  if (report.search) {
    std::cerr << "tuples: generated " << report.search->generated << ", peak retained " << report.search->retained_peak
              << ", pruned " << report.search->pruned << ", evicted " << report.search->evicted << '\n';
  }
  if (deadline) {
    std::cerr << "deadline " << human(*deadline) << ": " << (code == kOk ? "schedulable" : "NOT schedulable")
              << " by " << tightest_name << '\n';
  }
  return code;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string task;
  std::string platform;
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  std::string emit_worst;
  std::string csv;
  std::uint64_t tuple_limit = 10'000'000;
};

int cmd_simulate(const SimulateArgs& a) {
  LoadedTask task = load_task(a.task, a.platform);
  SearchOptions search;
  search.max_retained = a.tuple_limit;
  const Weight b2 = new_b_2(task.dag, task.platform, search).bound;

  std::mt19937_64 seeds(a.seed);
  std::optional<ExecutionSequence> worst;
  std::uint64_t worst_seed = 0;
  std::uint64_t violations = 0;
  std::uint64_t above_bound = 0;
  for (std::uint64_t i = 0; i < a.runs; ++i) {
    const std::uint64_t s = seeds();
    ExecutionSequence seq = simulate(task.dag, task.platform, ExecutionScenario::random(task.dag, s));
    if (auto v = check_work_conserving(task.dag, task.platform, seq)) {
      ++violations;
      std::cerr << "run " << i << ": schedule check failed at " << v->time.str() << ": " << v->reason << '\n';
    }
    if (seq.response_time > b2) ++above_bound;
    if (!worst || seq.response_time > worst->response_time) {
      worst = std::move(seq);
      worst_seed = s;
    }
  }

  json out{{"runs", a.runs},
           {"seed", a.seed},
           {"old_b", old_b(task.dag, task.platform).fraction_str()},
           {"new_b_1", new_b_1(task.dag, task.platform).fraction_str()},
           {"new_b_2", b2.fraction_str()},
           {"schedule_check_failures", violations},
           {"runs_above_new_b_2", above_bound}};
  if (worst) {
    out["max_response_time"] = worst->response_time.fraction_str();
    out["worst_scenario_seed"] = worst_seed;
    if (!a.emit_worst.empty()) {
      std::ofstream f(a.emit_worst);
      if (!f) throw std::runtime_error("cannot write " + a.emit_worst);
      f << sequence_to_json(task.dag, *worst).dump(2) << '\n';
    }
    if (!a.csv.empty()) {
      std::ofstream f(a.csv);
      if (!f) throw std::runtime_error("cannot write " + a.csv);
      write_sequence_csv(f, task.dag, *worst);
    }
  }
  out["safe"] = above_bound == 0 && violations == 0;
  std::cout << out.dump(2) << '\n';
  if (worst) std::cerr << "max observed " << human(worst->response_time) << " <= NEW-B-2 " << human(b2) << '\n';
  if (above_bound > 0 || violations > 0) {
    std::cerr << "error: " << above_bound << " runs exceeded NEW-B-2, " << violations << " failed the schedule check\n";
    return kError;
  }
  return kOk;
}

// ---- generate -------------------------------------------------------------

struct GenArgs {
  std::uint64_t seed = 1;
  std::string out;
  bool paper_scale = false;
  std::string vertices, edge_probability, types, cores, utilization, period;
};

GenConfig config_from(const GenArgs& a) {
  GenConfig c = a.paper_scale ? GenConfig{} : GenConfig::desk();
  c.seed = a.seed;
  if (!a.vertices.empty()) c.vertices = parse_range<std::uint32_t>(a.vertices);
  if (!a.edge_probability.empty()) c.edge_probability = parse_range<double>(a.edge_probability);
  if (!a.types.empty()) c.types = parse_range<std::uint32_t>(a.types);
  if (!a.cores.empty()) c.cores = parse_range<std::uint32_t>(a.cores);
  if (!a.utilization.empty()) c.utilization = parse_range<double>(a.utilization);
  if (!a.period.empty()) c.period = Weight::parse(a.period);
  c.check();
  return c;
}

int cmd_generate(const GenArgs& a) {
  GeneratedTask task = gen_task(config_from(a));
  json j = task_to_json(task.dag, task.platform);
  j["utilization"] = task.utilization.fraction_str();
  j["seed"] = a.seed;
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << text;
  }
  std::cerr << "generated " << task.dag.size() << " vertices, " << task.dag.edges().size() << " edges, "
            << task.platform.type_count() << " core types, U = " << task.utilization.decimal_str(2) << '\n';
  return kOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string sweep = "U";
  std::string values;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::size_t workers = 0;
  bool paper_scale = false;
  std::string bounds = "old,new1,new2";
  std::uint64_t tuple_budget = 10'000'000;
  std::uint64_t time_budget_ms = 0;
  std::uint64_t path_limit = 1'000'000;
  bool state_space = false;
  std::string diamond_ks;
  std::size_t random_instances = 100;
};

std::vector<double> default_values(SweepParameter p) {
  switch (p) {
    case SweepParameter::Utilization: return {1.0, 1.5, 2.0, 2.5, 3.0};
    case SweepParameter::Vertices: return {20, 30, 40, 50, 60};
    case SweepParameter::EdgeProbability: return {0.04, 0.06, 0.08, 0.1, 0.12};
    case SweepParameter::Types: return {2, 3, 4, 5};
    case SweepParameter::Cores: return {2, 4, 6, 8, 10};
  }
  return {};
}

int cmd_state_space(const BenchArgs& a) {
  StateSpaceSpec spec;
  if (!a.diamond_ks.empty()) {
    spec.diamond_ks.clear();
    for (const std::string& k : split(a.diamond_ks, ',')) spec.diamond_ks.push_back(static_cast<std::uint32_t>(std::stoul(k)));
  }
  spec.random_instances = a.random_instances;
  spec.random_config.seed = a.seed;
  StateSpaceSummary summary = state_space_report(spec);

  std::filesystem::create_directories(a.out_dir);
  const auto csv_path = std::filesystem::path(a.out_dir) / "state_space.csv";
  const auto json_path = std::filesystem::path(a.out_dir) / "state_space.json";
  std::ofstream csv(csv_path);
  write_state_space_csv(csv, summary);
  json j{{"rows", summary.rows.size()},
         {"skipped", summary.skipped},
         {"min_ratio", summary.min_ratio},
         {"median_ratio", summary.median_ratio},
         {"max_ratio", summary.max_ratio},
         {"csv", csv_path.string()}};
  std::ofstream(json_path) << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  for (const auto& r : summary.rows) {
    if (r.family != "diamonds") continue;
    std::cerr << "diamonds k=" << r.parameter << ": paths " << r.paths << ", tuples " << r.tuples << '\n';
  }
  std::cerr << "tuples/paths ratio: min " << summary.min_ratio << ", median " << summary.median_ratio << ", max "
            << summary.max_ratio << '\n';
  return kOk;
}

int cmd_bench(const BenchArgs& a) {
  if (a.state_space) return cmd_state_space(a);
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(a.sweep);
  if (a.values.empty()) {
    spec.values = default_values(spec.parameter);
  } else {
    for (const std::string& v : split(a.values, ',')) spec.values.push_back(std::stod(v));
  }
  spec.trials = a.trials;
  spec.base = a.paper_scale ? GenConfig{} : GenConfig::desk();
  spec.base.seed = a.seed;
  spec.bounds = {false, false, false};
  for (const std::string& b : split(a.bounds, ',')) {
    if (b == "old") spec.bounds.old_b = true;
    else if (b == "new1") spec.bounds.new_b_1 = true;
    else if (b == "new2") spec.bounds.new_b_2 = true;
    else throw std::invalid_argument("unknown bound '" + b + "'");
  }
  spec.tuple_budget = a.tuple_budget;
  if (a.time_budget_ms > 0) spec.time_budget = std::chrono::milliseconds(a.time_budget_ms);
  spec.path_count_limit = a.path_limit;
  spec.workers = a.workers > 0 ? a.workers : default_worker_count();

  std::vector<SweepRow> rows = run_sweep(spec);

  std::filesystem::create_directories(a.out_dir);
  const std::string stem = "sweep_" + to_string(spec.parameter);
  const auto csv_path = std::filesystem::path(a.out_dir) / (stem + ".csv");
  const auto json_path = std::filesystem::path(a.out_dir) / (stem + ".json");
  {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    write_sweep_csv(csv, spec, rows);
  }
  json summary = sweep_summary_json(spec, rows);
  summary["csv"] = csv_path.string();
  std::ofstream(json_path) << summary.dump(2) << '\n';
  std::cout << summary.dump(2) << '\n';

  std::cerr << std::left << std::setw(8) << to_string(spec.parameter) << std::setw(10) << "done" << std::setw(10)
            << "OLD-B" << std::setw(10) << "NEW-B-1" << "NEW-B-2\n";
  auto cell = [](const std::optional<BoundColumn>& c) {
    std::ostringstream s;
    if (c) s << std::fixed << std::setprecision(3) << c->acceptance;
    else s << "-";
    return s.str();
  };
  for (const SweepRow& r : rows) {
    std::cerr << std::setw(8) << r.value << std::setw(10) << (std::to_string(r.completed) + "/" + std::to_string(r.instances))
              << std::setw(10) << cell(r.old_b) << std::setw(10) << cell(r.new_b_1) << cell(r.new_b_2) << '\n';
  }
  return kOk;
}

// ---- sat-check ------------------------------------------------------------

struct SatArgs {
  std::uint32_t vars = 4;
  std::uint32_t clauses = 6;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::string dimacs;
};

struct SatOutcome {
  bool satisfiable = false;
  Weight bound;
  Weight threshold;
  bool agrees = false;
  bool in_band = true;
};

SatOutcome check_instance(const CnfInstance& cnf) {
  SatReduction red = sat_reduction(cnf);
  SatOutcome o;
  o.satisfiable = sat_brute_force(cnf);
  o.bound = new_b_2(red.dag, red.platform).bound;
  o.threshold = red.threshold;
  o.agrees = (o.bound > o.threshold) == o.satisfiable;
  if (o.satisfiable) o.in_band = o.bound <= o.threshold + Weight(1);
  return o;
}

std::size_t tautological_clauses(const CnfInstance& cnf) {
  std::size_t count = 0;
  for (const auto& clause : cnf.clauses) {
    bool t = false;
    for (const auto& x : clause)
      for (const auto& y : clause) t |= x.var == y.var && x.positive != y.positive;
    count += t;
  }
  return count;
}

int cmd_sat_check(const SatArgs& a) {
  if (!a.dimacs.empty()) {
    std::ifstream in(a.dimacs);
    if (!in) throw std::runtime_error("cannot open " + a.dimacs);
    CnfInstance cnf = parse_dimacs(in);
    SatOutcome o = check_instance(cnf);
    json out{{"vars", cnf.vars},
             {"clauses", cnf.clauses.size()},
             {"satisfiable", o.satisfiable},
             {"new_b_2", o.bound.fraction_str()},
             {"threshold", o.threshold.fraction_str()},
             {"agrees", o.agrees},
             {"in_band", o.in_band},
             {"tautological_clauses", tautological_clauses(cnf)}};
    std::cout << out.dump(2) << '\n';
    if (tautological_clauses(cnf) > 0) {
      std::cerr << "warning: clauses containing a literal and its negation can break the reduction's iff property\n";
    }
    return o.agrees && o.in_band ? kOk : kNegative;
  }

  if (a.vars < 1 || a.clauses < 1) throw std::invalid_argument("sat-check needs --vars >= 1 and --clauses >= 1");
  std::mt19937_64 rng(a.seed);
  std::size_t agreements = 0, in_band = 0, satisfiable = 0;
  for (std::size_t i = 0; i < a.trials; ++i) {
    CnfInstance cnf = random_cnf(a.vars, a.clauses, rng);
    SatOutcome o = check_instance(cnf);
    agreements += o.agrees;
    in_band += o.in_band;
    satisfiable += o.satisfiable;
    if (!o.agrees || !o.in_band) {
      std::cerr << "trial " << i << ": satisfiable=" << o.satisfiable << " bound=" << o.bound.str()
                << " threshold=" << o.threshold.str() << '\n';
    }
  }
  json out{{"vars", a.vars},        {"clauses", a.clauses},   {"trials", a.trials},   {"seed", a.seed},
           {"satisfiable", satisfiable}, {"agreements", agreements}, {"in_band", in_band}};
  std::cout << out.dump(2) << '\n';
  std::cerr << agreements << "/" << a.trials << " iff-agreements\n";
  return agreements == a.trials && in_band == a.trials ? kOk : kNegative;
}

// ---- validate -------------------------------------------------------------

int cmd_validate(const std::string& path, const std::string& platform_override) {
  TaskFile file = read_task_file(path);
  validate(file.dag);
  std::optional<Platform> platform = file.platform;
  if (!platform_override.empty()) platform = Platform(parse_core_list(platform_override));
  if (platform) check_types(file.dag, *platform);
  json out{{"valid", true},
           {"vertices", file.dag.size()},
           {"edges", file.dag.edges().size()},
           {"sources", file.dag.sources().size()},
           {"sinks", file.dag.sinks().size()},
           {"types", file.types},
           {"has_platform", platform.has_value()}};
  if (!file.dag.empty()) {
    out["len"] = longest_path(file.dag).fraction_str();
    out["vol"] = vol(file.dag).fraction_str();
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Response-time bounds for typed DAG tasks on heterogeneous multicores"};
  app.require_subcommand(1);
  std::function<int()> run;

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute response-time bounds for a task file");
  analyze_cmd->add_option("task", an.task, "Task JSON file")->required();
  analyze_cmd->add_option("--platform", an.platform, "Core counts per type, e.g. 2,3 (overrides the file)");
  analyze_cmd->add_option("--bounds", an.bounds, "Comma list of old,new1,new2")->capture_default_str();
  analyze_cmd->add_option("--deadline", an.deadline, "Deadline (integer, decimal or p/q)");
  analyze_cmd->add_flag("--strict-paper", an.strict_paper, "Never evict retained tuples");
  analyze_cmd->add_flag("--no-pruning", an.no_pruning, "Disable dominance pruning");
  analyze_cmd->add_option("--tuple-limit", an.tuple_limit, "Maximum retained tuples")->capture_default_str();
  analyze_cmd->add_option("--time-limit-ms", an.time_limit_ms, "Wall-clock limit for the tuple search");
  analyze_cmd->add_option("--count-paths", an.count_paths, "Count complete paths up to this many");
  analyze_cmd->callback([&] { run = [&] { return cmd_analyze(an); }; });

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate random execution scenarios against the bounds");
  sim_cmd->add_option("task", sim.task, "Task JSON file")->required();
  sim_cmd->add_option("--platform", sim.platform, "Core counts per type (overrides the file)");
  sim_cmd->add_option("--runs", sim.runs, "Number of scenarios")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Scenario seed")->capture_default_str();
  sim_cmd->add_option("--emit-worst", sim.emit_worst, "Write the worst sequence as JSON");
  sim_cmd->add_option("--csv", sim.csv, "Write the worst sequence as CSV");
  sim_cmd->add_option("--tuple-limit", sim.tuple_limit, "Maximum retained tuples")->capture_default_str();
  sim_cmd->callback([&] { run = [&] { return cmd_simulate(sim); }; });

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a random task and platform");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");
  gen_cmd->add_flag("--paper-scale", gen.paper_scale, "Use the full-size defaults instead of desk scale");
  gen_cmd->add_option("--vertices", gen.vertices, "Vertex count, n or lo:hi");
  gen_cmd->add_option("--edge-probability", gen.edge_probability, "Edge probability, p or lo:hi");
  gen_cmd->add_option("--types", gen.types, "Core type count, n or lo:hi");
  gen_cmd->add_option("--cores", gen.cores, "Cores per type, n or lo:hi");
  gen_cmd->add_option("--utilization", gen.utilization, "Utilization, u or lo:hi");
  gen_cmd->add_option("--period", gen.period, "Period");
  gen_cmd->callback([&] { run = [&] { return cmd_generate(gen); }; });

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a parameter sweep or the state-space report");
  bench_cmd->add_option("--sweep", bench.sweep, "U, V, pr, S or M")->capture_default_str();
  bench_cmd->add_option("--values", bench.values, "Comma list of values for the swept parameter");
  bench_cmd->add_option("--trials", bench.trials, "Trials per value")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for CSV and JSON output")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (default: TDAG_WORKERS or all cores)");
  bench_cmd->add_flag("--paper-scale", bench.paper_scale, "Use the full-size generator defaults");
  bench_cmd->add_option("--bounds", bench.bounds, "Comma list of old,new1,new2")->capture_default_str();
  bench_cmd->add_option("--tuple-budget", bench.tuple_budget, "Retained-tuple budget per instance")->capture_default_str();
  bench_cmd->add_option("--time-budget-ms", bench.time_budget_ms, "Wall-clock budget per instance");
  bench_cmd->add_option("--path-limit", bench.path_limit, "Count complete paths up to this many")->capture_default_str();
  bench_cmd->add_flag("--state-space", bench.state_space, "Report tuples generated against complete paths");
  bench_cmd->add_option("--diamond-k", bench.diamond_ks, "Comma list of stacked-diamond depths");
  bench_cmd->add_option("--random-instances", bench.random_instances, "Random 15-vertex tasks")->capture_default_str();
  bench_cmd->callback([&] { run = [&] { return cmd_bench(bench); }; });

  SatArgs sat;
  auto* sat_cmd = app.add_subcommand("sat-check", "Check the 3-SAT reduction against truth tables");
  sat_cmd->add_option("--vars", sat.vars, "Variables per formula")->capture_default_str();
  sat_cmd->add_option("--clauses", sat.clauses, "Clauses per formula")->capture_default_str();
  sat_cmd->add_option("--trials", sat.trials, "Random formulas")->capture_default_str();
  sat_cmd->add_option("--seed", sat.seed, "Seed")->capture_default_str();
  sat_cmd->add_option("--dimacs", sat.dimacs, "Check one DIMACS CNF file instead");
  sat_cmd->callback([&] { run = [&] { return cmd_sat_check(sat); }; });

  std::string validate_task, validate_platform;
  auto* val_cmd = app.add_subcommand("validate", "Check a task file");
  val_cmd->add_option("task", validate_task, "Task JSON file")->required();
  val_cmd->add_option("--platform", validate_platform, "Core counts per type");
  val_cmd->callback([&] { run = [&] { return cmd_validate(validate_task, validate_platform); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  try {
    return run();
  } catch (const CycleDetected& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
