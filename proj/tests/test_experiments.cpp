#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "tdag/experiments.hpp"

using namespace tdag;

namespace {

SweepSpec small_sweep() {
  SweepSpec spec;
  spec.parameter = SweepParameter::Utilization;
  spec.values = {1.0, 2.0, 3.0};
  spec.trials = 12;
  spec.base.seed = 77;
  return spec;
}

}  // namespace

TEST_CASE("sweep parameter names") {
  CHECK(parse_sweep_parameter("U") == SweepParameter::Utilization);
  CHECK(parse_sweep_parameter("v") == SweepParameter::Vertices);
  CHECK(parse_sweep_parameter("pr") == SweepParameter::EdgeProbability);
  CHECK(parse_sweep_parameter("S") == SweepParameter::Types);
  CHECK(parse_sweep_parameter("M") == SweepParameter::Cores);
  CHECK_THROWS_AS(parse_sweep_parameter("x"), std::invalid_argument);
  for (auto p : {SweepParameter::Utilization, SweepParameter::Vertices, SweepParameter::EdgeProbability,
                 SweepParameter::Types, SweepParameter::Cores})
    CHECK(parse_sweep_parameter(to_string(p)) == p);
}

TEST_CASE("sweep points pin the swept parameter and share per-trial seeds") {
  SweepSpec spec = small_sweep();
  spec.parameter = SweepParameter::Vertices;
  spec.values = {30, 40};
  GenConfig a = sweep_point_config(spec, 1, 0);
  CHECK(a.vertices.lo == 40);
  CHECK(a.vertices.hi == 40);
  CHECK(a.types.lo == spec.base.types.lo);
  CHECK(sweep_point_config(spec, 1, 0).seed == a.seed);
  CHECK(sweep_point_config(spec, 1, 1).seed != a.seed);
  CHECK(sweep_point_config(spec, 0, 0).seed == a.seed);

  spec.values = {2.5};
  CHECK_THROWS_AS(sweep_point_config(spec, 0, 0), std::invalid_argument);
  spec.values = {};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
  SweepSpec spec = small_sweep();
  auto one = run_sweep(spec);
  spec.workers = 3;
  auto three = run_sweep(spec);
  REQUIRE(one.size() == 3);
  REQUIRE(three.size() == 3);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].completed == three[i].completed);
    CHECK(one[i].timeouts == three[i].timeouts);
    CHECK(one[i].new_b_2->acceptance == three[i].new_b_2->acceptance);
    CHECK(one[i].new_b_1->normalized == three[i].new_b_1->normalized);
    CHECK(one[i].mean_tuples == three[i].mean_tuples);
  }
  for (const SweepRow& r : one) {
    CHECK(r.instances == 12);
    CHECK(r.completed + r.timeouts == r.instances);
    // Tighter bounds accept at least as many tasks.
    CHECK(r.new_b_2->acceptance >= r.new_b_1->acceptance);
    CHECK(r.new_b_1->acceptance >= r.old_b->acceptance);
    CHECK(r.new_b_2->normalized <= r.new_b_1->normalized);
    CHECK(r.new_b_1->normalized <= 1.0);
    CHECK(r.old_b->normalized == 1.0);
  }
  // Same graphs with proportionally larger WCETs: acceptance can only drop.
  for (std::size_t i = 1; i < one.size(); ++i) {
    CHECK(one[i].old_b->acceptance <= one[i - 1].old_b->acceptance);
    CHECK(one[i].new_b_1->acceptance <= one[i - 1].new_b_1->acceptance);
    CHECK(one[i].new_b_2->acceptance <= one[i - 1].new_b_2->acceptance);
  }
}

TEST_CASE("tuple budget turns oversized searches into timeouts") {
  SweepSpec spec = small_sweep();
  spec.values = {2.0};
  spec.tuple_budget = 1;
  auto rows = run_sweep(spec);
  CHECK(rows[0].timeouts == rows[0].instances);
  CHECK(rows[0].completed == 0);
}

TEST_CASE("sweep output formats") {
  SweepSpec spec = small_sweep();
  spec.values = {1.5};
  spec.trials = 3;
  spec.bounds.new_b_2 = false;
  auto rows = run_sweep(spec);
  std::ostringstream csv;
  write_sweep_csv(csv, spec, rows);
  std::string header, line;
  std::istringstream in(csv.str());
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header.rfind("U,instances,completed,timeouts,", 0) == 0);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(line.begin(), line.end(), ','));
  CHECK_FALSE(rows[0].new_b_2.has_value());

  auto j = sweep_summary_json(spec, rows);
  CHECK(j["parameter"] == "U");
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["new_b_2"].is_null());
  CHECK(j["rows"][0]["old_b"]["acceptance"].is_number());
}

TEST_CASE("state-space report on small families") {
  StateSpaceSpec spec;
  spec.diamond_ks = {2, 5, 8};
  spec.random_instances = 10;
  auto summary = state_space_report(spec);
  REQUIRE(summary.rows.size() + summary.skipped == 13);
  for (const auto& row : summary.rows) {
    CAPTURE(row.family);
    CAPTURE(row.parameter);
    CHECK(row.tuples <= row.paths * row.max_path_vertices);
    if (row.family == "diamonds") {
      CHECK(row.paths == (std::uint64_t{1} << row.parameter));
      if (row.parameter >= 5) CHECK(row.tuples < row.paths);
    }
  }
  CHECK(summary.min_ratio <= summary.median_ratio);
  CHECK(summary.median_ratio <= summary.max_ratio);
  std::ostringstream csv;
  write_state_space_csv(csv, summary);
  CHECK(csv.str().rfind("family,parameter,vertices,paths,tuples,max_path_vertices,ratio\n", 0) == 0);
}

TEST_CASE("worker count from the environment") {
  setenv("TDAG_WORKERS", "3", 1);
  CHECK(default_worker_count() == 3);
  setenv("TDAG_WORKERS", "zero", 1);
  CHECK(default_worker_count() >= 1);
  unsetenv("TDAG_WORKERS");
  CHECK(default_worker_count() >= 1);
}
