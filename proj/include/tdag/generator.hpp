#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tdag/graph.hpp"

namespace tdag {

template <class T>
struct Range {
  T lo;
  T hi;
  bool empty() const { return hi < lo; }
};

/// Random workload parameters. Defaults follow the published evaluation
/// setup; desk() shrinks |S| and |V| so the exact tuple search stays fast.
struct GenConfig {
  Range<std::uint32_t> vertices{70, 100};
  Range<double> edge_probability{0.08, 0.1};
  Range<std::uint32_t> types{5, 10};
  Range<std::uint32_t> cores{2, 11};
  Range<double> utilization{1.0, 3.0};
  Weight period{100};
  std::uint64_t seed = 0;

  static GenConfig desk();
  /// Throws std::invalid_argument on empty ranges or out-of-domain values.
  void check() const;
};

struct GeneratedTask {
  TypedDag dag;
  Platform platform;
  Weight utilization;
  double edge_probability = 0.0;
};

/// n positive weights summing exactly to `total`, by the UUniFast recurrence
/// on doubles, then snapped to multiples of total / 2^20.
std::vector<Weight> uunifast(std::size_t n, const Weight& total, std::mt19937_64& rng);
std::vector<Weight> uunifast(std::size_t n, const Weight& total, std::uint64_t seed);

Platform gen_platform(const GenConfig& config, std::mt19937_64& rng);
Platform gen_platform(const GenConfig& config);

/// Random vertex order, each forward pair joined with probability p_r,
/// uniform random types, WCETs by uunifast over U * period, then normalized.
TypedDag gen_dag(const GenConfig& config, std::size_t type_count, std::mt19937_64& rng,
                 Weight* utilization_out = nullptr, double* edge_probability_out = nullptr);

/// Platform first, then a task over its types. Deterministic in config.seed.
GeneratedTask gen_task(const GenConfig& config);

/// k diamonds in series (2^k complete paths): junctions of type 0, both
/// middle vertices of a diamond share type `mid_type`. WCET 1 everywhere.
TypedDag stacked_diamonds(std::uint32_t k, std::uint32_t mid_type = 0);

// ---- 3-SAT reduction ------------------------------------------------------

struct Literal {
  std::uint32_t var = 0;  // 0-based
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfInstance {
  std::uint32_t vars = 0;
  std::vector<std::array<Literal, 3>> clauses;

  void check() const;
};

class TooManyVariables : public TdagError {
public:
  explicit TooManyVariables(std::uint32_t n);
};

struct SatReduction {
  TypedDag dag;
  Platform platform;
  Weight threshold;  // m + n + 1
};

/// Spine v_0..v_n of type 0, a clause vertex per clause hanging between v_0
/// and v_n, and per variable a positive and a negative path from v_{i-1} to
/// v_i holding one vertex of type r per clause r containing that literal.
SatReduction sat_reduction(const CnfInstance& cnf);

/// Truth-table satisfiability; throws TooManyVariables beyond 20 variables.
bool sat_brute_force(const CnfInstance& cnf);

/// Uniform literals; clauses holding both x and not-x are redrawn.
CnfInstance random_cnf(std::uint32_t vars, std::uint32_t clauses, std::mt19937_64& rng);

/// "p cnf n m" header then clauses of exactly three literals ending in 0.
CnfInstance parse_dimacs(std::istream& in);

}  // namespace tdag
