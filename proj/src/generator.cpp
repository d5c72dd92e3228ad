#include "tdag/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tdag {

namespace {

constexpr std::int64_t kSnapUnits = std::int64_t{1} << 20;

template <class T>
T draw(const Range<T>& r, std::mt19937_64& rng) {
  if constexpr (std::is_integral_v<T>) {
    return std::uniform_int_distribution<T>(r.lo, r.hi)(rng);
  } else {
    if (r.lo == r.hi) return r.lo;
    return std::uniform_real_distribution<T>(r.lo, r.hi)(rng);
  }
}

}  // namespace

GenConfig GenConfig::desk() {
  GenConfig c;
  c.vertices = {20, 60};
  c.types = {2, 5};
  return c;
}

void GenConfig::check() const {
  if (vertices.empty() || edge_probability.empty() || types.empty() || cores.empty() || utilization.empty()) {
    throw std::invalid_argument("generator ranges must be nonempty (lo <= hi)");
  }
  if (vertices.lo < 1) throw std::invalid_argument("need at least one vertex");
  if (types.lo < 1) throw std::invalid_argument("need at least one core type");
  if (cores.lo < 1) throw std::invalid_argument("every core type needs at least one core");
  if (edge_probability.lo < 0.0 || edge_probability.hi > 1.0) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  if (utilization.lo <= 0.0) throw std::invalid_argument("utilization must be positive");
  if (period <= Weight(0)) throw std::invalid_argument("period must be positive");
}

std::vector<Weight> uunifast(std::size_t n, const Weight& total, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("uunifast needs n >= 1");
  if (total <= Weight(0)) throw std::invalid_argument("uunifast needs a positive total");
  if (static_cast<std::int64_t>(n) > kSnapUnits) throw std::invalid_argument("uunifast: n too large");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> share(n);
  double sum = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double next = sum * std::pow(unit(rng), 1.0 / static_cast<double>(n - i - 1));
    share[i] = sum - next;
    sum = next;
  }
  share[n - 1] = sum;

  // Integer units of total / 2^20; each at least one, last absorbs rounding.
  std::vector<std::int64_t> units(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    units[i] = std::max<std::int64_t>(1, std::llround(share[i] * static_cast<double>(kSnapUnits)));
    assigned += units[i];
  }
  units[n - 1] = kSnapUnits - assigned;
  while (units[n - 1] < 1) {
    auto largest = std::max_element(units.begin(), units.end() - 1);
    --*largest;
    ++units[n - 1];
  }

  std::vector<Weight> out;
  out.reserve(n);
  for (std::int64_t u : units) out.push_back(total * Weight(u, kSnapUnits));
  return out;
}

std::vector<Weight> uunifast(std::size_t n, const Weight& total, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return uunifast(n, total, rng);
}

Platform gen_platform(const GenConfig& config, std::mt19937_64& rng) {
  config.check();
  std::uint32_t types = draw(config.types, rng);
  std::vector<std::uint32_t> cores(types);
  for (auto& m : cores) m = draw(config.cores, rng);
  return Platform(std::move(cores));
}

Platform gen_platform(const GenConfig& config) {
  std::mt19937_64 rng(config.seed);
  return gen_platform(config, rng);
}

TypedDag gen_dag(const GenConfig& config, std::size_t type_count, std::mt19937_64& rng, Weight* utilization_out,
                 double* edge_probability_out) {
  config.check();
  if (type_count < 1) throw std::invalid_argument("gen_dag needs at least one core type");
  const std::uint32_t n = draw(config.vertices, rng);
  const double pr = draw(config.edge_probability, rng);
  const Weight utilization(std::llround(draw(config.utilization, rng) * 100.0), 100);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::shuffle(order.begin(), order.end(), rng);

  std::bernoulli_distribution coin(pr);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({VertexId(order[i]), VertexId(order[j])});

  std::uniform_int_distribution<std::uint32_t> type_of(0, static_cast<std::uint32_t>(type_count - 1));
  std::vector<Vertex> vertices(n);
  for (auto& v : vertices) v.type = CoreTypeId(type_of(rng));
  auto wcets = uunifast(n, utilization * config.period, rng);
  for (std::uint32_t i = 0; i < n; ++i) vertices[i].wcet = wcets[i];

  if (utilization_out) *utilization_out = utilization;
  if (edge_probability_out) *edge_probability_out = pr;
  return normalize(TypedDag(std::move(vertices), std::move(edges)));
}

GeneratedTask gen_task(const GenConfig& config) {
  std::mt19937_64 rng(config.seed);
  GeneratedTask task;
  task.platform = gen_platform(config, rng);
  task.dag = gen_dag(config, task.platform.type_count(), rng, &task.utilization, &task.edge_probability);
  return task;
}

TypedDag stacked_diamonds(std::uint32_t k, std::uint32_t mid_type) {
  std::vector<Vertex> vertices{{Weight(1), CoreTypeId(0)}};
  std::vector<Edge> edges;
  VertexId top(0);
  for (std::uint32_t d = 0; d < k; ++d) {
    VertexId left(vertices.size());
    VertexId right(vertices.size() + 1);
    VertexId bottom(vertices.size() + 2);
    vertices.push_back({Weight(1), CoreTypeId(mid_type)});
    vertices.push_back({Weight(1), CoreTypeId(mid_type)});
    vertices.push_back({Weight(1), CoreTypeId(0)});
    edges.insert(edges.end(), {{top, left}, {top, right}, {left, bottom}, {right, bottom}});
    top = bottom;
  }
  return TypedDag(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------

TooManyVariables::TooManyVariables(std::uint32_t n)
    : TdagError("truth-table check supports at most 20 variables, got " + std::to_string(n)) {}

void CnfInstance::check() const {
  for (const auto& clause : clauses)
    for (const Literal& lit : clause)
      if (lit.var >= vars) throw std::invalid_argument("literal refers to variable beyond n");
}

SatReduction sat_reduction(const CnfInstance& cnf) {
  cnf.check();
  if (cnf.vars < 1) throw std::invalid_argument("sat_reduction needs at least one variable");
  const std::uint32_t n = cnf.vars;
  const std::uint32_t m = static_cast<std::uint32_t>(cnf.clauses.size());
  const Weight literal_wcet(1, static_cast<std::int64_t>(m) * n + 1);

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  auto add = [&](Weight wcet, std::uint32_t type) {
    vertices.push_back({wcet, CoreTypeId(type)});
    return VertexId(vertices.size() - 1);
  };

  std::vector<VertexId> spine;
  for (std::uint32_t i = 0; i <= n; ++i) spine.push_back(add(Weight(1), 0));
  for (std::uint32_t r = 1; r <= m; ++r) {
    VertexId u = add(Weight(1), r);
    edges.push_back({spine.front(), u});
    edges.push_back({u, spine.back()});
  }

  auto contains = [&](std::uint32_t r, Literal lit) {
    const auto& c = cnf.clauses[r - 1];
    return std::find(c.begin(), c.end(), lit) != c.end();
  };
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (bool positive : {true, false}) {
      VertexId prev = spine[i - 1];
      for (std::uint32_t r = 1; r <= m; ++r) {
        if (!contains(r, Literal{i - 1, positive})) continue;
        VertexId x = add(literal_wcet, r);
        edges.push_back({prev, x});
        prev = x;
      }
      edges.push_back({prev, spine[i]});  // duplicates of an empty path collapse in TypedDag
    }
  }

  SatReduction out;
  out.dag = TypedDag(std::move(vertices), std::move(edges));
  out.platform = Platform(std::vector<std::uint32_t>(m + 1, 1));
  out.threshold = Weight(static_cast<std::int64_t>(m) + n + 1);
  return out;
}

bool sat_brute_force(const CnfInstance& cnf) {
  if (cnf.vars > 20) throw TooManyVariables(cnf.vars);
  cnf.check();
  for (std::uint32_t assignment = 0; assignment < (1u << cnf.vars); ++assignment) {
    bool all = std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [&](const auto& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](const Literal& lit) {
        return (((assignment >> lit.var) & 1u) != 0) == lit.positive;
      });
    });
    if (all) return true;
  }
  return false;
}

CnfInstance random_cnf(std::uint32_t vars, std::uint32_t clauses, std::mt19937_64& rng) {
  if (vars < 1) throw std::invalid_argument("random_cnf needs at least one variable");
  std::uniform_int_distribution<std::uint32_t> var(0, vars - 1);
  std::bernoulli_distribution sign(0.5);
  CnfInstance cnf;
  cnf.vars = vars;
  while (cnf.clauses.size() < clauses) {
    std::array<Literal, 3> clause;
    for (auto& lit : clause) lit = {var(rng), sign(rng)};
    bool tautology = false;
    for (const auto& a : clause)
      for (const auto& b : clause)
        tautology |= a.var == b.var && a.positive != b.positive;
    if (!tautology) cnf.clauses.push_back(clause);
  }
  return cnf;
}

CnfInstance parse_dimacs(std::istream& in) {
  CnfInstance cnf;
  std::int64_t declared_clauses = -1;
  std::vector<std::int64_t> pending;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      std::int64_t n = -1;
      if (!(ls >> fmt >> n >> declared_clauses) || fmt != "cnf" || n < 0 || declared_clauses < 0) {
        throw std::invalid_argument("malformed DIMACS header: " + line);
      }
      cnf.vars = static_cast<std::uint32_t>(n);
      continue;
    }
    if (declared_clauses < 0) throw std::invalid_argument("DIMACS clause before the 'p cnf' header");
    ls.clear();
    ls.str(line);
    std::int64_t lit = 0;
    while (ls >> lit) {
      if (lit != 0) {
        pending.push_back(lit);
        continue;
      }
      if (pending.size() != 3) {
        throw std::invalid_argument("DIMACS clause must have exactly 3 literals, got " + std::to_string(pending.size()));
      }
      std::array<Literal, 3> clause;
      for (std::size_t k = 0; k < 3; ++k) {
        std::int64_t v = pending[k] < 0 ? -pending[k] : pending[k];
        if (v > cnf.vars) throw std::invalid_argument("DIMACS literal " + std::to_string(pending[k]) + " out of range");
        clause[k] = {static_cast<std::uint32_t>(v - 1), pending[k] > 0};
      }
      cnf.clauses.push_back(clause);
      pending.clear();
    }
    if (!ls.eof()) throw std::invalid_argument("malformed DIMACS line: " + line);
  }
  if (declared_clauses < 0) throw std::invalid_argument("missing DIMACS 'p cnf' header");
  if (!pending.empty()) throw std::invalid_argument("unterminated DIMACS clause");
  if (static_cast<std::int64_t>(cnf.clauses.size()) != declared_clauses) {
    throw std::invalid_argument("DIMACS header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

}  // namespace tdag
