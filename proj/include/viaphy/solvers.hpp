#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "viaphy/instance.hpp"
#include "viaphy/pd_oracle.hpp"
#include "viaphy/species_set.hpp"
#include "viaphy/viability.hpp"

namespace viaphy {

enum class Algorithm { kFaller, kGreedyP, kEnumP, kExact };

std::string algorithm_name(Algorithm a);

struct SolverLimits {
  // Candidate sets examined across one solve (greedy phases).
  std::int64_t max_candidates = 10'000'000;
  // Subsets enumerated while seeding the enumeration variant.
  std::int64_t max_seeds = 100'000;
  // Ground-set cap for the exact reference solver.
  int exact_species_cap = 20;
  SteinerLimits steiner;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::kGreedyP;
  int p = 1;  // subset-size parameter of the greedy/enumeration variants
  SolverLimits limits;
  // Parallelism hint for independent candidate evaluation; the current
  // implementation evaluates serially, which trivially preserves the
  // deterministic tie-breaking.
  int threads = 1;
};

struct SolveReport {
  std::string algorithm;
  int p = 0;
  SpeciesSet chosen;
  std::int64_t value = 0;
  bool viable = false;
  std::int64_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t steiner_calls = 0;
  std::chrono::microseconds elapsed{0};
};

// Greedy of Faller et al.: repeatedly add, among species of unit cost
// (sinks or species with a selected successor), the one with the largest
// marginal gain; smallest index wins ties. No approximation guarantee.
SolveReport solve_faller(const Instance& inst, const SubmodularOracle& oracle,
                         const SolverConfig& config = {});

// Parameterized greedy: the best vcl of a single set of size <= p, versus a
// cost-benefit greedy over sets of size <= p with exact rational ratio
// comparison. (1 - e^{-p/(p+d-1)})/2 approximation.
SolveReport solve_greedy_p(const Instance& inst, const SubmodularOracle& oracle,
                           const SolverConfig& config = {});

// Enumeration variant: runs the greedy loop from every viable seed of size
// <= min(3p+3d-3, k) and keeps the best result. (1 - e^{-p/(p+d-1)})
// approximation; exponential in p + d.
SolveReport solve_enum_p(const Instance& inst, const SubmodularOracle& oracle,
                         const SolverConfig& config = {});

// Exact reference solver: exhaustive search over viable subsets of size <= k
// with sound pruning. Supports generalized (AND) instances.
SolveReport solve_exact(const Instance& inst, const SubmodularOracle& oracle,
                        const SolverConfig& config = {});

SolveReport solve(const Instance& inst, const SubmodularOracle& oracle,
                  const SolverConfig& config);

// The greedy loop shared by solve_greedy_p (empty seed) and solve_enum_p
// (every viable seed), exposed for direct testing.
struct GreedyFillStats {
  std::int64_t iterations = 0;
  std::int64_t candidates = 0;
  std::uint64_t steiner_calls = 0;
};
SpeciesSet greedy_fill(const Instance& inst, const SubmodularOracle& oracle,
                       int p, SpeciesSet seed, const SolverLimits& limits,
                       GreedyFillStats& stats);

// DFS decomposition of a viable set O into pairs (O_i, B_i): |O_i| <= p,
// |B_i| <= d-1, each O_i ∪ B_i viable, the O_i disjoint and covering O.
struct DecompositionPair {
  SpeciesSet o;
  SpeciesSet b;
};
struct Decomposition {
  std::vector<DecompositionPair> pairs;
};
Decomposition decompose(const SpeciesSet& o, const FoodWeb& web, int p,
                        std::int64_t k);

}  // namespace viaphy
