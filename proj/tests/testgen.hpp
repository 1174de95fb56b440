#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "viaphy/instance.hpp"
#include "viaphy/pd_oracle.hpp"
#include "viaphy/species_set.hpp"

// Deterministic random instances and independent brute-force oracles shared
// by the unit and acceptance suites. Everything here is test-only and kept
// deliberately naive; the oracles must not share code paths with the
// implementations they check.
namespace viaphy::testgen {

// Bounded integers straight off mt19937 output; std::uniform_int_distribution
// is not bit-stable across standard libraries, and test corpora must be.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}

  // inclusive bounds
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint32_t>(hi - lo + 1));
  }

  bool percent(int p) { return uniform(0, 99) < p; }

 private:
  std::mt19937 engine_;
};

PhyloTree random_tree(Rng& rng, int leaves, int max_weight);
FoodWeb random_web(Rng& rng, int n, int arc_percent);

// Standard instance with 2..max_n species, budget 1..max_k and integer
// weights 0..max_weight.
Instance random_instance(Rng& rng, int max_n, int max_k, int max_weight);

// PD by unioning whole root paths into an explicit edge set.
std::int64_t pd_bruteforce(const PhyloTree& tree, const SpeciesSet& s);

SpeciesSet mask_to_set(std::uint32_t mask);
std::uint32_t set_to_mask(const SpeciesSet& s);

// Per-subset viability table for webs with <= 20 nodes; index = bitmask.
std::vector<char> viability_table(const FoodWeb& web);

// Minimum viable superset by exhaustive scan: size and the
// lexicographically smallest witness of that size.
struct BruteVcl {
  int size = 0;
  SpeciesSet witness;
};
BruteVcl brute_vcl(const FoodWeb& web, const SpeciesSet& base);

// Exact optimum by dumb enumeration of all viable subsets of size <= k.
std::int64_t brute_opt(const Instance& inst, const SubmodularOracle& oracle);

// Longest path ending at a sink by explicit path enumeration.
int brute_longest_path(const FoodWeb& web);

// Uniformly picked viable set of size <= max_size (may be empty).
SpeciesSet random_viable_set(Rng& rng, const FoodWeb& web,
                             const std::vector<char>& table, int max_size);

// Random subset of the ground set.
SpeciesSet random_subset(Rng& rng, int n, int percent);

}  // namespace viaphy::testgen
