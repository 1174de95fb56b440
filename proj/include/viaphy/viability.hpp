#pragma once

#include <cstdint>

#include "viaphy/food_web.hpp"
#include "viaphy/species_set.hpp"

namespace viaphy {

struct DepthInfo {
  int longest_path_len = 1;  // node count of the longest path ending at a sink
  int d = 1;                 // min(longest_path_len, k)
};

struct SteinerLimits {
  // The viable-extension subset DP is exponential in the number of
  // unsatisfied members it has to connect; refuse past this many.
  int max_heads = 12;
};

// True iff every member satisfies its mode: OR nodes are sinks or have at
// least one successor in s, AND nodes need all successors in s. The check is
// local; on OR-only webs this is equivalent to every member reaching a sink
// inside s.
bool is_viable(const SpeciesSet& s, const FoodWeb& web);

// Longest path (counting nodes) ending at a sink, truncated at k. Requires
// k >= 1.
DepthInfo truncated_depth(const FoodWeb& web, std::int64_t k);

// |vcl(base)|: size of a minimum-cardinality viable superset of base.
// OR-only webs; throws ValidationError when AND nodes are present and
// CapExceeded when more than limits.max_heads members need connecting.
std::int64_t vcl_size(const SpeciesSet& base, const FoodWeb& web,
                      const SteinerLimits& limits = {});

// Minimum-cardinality viable superset of selected ∪ s, computed as a
// node-cost Steiner arborescence on the contracted web. Ties among equally
// small extensions break to the lexicographically smallest sorted index
// sequence. selected is typically viable but need not be.
SpeciesSet viable_extension(const SpeciesSet& s, const FoodWeb& web,
                            const SpeciesSet& selected = {},
                            const SteinerLimits& limits = {});

// c(A|B) = |vcl(B ∪ A)| - |B|.
std::int64_t cost(const SpeciesSet& a, const SpeciesSet& b, const FoodWeb& web,
                  const SteinerLimits& limits = {});

}  // namespace viaphy
