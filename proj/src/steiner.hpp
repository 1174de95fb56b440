#pragma once

#include <vector>

#include "viaphy/food_web.hpp"
#include "viaphy/species_set.hpp"

namespace viaphy::detail {

enum class SteinerStatus { kOk, kInfeasible, kTooManyHeads };

struct SteinerOutcome {
  SteinerStatus status = SteinerStatus::kOk;
  long long added = 0;
};

// Node-cost Steiner arborescence on the contracted food web. The members of
// `base` that are locally unsatisfied (not a sink, no successor in base) are
// the heads; the sink-connected part of base is merged into a virtual
// terminal, remaining web sinks gain an arc to it. Every head must reach the
// terminal; nodes in base cost 0, new nodes cost 1, banned nodes are removed.
// dp[T][v] = cheapest subgraph connecting head-subset T to v, combined by
// subset merges and arc relaxations in topological order.
//
// Scratch buffers are reused across calls; one engine per thread.
class SteinerEngine {
 public:
  explicit SteinerEngine(const FoodWeb& web) : web_(web) {}

  // Minimum number of species to add so that every member of base is
  // locally satisfied. kTooManyHeads past max_heads (the 3^j DP is the
  // intended cost cliff).
  SteinerOutcome min_addition(const std::vector<char>& base,
                              const std::vector<char>* banned, int max_heads);

  // max over heads of the single-head connection cost: a cheap lower bound
  // on min_addition that detects infeasibility exactly.
  SteinerOutcome per_head_bound(const std::vector<char>& base,
                                const std::vector<char>* banned);

  long long calls() const { return calls_; }

 private:
  // Fills heads_ and core_ for the given base.
  void classify(const std::vector<char>& base);
  long long single_head(int head, const std::vector<char>& base,
                        const std::vector<char>* banned);

  const FoodWeb& web_;
  long long calls_ = 0;
  std::vector<char> core_;
  std::vector<int> heads_;
  std::vector<int> worklist_;
  std::vector<long long> dp_;
  std::vector<long long> dist_;
};

// Lexicographically smallest minimum extension of the set marked in `base`
// (= u as a SpeciesSet), given its already-computed minimum addition count.
// Throws CapExceeded past max_heads.
SpeciesSet lex_extension(SteinerEngine& engine, std::vector<char> base,
                         SpeciesSet u, long long additions, int max_heads);

}  // namespace viaphy::detail
