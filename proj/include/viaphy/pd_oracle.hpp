#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "viaphy/phylo_tree.hpp"
#include "viaphy/species_set.hpp"

namespace viaphy {

// Non-negative monotone submodular set function given as a value oracle.
// The solvers are written purely against this interface, so they apply to
// any such function, not just phylogenetic diversity.
//
// Implementations must be safe for concurrent queries.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  std::int64_t value(const SpeciesSet& s) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return value_impl(s);
  }

  // marginal(A, B) = value(A ∪ B) - value(B), the gain of adding A to B.
  std::int64_t marginal(const SpeciesSet& a, const SpeciesSet& b) const {
    return value(a.united(b)) - value(b);
  }

  virtual int ground_size() const = 0;

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 protected:
  virtual std::int64_t value_impl(const SpeciesSet& s) const = 0;

 private:
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Phylogenetic diversity over a weighted rooted tree: the total weight of
// the spanning subtree of S plus the root. Exact integer arithmetic.
class PdOracle : public SubmodularOracle {
 public:
  explicit PdOracle(const PhyloTree& tree);

  int ground_size() const override { return species_count_; }

  // Bounded memoization keyed by the canonical set encoding; off by default.
  // The cache is flushed wholesale when it outgrows max_entries.
  void enable_cache(std::size_t max_entries);

 protected:
  std::int64_t value_impl(const SpeciesSet& s) const override;

 private:
  std::int64_t compute(const SpeciesSet& s) const;

  int species_count_ = 0;
  std::vector<int> parent_;           // per tree node
  std::vector<std::int64_t> weight_;  // edge weight to parent, per tree node
  std::vector<int> leaf_node_;        // species index -> tree node

  // Scratch for the edge-covered walk and the optional cache; guarded by a
  // mutex so const queries stay safe under concurrency.
  mutable std::mutex mu_;
  mutable std::vector<std::uint64_t> stamp_;
  mutable std::uint64_t epoch_ = 0;
  mutable std::unordered_map<std::string, std::int64_t> cache_;
  std::size_t cache_cap_ = 0;
};

// Additive set function over fixed per-species weights. Used by the
// reduction tests and as the simplest oracle exercising the interface.
class AdditiveOracle : public SubmodularOracle {
 public:
  explicit AdditiveOracle(std::vector<std::int64_t> weights)
      : weights_(std::move(weights)) {}

  int ground_size() const override { return static_cast<int>(weights_.size()); }

 protected:
  std::int64_t value_impl(const SpeciesSet& s) const override;

 private:
  std::vector<std::int64_t> weights_;
};

}  // namespace viaphy
