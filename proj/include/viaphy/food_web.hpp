#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace viaphy {

enum class ViabilityMode : unsigned char { kOr, kAnd };

// Directed acyclic survival-dependency graph over the species indices
// 0..n-1. An arc (a, b) means a's survival depends on b. Immutable after
// construction.
class FoodWeb {
 public:
  // Placeholder-empty web; real webs come from create()/parse_web.
  FoodWeb() = default;

  // Validates acyclicity (topological sort) and arc endpoints; duplicate
  // arcs are collapsed.
  static FoodWeb create(int species_count, std::vector<std::pair<int, int>> arcs,
                        std::vector<int> and_nodes = {});

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  std::span<const int> successors(int s) const { return succ_[s]; }
  std::span<const int> predecessors(int s) const { return pred_[s]; }
  bool is_sink(int s) const { return succ_[s].empty(); }
  ViabilityMode mode(int s) const { return mode_[s]; }
  bool has_and_nodes() const { return and_count_ > 0; }

  // Topological order: every arc (u, v) has position(u) < position(v).
  const std::vector<int>& topo_order() const { return topo_; }

  bool operator==(const FoodWeb& other) const {
    return n_ == other.n_ && arcs_ == other.arcs_ && mode_ == other.mode_;
  }

 private:
  int n_ = 0;
  int and_count_ = 0;
  std::vector<std::pair<int, int>> arcs_;  // sorted
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<ViabilityMode> mode_;
  std::vector<int> topo_;
};

// Parses the arc-per-line web format ("FROM TO", '#' comments, optional
// "AND <name>" directives). `resolve` maps a species name to its index and
// is expected to throw-or-return-negative for unknown names; unknown names
// become positioned ParseErrors. AND directives are rejected unless
// `allow_and` is set (standard instances are OR-only).
FoodWeb parse_web(const std::string& text, int species_count,
                  const std::function<int(std::string_view)>& resolve,
                  bool allow_and = false);

}  // namespace viaphy
