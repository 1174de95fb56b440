#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viaphy/food_web.hpp"
#include "viaphy/phylo_tree.hpp"

namespace viaphy {

// One solvable unit: tree + web over the same species universe + budget.
// Immutable after validation and safe to share across threads.
struct Instance {
  PhyloTree tree;
  FoodWeb web;
  std::int64_t budget = 0;
  bool generalized = false;
  // Leading '#' comment lines of the file, without the marker. Generated
  // instances record their source problem here.
  std::vector<std::string> provenance;

  int species_count() const { return tree.species_count(); }
  const std::vector<std::string>& species_names() const {
    return tree.species_names();
  }
  std::optional<int> species_index(std::string_view name) const {
    return tree.species_index(name);
  }

  bool operator==(const Instance& other) const {
    return tree == other.tree && web == other.web && budget == other.budget &&
           generalized == other.generalized && provenance == other.provenance;
  }
};

// Validates the cross-invariants (species agreement, AND tags only on
// generalized instances, budget >= 0) and assembles the instance. File
// loading additionally requires budget >= 1; in-memory instances may use
// budget 0 for degenerate solver runs.
Instance make_instance(PhyloTree tree, FoodWeb web, std::int64_t budget,
                       bool generalized = false,
                       std::vector<std::string> provenance = {});

// Three-section plain-text format: [tree] Newick line, [web] arc lines,
// [budget] integer, optional [generalized]. Serialization is canonical:
// fixed section order, arcs sorted lexicographically by name.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

}  // namespace viaphy
