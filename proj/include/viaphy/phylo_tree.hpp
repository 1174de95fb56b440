#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace viaphy {

struct TreeNode {
  std::string name;            // empty for anonymous inner nodes
  int parent = -1;             // -1 for the root
  std::int64_t weight = 0;     // weight of the edge to the parent; 0 at root
  std::vector<int> children;   // node indices, in file order
  int species = -1;            // dense species index for leaves, -1 otherwise
};

// Rooted edge-weighted tree whose leaves are the species. Immutable after
// construction; node 0 is the root and every child has a larger index than
// its parent.
class PhyloTree {
 public:
  // Placeholder-empty tree; real trees come from create()/parse_tree.
  PhyloTree() = default;

  // Validates the model invariants: single root, every inner node has at
  // least two children, non-negative integer weights, unique leaf names.
  static PhyloTree create(std::vector<TreeNode> nodes);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int species_count() const { return static_cast<int>(leaf_nodes_.size()); }
  const TreeNode& node(int i) const { return nodes_[i]; }
  int root() const { return 0; }
  bool is_leaf(int i) const { return nodes_[i].children.empty(); }

  // Node index of a species, and the species universe in index order.
  int leaf_node(int species) const { return leaf_nodes_[species]; }
  const std::vector<std::string>& species_names() const { return leaf_names_; }
  std::optional<int> species_index(std::string_view name) const;

  std::int64_t total_edge_weight() const;

  // Newick text with mandatory integer branch lengths; anonymous inner
  // nodes receive synthetic names.
  std::string to_newick() const;

  // Equality is structural: topology, weights and leaf names. Inner node
  // names are cosmetic and ignored.
  bool operator==(const PhyloTree& other) const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> leaf_nodes_;          // species index -> node index
  std::vector<std::string> leaf_names_;  // species index -> name
};

// Convenience builder for programmatic construction (reductions, tests).
// The root exists up front as node 0; species indices follow leaf insertion
// order.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::string root_name = "r");
  int root() const { return 0; }
  int add_inner(int parent, std::int64_t weight, std::string name = "");
  int add_leaf(int parent, std::string name, std::int64_t weight);
  PhyloTree build() &&;

 private:
  std::vector<TreeNode> nodes_;
};

// Parses the Newick subset used by instance files: integer branch lengths on
// every edge, optional inner/root labels, names over [A-Za-z0-9_].
PhyloTree parse_tree(const std::string& text);

}  // namespace viaphy
