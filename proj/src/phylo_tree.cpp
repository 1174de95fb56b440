#include "viaphy/phylo_tree.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "viaphy/error.hpp"

namespace viaphy {

namespace {

bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}

// Cursor over a single-string input; positions are tracked for error
// messages.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }

  void skip_ws() {
    while (!eof() && (text[pos] == ' ' || text[pos] == '\t' ||
                      text[pos] == '\r' || text[pos] == '\n')) {
      ++pos;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string name() {
    std::size_t start = pos;
    while (!eof() && is_name_char(text[pos])) ++pos;
    if (pos == start) fail("expected a name over [A-Za-z0-9_]");
    return text.substr(start, pos - start);
  }

  std::int64_t weight() {
    skip_ws();
    if (peek() == '-') fail("branch lengths must be non-negative integers");
    if (!(peek() >= '0' && peek() <= '9')) fail("expected an integer branch length");
    std::int64_t value = 0;
    int digits = 0;
    while (!eof() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      ++pos;
      if (++digits > 18) fail("branch length out of range");
    }
    if (peek() == '.') fail("branch lengths must be integers");
    return value;
  }
};

struct NewickParser {
  Cursor cur;
  std::vector<TreeNode> nodes;

  // Parses one subtree and returns its node index. Weights are attached by
  // the caller, since the root carries none.
  int parse_node() {
    cur.skip_ws();
    int index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (cur.peek() == '(') {
      ++cur.pos;
      while (true) {
        int child = parse_node();
        cur.skip_ws();
        cur.expect(':');
        nodes[child].weight = cur.weight();
        nodes[index].children.push_back(child);
        nodes[child].parent = index;
        cur.skip_ws();
        if (cur.peek() == ',') {
          ++cur.pos;
          continue;
        }
        cur.expect(')');
        break;
      }
      cur.skip_ws();
      if (is_name_char(cur.peek())) nodes[index].name = cur.name();
    } else {
      nodes[index].name = cur.name();
    }
    return index;
  }
};

}  // namespace

PhyloTree PhyloTree::create(std::vector<TreeNode> nodes) {
  if (nodes.empty()) throw ValidationError("tree has no nodes");
  if (nodes[0].parent != -1) throw ValidationError("node 0 must be the root");

  PhyloTree tree;
  tree.nodes_ = std::move(nodes);

  std::unordered_set<std::string> seen;
  for (int i = 0; i < tree.node_count(); ++i) {
    TreeNode& node = tree.nodes_[i];
    if (i > 0 && (node.parent < 0 || node.parent >= i))
      throw ValidationError("tree nodes must be ordered root-first");
    if (node.weight < 0) throw ValidationError("negative branch length");
    if (node.children.empty()) {
      if (node.name.empty()) throw ValidationError("leaf without a name");
      if (!seen.insert(node.name).second)
        throw ValidationError("duplicate leaf name '" + node.name + "'");
      node.species = static_cast<int>(tree.leaf_nodes_.size());
      tree.leaf_nodes_.push_back(i);
      tree.leaf_names_.push_back(node.name);
    } else {
      if (node.children.size() < 2)
        throw ValidationError("inner node with fewer than 2 children");
      node.species = -1;
    }
  }
  if (tree.is_leaf(tree.root()))
    throw ValidationError("root must be an inner node with at least 2 children");
  return tree;
}

std::optional<int> PhyloTree::species_index(std::string_view name) const {
  for (int s = 0; s < species_count(); ++s) {
    if (leaf_names_[s] == name) return s;
  }
  return std::nullopt;
}

std::int64_t PhyloTree::total_edge_weight() const {
  std::int64_t sum = 0;
  for (int i = 1; i < node_count(); ++i) sum += nodes_[i].weight;
  return sum;
}

std::string PhyloTree::to_newick() const {
  // Synthetic names for anonymous inner nodes, skipping any name already
  // taken in the tree.
  std::unordered_set<std::string> taken;
  for (const TreeNode& node : nodes_) {
    if (!node.name.empty()) taken.insert(node.name);
  }
  int counter = 0;
  auto synth = [&]() {
    std::string name;
    do {
      name = "_" + std::to_string(++counter);
    } while (taken.count(name));
    return name;
  };

  std::string out;
  auto emit = [&](auto&& self, int index) -> void {
    const TreeNode& node = nodes_[index];
    if (node.children.empty()) {
      out += node.name;
      return;
    }
    out += '(';
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i > 0) out += ',';
      int child = node.children[i];
      self(self, child);
      out += ':';
      out += std::to_string(nodes_[child].weight);
    }
    out += ')';
    out += node.name.empty() ? synth() : node.name;
  };
  emit(emit, root());
  out += ';';
  return out;
}

bool PhyloTree::operator==(const PhyloTree& other) const {
  if (node_count() != other.node_count()) return false;
  auto equal = [&](auto&& self, int a, int b) -> bool {
    const TreeNode& na = nodes_[a];
    const TreeNode& nb = other.nodes_[b];
    if (na.weight != nb.weight) return false;
    if (na.children.size() != nb.children.size()) return false;
    if (na.children.empty() && na.name != nb.name) return false;
    for (std::size_t i = 0; i < na.children.size(); ++i) {
      if (!self(self, na.children[i], nb.children[i])) return false;
    }
    return true;
  };
  return equal(equal, root(), other.root());
}

TreeBuilder::TreeBuilder(std::string root_name) {
  TreeNode root;
  root.name = std::move(root_name);
  nodes_.push_back(std::move(root));
}

int TreeBuilder::add_inner(int parent, std::int64_t weight, std::string name) {
  TreeNode node;
  node.parent = parent;
  node.weight = weight;
  node.name = std::move(name);
  int index = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(node));
  nodes_[parent].children.push_back(index);
  return index;
}

int TreeBuilder::add_leaf(int parent, std::string name, std::int64_t weight) {
  return add_inner(parent, weight, std::move(name));
}

PhyloTree TreeBuilder::build() && { return PhyloTree::create(std::move(nodes_)); }

PhyloTree parse_tree(const std::string& text) {
  NewickParser parser{Cursor{text}, {}};
  parser.cur.skip_ws();
  if (parser.cur.eof()) throw ParseError("empty tree", 1, 1);
  // parse_node creates each node before its children, so the vector is in
  // preorder and species indices follow the Newick left-to-right leaf order.
  parser.parse_node();
  parser.cur.skip_ws();
  parser.cur.expect(';');
  parser.cur.skip_ws();
  if (!parser.cur.eof()) parser.cur.fail("trailing input after ';'");
  return PhyloTree::create(std::move(parser.nodes));
}

}  // namespace viaphy
