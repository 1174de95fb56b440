#include "viaphy/food_web.hpp"

#include <algorithm>
#include <sstream>

#include "viaphy/error.hpp"

namespace viaphy {

FoodWeb FoodWeb::create(int species_count, std::vector<std::pair<int, int>> arcs,
                        std::vector<int> and_nodes) {
  FoodWeb web;
  web.n_ = species_count;
  web.mode_.assign(species_count, ViabilityMode::kOr);
  for (int s : and_nodes) {
    if (s < 0 || s >= species_count) throw ValidationError("AND tag on unknown species");
    if (web.mode_[s] == ViabilityMode::kOr) {
      web.mode_[s] = ViabilityMode::kAnd;
      ++web.and_count_;
    }
  }

  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  web.succ_.assign(species_count, {});
  web.pred_.assign(species_count, {});
  for (auto [from, to] : arcs) {
    if (from < 0 || from >= species_count || to < 0 || to >= species_count)
      throw ValidationError("arc endpoint out of range");
    if (from == to) throw ValidationError("food web contains a cycle (self-loop)");
    web.succ_[from].push_back(to);
    web.pred_[to].push_back(from);
  }
  web.arcs_ = std::move(arcs);

  // Kahn's algorithm; anything left over sits on a cycle.
  std::vector<int> indegree(species_count, 0);
  for (auto [from, to] : web.arcs_) ++indegree[to];
  std::vector<int> queue;
  for (int s = 0; s < species_count; ++s) {
    if (indegree[s] == 0) queue.push_back(s);
  }
  web.topo_.reserve(species_count);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    web.topo_.push_back(u);
    for (int v : web.succ_[u]) {
      if (--indegree[v] == 0) queue.push_back(v);
    }
  }
  if (static_cast<int>(web.topo_.size()) != species_count)
    throw ValidationError("food web contains a cycle");
  return web;
}

FoodWeb parse_web(const std::string& text, int species_count,
                  const std::function<int(std::string_view)>& resolve,
                  bool allow_and) {
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> and_nodes;

  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;

    auto lookup = [&](const std::string& name) {
      int index = resolve(name);
      if (index < 0 || index >= species_count)
        throw ParseError("unknown species '" + name + "'", lineno, 1);
      return index;
    };

    if (first == "AND") {
      std::string name;
      if (!(tokens >> name)) throw ParseError("AND directive needs a species name", lineno, 1);
      if (!allow_and)
        throw ParseError("AND tag on a standard (non-generalized) instance", lineno, 1);
      and_nodes.push_back(lookup(name));
    } else {
      std::string to;
      if (!(tokens >> to)) throw ParseError("expected 'FROM TO'", lineno, 1);
      arcs.emplace_back(lookup(first), lookup(to));
    }
    std::string extra;
    if (tokens >> extra) throw ParseError("trailing tokens on arc line", lineno, 1);
  }
  return FoodWeb::create(species_count, std::move(arcs), std::move(and_nodes));
}

}  // namespace viaphy
