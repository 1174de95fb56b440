#include "viaphy/pd_oracle.hpp"

#include "viaphy/error.hpp"

namespace viaphy {

PdOracle::PdOracle(const PhyloTree& tree) {
  species_count_ = tree.species_count();
  int nodes = tree.node_count();
  parent_.resize(nodes);
  weight_.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    parent_[i] = tree.node(i).parent;
    weight_[i] = tree.node(i).weight;
  }
  leaf_node_.resize(species_count_);
  for (int s = 0; s < species_count_; ++s) leaf_node_[s] = tree.leaf_node(s);
  stamp_.assign(nodes, 0);
}

void PdOracle::enable_cache(std::size_t max_entries) {
  std::lock_guard lock(mu_);
  cache_cap_ = max_entries;
  cache_.clear();
}

std::int64_t PdOracle::compute(const SpeciesSet& s) const {
  // Union of root paths, summed edge by edge; the epoch stamp stops each
  // walk at the first already-covered node.
  ++epoch_;
  std::int64_t sum = 0;
  for (int species : s) {
    if (species < 0 || species >= species_count_)
      throw ValidationError("unknown species index " + std::to_string(species));
    int node = leaf_node_[species];
    while (node != 0 && stamp_[node] != epoch_) {
      stamp_[node] = epoch_;
      sum += weight_[node];
      node = parent_[node];
    }
  }
  return sum;
}

std::int64_t PdOracle::value_impl(const SpeciesSet& s) const {
  std::lock_guard lock(mu_);
  if (cache_cap_ == 0) return compute(s);

  std::string key;
  key.reserve(s.size() * sizeof(int));
  for (int species : s)
    key.append(reinterpret_cast<const char*>(&species), sizeof(int));
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::int64_t value = compute(s);
  if (cache_.size() >= cache_cap_) cache_.clear();
  cache_.emplace(std::move(key), value);
  return value;
}

std::int64_t AdditiveOracle::value_impl(const SpeciesSet& s) const {
  std::int64_t sum = 0;
  for (int species : s) {
    if (species < 0 || species >= ground_size())
      throw ValidationError("unknown species index " + std::to_string(species));
    sum += weights_[species];
  }
  return sum;
}

}  // namespace viaphy
