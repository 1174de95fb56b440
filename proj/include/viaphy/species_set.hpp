#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace viaphy {

// Canonical species set: a sorted, duplicate-free list of dense species
// indices. All oracles and solvers pass sets in this form.
class SpeciesSet {
 public:
  SpeciesSet() = default;

  explicit SpeciesSet(std::vector<int> members) : members_(std::move(members)) {
    normalize();
  }

  SpeciesSet(std::initializer_list<int> members)
      : members_(members) {
    normalize();
  }

  bool contains(int s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
  }

  bool is_subset_of(const SpeciesSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  void insert(int s) {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) members_.insert(it, s);
  }

  SpeciesSet united(const SpeciesSet& other) const {
    SpeciesSet out;
    out.members_.reserve(members_.size() + other.members_.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(out.members_));
    return out;
  }

  SpeciesSet with(int s) const {
    SpeciesSet out = *this;
    out.insert(s);
    return out;
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const SpeciesSet& other) const = default;

  // Lexicographic order on the sorted index sequences; this is the tie-break
  // order used throughout the solvers.
  bool operator<(const SpeciesSet& other) const {
    return std::lexicographical_compare(members_.begin(), members_.end(),
                                        other.members_.begin(),
                                        other.members_.end());
  }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }

  std::vector<int> members_;
};

}  // namespace viaphy
