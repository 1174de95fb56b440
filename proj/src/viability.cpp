#include "viaphy/viability.hpp"

#include <algorithm>
#include <limits>

#include "steiner.hpp"
#include "viaphy/error.hpp"

namespace viaphy {

namespace detail {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

void SteinerEngine::classify(const std::vector<char>& base) {
  int n = web_.size();
  core_.assign(n, 0);
  heads_.clear();
  worklist_.clear();
  for (int s = 0; s < n; ++s) {
    if (!base[s]) continue;
    if (web_.is_sink(s)) {
      core_[s] = 1;
      worklist_.push_back(s);
      continue;
    }
    bool satisfied = false;
    for (int succ : web_.successors(s)) {
      if (base[succ]) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) heads_.push_back(s);
  }
  // Sink-connected closure within base, walked backwards from base sinks.
  for (std::size_t i = 0; i < worklist_.size(); ++i) {
    for (int pred : web_.predecessors(worklist_[i])) {
      if (base[pred] && !core_[pred]) {
        core_[pred] = 1;
        worklist_.push_back(pred);
      }
    }
  }
}

SteinerOutcome SteinerEngine::min_addition(const std::vector<char>& base,
                                           const std::vector<char>* banned,
                                           int max_heads) {
  ++calls_;
  classify(base);
  int j = static_cast<int>(heads_.size());
  if (j == 0) return {SteinerStatus::kOk, 0};
  if (j > max_heads) return {SteinerStatus::kTooManyHeads, 0};

  int n = web_.size();
  int t = n;
  int full = (1 << j) - 1;
  dp_.assign(static_cast<std::size_t>(full + 1) * (n + 1), kInf);
  auto dp = [&](int mask, int v) -> long long& {
    return dp_[static_cast<std::size_t>(mask) * (n + 1) + v];
  };
  for (int i = 0; i < j; ++i) dp(1 << i, heads_[i]) = 0;

  auto is_banned = [&](int v) { return banned && (*banned)[v]; };

  for (int mask = 1; mask <= full; ++mask) {
    for (int v : web_.topo_order()) {
      if (core_[v] || is_banned(v)) continue;
      long long& dv = dp(mask, v);
      // merge two head subsets meeting at v (v's cost counted once)
      if ((mask & (mask - 1)) != 0) {
        long long vcost = base[v] ? 0 : 1;
        for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
          long long a = dp(sub, v);
          long long b = dp(mask ^ sub, v);
          if (a < kInf && b < kInf) dv = std::min(dv, a + b - vcost);
        }
      }
      if (dv >= kInf) continue;
      bool arc_to_t = web_.is_sink(v) && !base[v];
      for (int succ : web_.successors(v)) {
        if (is_banned(succ)) continue;
        if (core_[succ]) {
          arc_to_t = true;
        } else {
          long long cand = dv + (base[succ] ? 0 : 1);
          long long& dsucc = dp(mask, succ);
          dsucc = std::min(dsucc, cand);
        }
      }
      if (arc_to_t) dp(mask, t) = std::min(dp(mask, t), dv);
    }
    if ((mask & (mask - 1)) != 0) {
      for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        long long a = dp(sub, t);
        long long b = dp(mask ^ sub, t);
        if (a < kInf && b < kInf) dp(mask, t) = std::min(dp(mask, t), a + b);
      }
    }
  }

  long long best = dp(full, t);
  if (best >= kInf) return {SteinerStatus::kInfeasible, 0};
  return {SteinerStatus::kOk, best};
}

long long SteinerEngine::single_head(int head, const std::vector<char>& base,
                                     const std::vector<char>* banned) {
  int n = web_.size();
  dist_.assign(n + 1, kInf);
  dist_[head] = 0;
  auto is_banned = [&](int v) { return banned && (*banned)[v]; };
  for (int v : web_.topo_order()) {
    if (core_[v] || is_banned(v) || dist_[v] >= kInf) continue;
    long long dv = dist_[v];
    bool arc_to_t = web_.is_sink(v) && !base[v];
    for (int succ : web_.successors(v)) {
      if (is_banned(succ)) continue;
      if (core_[succ]) {
        arc_to_t = true;
      } else {
        dist_[succ] = std::min(dist_[succ], dv + (base[succ] ? 0 : 1));
      }
    }
    if (arc_to_t) dist_[n] = std::min(dist_[n], dv);
  }
  return dist_[n];
}

SteinerOutcome SteinerEngine::per_head_bound(const std::vector<char>& base,
                                             const std::vector<char>* banned) {
  ++calls_;
  classify(base);
  long long bound = 0;
  for (int head : heads_) {
    long long d = single_head(head, base, banned);
    if (d >= kInf) return {SteinerStatus::kInfeasible, 0};
    bound = std::max(bound, d);
  }
  return {SteinerStatus::kOk, bound};
}

SpeciesSet lex_extension(SteinerEngine& engine, std::vector<char> base,
                         SpeciesSet u, long long additions, int max_heads) {
  // Walk the indices in ascending order and keep a species iff some
  // minimum-size extension containing everything accepted so far also
  // contains it; this yields the lexicographically smallest optimum.
  int n = static_cast<int>(base.size());
  for (int v = 0; v < n && additions > 0; ++v) {
    if (base[v]) continue;
    base[v] = 1;
    auto with_v = engine.min_addition(base, nullptr, max_heads);
    if (with_v.status == SteinerStatus::kTooManyHeads)
      throw CapExceeded("viable extension needs more than " +
                        std::to_string(max_heads) +
                        " connections (limit max_heads)");
    if (with_v.status == SteinerStatus::kOk && with_v.added == additions - 1) {
      u.insert(v);
      --additions;
    } else {
      base[v] = 0;
    }
  }
  return u;
}

}  // namespace detail

namespace {

void check_or_only(const FoodWeb& web) {
  if (web.has_and_nodes())
    throw ValidationError(
        "viable-extension operations are undefined on generalized (AND) webs");
}

void check_members(const SpeciesSet& s, int n) {
  if (!s.empty() && (*s.begin() < 0 || *std::prev(s.end()) >= n))
    throw ValidationError("species index out of range");
}

std::vector<char> to_base(const SpeciesSet& a, const SpeciesSet& b, int n) {
  std::vector<char> base(n, 0);
  for (int s : a) base[s] = 1;
  for (int s : b) base[s] = 1;
  return base;
}

long long min_addition_or_throw(detail::SteinerEngine& engine,
                                const std::vector<char>& base,
                                const SteinerLimits& limits) {
  auto outcome = engine.min_addition(base, nullptr, limits.max_heads);
  switch (outcome.status) {
    case detail::SteinerStatus::kOk:
      return outcome.added;
    case detail::SteinerStatus::kTooManyHeads:
      throw CapExceeded("viable extension needs more than " +
                        std::to_string(limits.max_heads) +
                        " connections (limit max_heads)");
    case detail::SteinerStatus::kInfeasible:
    default:
      // Unreachable on a validated DAG: maximal paths end at sinks.
      throw ValidationError("corrupted food web: member cannot reach a sink");
  }
}

}  // namespace

bool is_viable(const SpeciesSet& s, const FoodWeb& web) {
  check_members(s, web.size());
  std::vector<char> in(web.size(), 0);
  for (int member : s) in[member] = 1;
  for (int member : s) {
    if (web.mode(member) == ViabilityMode::kAnd) {
      for (int succ : web.successors(member)) {
        if (!in[succ]) return false;
      }
    } else {
      if (web.is_sink(member)) continue;
      bool satisfied = false;
      for (int succ : web.successors(member)) {
        if (in[succ]) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) return false;
    }
  }
  return true;
}

DepthInfo truncated_depth(const FoodWeb& web, std::int64_t k) {
  if (k < 1) throw ValidationError("truncated depth needs k >= 1");
  // Longest node count over paths ending at a sink, by DP in reverse
  // topological order.
  std::vector<int> len(web.size(), 1);
  const auto& topo = web.topo_order();
  int longest = web.size() > 0 ? 1 : 0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int v = *it;
    for (int succ : web.successors(v)) len[v] = std::max(len[v], len[succ] + 1);
    longest = std::max(longest, len[v]);
  }
  DepthInfo info;
  info.longest_path_len = longest;
  info.d = static_cast<int>(std::min<std::int64_t>(longest, k));
  return info;
}

std::int64_t vcl_size(const SpeciesSet& base, const FoodWeb& web,
                      const SteinerLimits& limits) {
  check_or_only(web);
  check_members(base, web.size());
  detail::SteinerEngine engine(web);
  std::vector<char> in = to_base(base, {}, web.size());
  return static_cast<std::int64_t>(base.size()) +
         min_addition_or_throw(engine, in, limits);
}

SpeciesSet viable_extension(const SpeciesSet& s, const FoodWeb& web,
                            const SpeciesSet& selected,
                            const SteinerLimits& limits) {
  check_or_only(web);
  check_members(s, web.size());
  check_members(selected, web.size());

  detail::SteinerEngine engine(web);
  std::vector<char> base = to_base(s, selected, web.size());
  long long additions = min_addition_or_throw(engine, base, limits);
  return detail::lex_extension(engine, std::move(base), s.united(selected),
                               additions, limits.max_heads);
}

std::int64_t cost(const SpeciesSet& a, const SpeciesSet& b, const FoodWeb& web,
                  const SteinerLimits& limits) {
  check_or_only(web);
  check_members(a, web.size());
  check_members(b, web.size());
  detail::SteinerEngine engine(web);
  std::vector<char> base = to_base(a, b, web.size());
  SpeciesSet u = a.united(b);
  long long added = min_addition_or_throw(engine, base, limits);
  return static_cast<std::int64_t>(u.size()) + added -
         static_cast<std::int64_t>(b.size());
}

}  // namespace viaphy
