#include "viaphy/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "steiner.hpp"
#include "viaphy/error.hpp"

namespace viaphy {

namespace {

using detail::SteinerEngine;
using detail::SteinerStatus;
using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                               start);
}

// All size-`size` combinations of 0..n-1 in lexicographic order.
template <class Fn>
void for_each_combination(int n, int size, Fn&& fn) {
  if (size > n || size < 0) return;
  std::vector<int> combo(size);
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(combo))) return;
    int i = size - 1;
    while (i >= 0 && combo[i] == n - size + i) --i;
    if (i < 0) return;
    ++combo[i];
    for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
  }
}

// Strictly better candidate under the greedy order: larger gain/cost ratio,
// then smaller cost, then lexicographically smaller set.
bool ratio_better(std::int64_t gain_a, std::int64_t cost_a, const SpeciesSet& a,
                  std::int64_t gain_b, std::int64_t cost_b,
                  const SpeciesSet& b) {
  __int128 lhs = static_cast<__int128>(gain_a) * cost_b;
  __int128 rhs = static_cast<__int128>(gain_b) * cost_a;
  if (lhs != rhs) return lhs > rhs;
  if (cost_a != cost_b) return cost_a < cost_b;
  return a < b;
}

void require_standard(const Instance& inst, const char* algorithm) {
  if (inst.generalized || inst.web.has_and_nodes())
    throw ValidationError(std::string(algorithm) +
                          " does not support generalized (AND) instances");
}

void require_p(int p) {
  if (p < 1) throw ValidationError("parameter p must be >= 1");
}

struct GreedyRunner {
  const Instance& inst;
  const SubmodularOracle& oracle;
  const SolverLimits& limits;
  SteinerEngine engine;
  std::vector<char> base;
  std::int64_t candidates = 0;

  GreedyRunner(const Instance& i, const SubmodularOracle& o,
               const SolverLimits& l)
      : inst(i), oracle(o), limits(l), engine(i.web),
        base(i.species_count(), 0) {}

  void count_candidate() {
    if (++candidates > limits.max_candidates)
      throw CapExceeded("candidate enumeration exceeded max_candidates=" +
                        std::to_string(limits.max_candidates));
  }

  long long additions_or_throw() {
    auto outcome = engine.min_addition(base, nullptr, limits.steiner.max_heads);
    if (outcome.status == SteinerStatus::kTooManyHeads)
      throw CapExceeded("viable extension needs more than " +
                        std::to_string(limits.steiner.max_heads) +
                        " connections (limit max_heads)");
    if (outcome.status == SteinerStatus::kInfeasible)
      throw ValidationError("corrupted food web: member cannot reach a sink");
    return outcome.added;
  }

  // One Algorithm-2 greedy pass: while |G| < k, add the affordable set of
  // size <= p with the best PD(S|G)/c(S|G) ratio and re-close G with vcl.
  // Stops early when no candidate with positive gain fits the residual
  // budget. Returns the final viable G.
  SpeciesSet fill(SpeciesSet g, std::int64_t budget, int p,
                  GreedyFillStats& stats) {
    int n = inst.species_count();
    while (static_cast<std::int64_t>(g.size()) < budget) {
      std::int64_t residual = budget - static_cast<std::int64_t>(g.size());
      std::fill(base.begin(), base.end(), 0);
      for (int s : g) base[s] = 1;

      bool have_best = false;
      SpeciesSet best_set;
      std::int64_t best_gain = 0, best_cost = 1;
      std::vector<int> extra;
      for (int size = 1; size <= p && size <= n; ++size) {
        for_each_combination(n, size, [&](const std::vector<int>& combo) {
          count_candidate();
          extra.clear();
          for (int s : combo) {
            if (!base[s]) extra.push_back(s);
          }
          if (extra.empty()) return true;  // S ⊆ G adds nothing
          for (int s : extra) base[s] = 1;
          long long added = additions_or_throw();
          for (int s : extra) base[s] = 0;
          std::int64_t cost = static_cast<std::int64_t>(extra.size()) + added;
          if (cost > residual) return true;
          SpeciesSet candidate(combo);
          std::int64_t gain = oracle.marginal(candidate, g);
          if (!have_best || ratio_better(gain, cost, candidate, best_gain,
                                         best_cost, best_set)) {
            have_best = true;
            best_set = std::move(candidate);
            best_gain = gain;
            best_cost = cost;
          }
          return true;
        });
      }
      if (!have_best || best_gain <= 0) break;

      std::fill(base.begin(), base.end(), 0);
      SpeciesSet u = best_set.united(g);
      for (int s : u) base[s] = 1;
      long long added = additions_or_throw();
      g = detail::lex_extension(engine, base, std::move(u), added,
                                limits.steiner.max_heads);
      ++stats.iterations;
    }
    stats.candidates = candidates;
    stats.steiner_calls = static_cast<std::uint64_t>(engine.calls());
    return g;
  }
};

SolveReport make_report(const Instance& inst, const SubmodularOracle& oracle,
                        std::string algorithm, int p, SpeciesSet chosen,
                        std::uint64_t calls_before, Clock::time_point start) {
  SolveReport report;
  report.algorithm = std::move(algorithm);
  report.p = p;
  report.value = oracle.value(chosen);
  report.viable = is_viable(chosen, inst.web);
  report.chosen = std::move(chosen);
  report.oracle_calls = oracle.calls() - calls_before;
  report.elapsed = since(start);
  return report;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kFaller: return "faller";
    case Algorithm::kGreedyP: return "greedy_p";
    case Algorithm::kEnumP: return "enum_p";
    case Algorithm::kExact: return "exact";
  }
  return "?";
}

SpeciesSet greedy_fill(const Instance& inst, const SubmodularOracle& oracle,
                       int p, SpeciesSet seed, const SolverLimits& limits,
                       GreedyFillStats& stats) {
  require_standard(inst, "greedy_fill");
  require_p(p);
  if (!is_viable(seed, inst.web))
    throw ValidationError("greedy_fill seed must be viable");
  GreedyRunner runner(inst, oracle, limits);
  runner.candidates = stats.candidates;
  GreedyFillStats local;
  SpeciesSet g = runner.fill(std::move(seed), inst.budget, p, local);
  stats.iterations += local.iterations;
  stats.candidates = local.candidates;
  stats.steiner_calls += local.steiner_calls;
  return g;
}

SolveReport solve_faller(const Instance& inst, const SubmodularOracle& oracle,
                         const SolverConfig& /*config*/) {
  require_standard(inst, "faller");
  auto start = Clock::now();
  std::uint64_t calls_before = oracle.calls();

  int n = inst.species_count();
  SpeciesSet s;
  std::vector<char> in(n, 0);
  std::int64_t iterations = 0;
  while (static_cast<std::int64_t>(s.size()) < inst.budget) {
    // Unit-cost species: sinks, or species with an already-selected
    // successor. Ascending scan with strict improvement realizes the
    // smallest-index tie-break.
    int best = -1;
    std::int64_t best_gain = -1;
    for (int cand = 0; cand < n; ++cand) {
      if (in[cand]) continue;
      bool unit = inst.web.is_sink(cand);
      if (!unit) {
        for (int succ : inst.web.successors(cand)) {
          if (in[succ]) {
            unit = true;
            break;
          }
        }
      }
      if (!unit) continue;
      std::int64_t gain = oracle.marginal(SpeciesSet{cand}, s);
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    }
    if (best < 0) break;
    s.insert(best);
    in[best] = 1;
    ++iterations;
  }

  SolveReport report = make_report(inst, oracle, "faller", 0, std::move(s),
                                   calls_before, start);
  report.iterations = iterations;
  return report;
}

SolveReport solve_greedy_p(const Instance& inst, const SubmodularOracle& oracle,
                           const SolverConfig& config) {
  require_standard(inst, "greedy_p");
  require_p(config.p);
  auto start = Clock::now();
  std::uint64_t calls_before = oracle.calls();

  int n = inst.species_count();
  std::int64_t k = inst.budget;
  if (k == 0) {
    SolveReport report = make_report(inst, oracle, "greedy_p", config.p, {},
                                     calls_before, start);
    return report;
  }

  GreedyRunner runner(inst, oracle, config.limits);

  // Line 1: the most diverse set of size <= p whose viable closure fits the
  // budget; ties prefer cheaper closures, then the smaller set.
  bool have_best = false;
  SpeciesSet best_set;
  std::int64_t best_pd = -1, best_cost = 0;
  for (int size = 1; size <= config.p && size <= n; ++size) {
    for_each_combination(n, size, [&](const std::vector<int>& combo) {
      runner.count_candidate();
      std::fill(runner.base.begin(), runner.base.end(), 0);
      for (int s : combo) runner.base[s] = 1;
      long long added = runner.additions_or_throw();
      std::int64_t cost = static_cast<std::int64_t>(combo.size()) + added;
      if (cost > k) return true;
      SpeciesSet candidate(combo);
      std::int64_t pd = oracle.value(candidate);
      if (!have_best || pd > best_pd ||
          (pd == best_pd &&
           (cost < best_cost || (cost == best_cost && candidate < best_set)))) {
        have_best = true;
        best_set = std::move(candidate);
        best_pd = pd;
        best_cost = cost;
      }
      return true;
    });
  }

  SpeciesSet anchor;  // 𝒢: the viable closure of the best small set
  if (have_best) {
    std::fill(runner.base.begin(), runner.base.end(), 0);
    for (int s : best_set) runner.base[s] = 1;
    long long added = runner.additions_or_throw();
    anchor = detail::lex_extension(runner.engine, runner.base, best_set, added,
                                   config.limits.steiner.max_heads);
  }

  // Lines 3-7: the cost-benefit greedy from the empty set.
  GreedyFillStats stats;
  SpeciesSet greedy = runner.fill({}, k, config.p, stats);

  std::int64_t anchor_value = oracle.value(anchor);
  std::int64_t greedy_value = oracle.value(greedy);
  SpeciesSet chosen = greedy_value > anchor_value ? greedy : anchor;

  SolveReport report = make_report(inst, oracle, "greedy_p", config.p,
                                   std::move(chosen), calls_before, start);
  report.iterations = stats.iterations;
  report.steiner_calls = static_cast<std::uint64_t>(runner.engine.calls());
  return report;
}

SolveReport solve_enum_p(const Instance& inst, const SubmodularOracle& oracle,
                         const SolverConfig& config) {
  require_standard(inst, "enum_p");
  require_p(config.p);
  auto start = Clock::now();
  std::uint64_t calls_before = oracle.calls();

  int n = inst.species_count();
  std::int64_t k = inst.budget;
  if (k == 0) {
    return make_report(inst, oracle, "enum_p", config.p, {}, calls_before,
                       start);
  }

  int d = truncated_depth(inst.web, k).d;
  std::int64_t bound =
      std::min<std::int64_t>(3LL * config.p + 3LL * d - 3, k);

  GreedyRunner runner(inst, oracle, config.limits);
  std::vector<char> mark(n, 0);
  auto seed_viable = [&](const std::vector<int>& combo) {
    for (int s : combo) mark[s] = 1;
    bool ok = true;
    for (int s : combo) {
      if (inst.web.is_sink(s)) continue;
      bool satisfied = false;
      for (int succ : inst.web.successors(s)) {
        if (mark[succ]) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) {
        ok = false;
        break;
      }
    }
    for (int s : combo) mark[s] = 0;
    return ok;
  };

  bool have_best = false;
  SpeciesSet best;
  std::int64_t best_value = -1;
  std::int64_t seeds_enumerated = 0;
  std::int64_t seeds_run = 0;
  GreedyFillStats stats;
  for (int size = 0; size <= bound && size <= n; ++size) {
    for_each_combination(n, size, [&](const std::vector<int>& combo) {
      if (++seeds_enumerated > config.limits.max_seeds)
        throw CapExceeded("seed enumeration (bound " + std::to_string(bound) +
                          ") exceeded max_seeds=" +
                          std::to_string(config.limits.max_seeds));
      if (!seed_viable(combo)) return true;
      ++seeds_run;
      SpeciesSet g = runner.fill(SpeciesSet(combo), k, config.p, stats);
      std::int64_t value = oracle.value(g);
      if (!have_best || value > best_value) {
        have_best = true;
        best = std::move(g);
        best_value = value;
      }
      return true;
    });
  }

  SolveReport report = make_report(inst, oracle, "enum_p", config.p,
                                   std::move(best), calls_before, start);
  report.iterations = seeds_run;
  report.steiner_calls = static_cast<std::uint64_t>(runner.engine.calls());
  return report;
}

namespace {

// Branch-and-bound over species decided in descending static-value order.
// Sound prunes only: remaining-budget top-up bound, the value of taking
// everything still undecided, and viable-completion feasibility.
struct ExactSearch {
  const Instance& inst;
  const SubmodularOracle& oracle;
  const SolverLimits& limits;
  int n;
  std::int64_t k;
  SteinerEngine engine;
  std::vector<int> order;
  std::vector<std::int64_t> top_value_prefix;  // sorted singleton values
  std::vector<char> in, banned;
  std::vector<int> chosen_stack;
  SpeciesSet best_set;
  std::int64_t best_value = 0;
  std::int64_t nodes = 0;

  // Exact joint feasibility is worth its 3^j cost only for a few heads;
  // beyond that a per-head bound still prunes most dead branches.
  static constexpr int kExactHeadLimit = 4;

  ExactSearch(const Instance& i, const SubmodularOracle& o,
              const SolverLimits& l)
      : inst(i), oracle(o), limits(l), n(i.species_count()), k(i.budget),
        engine(i.web), in(n, 0), banned(n, 0) {
    std::vector<std::int64_t> singles(n);
    for (int s = 0; s < n; ++s) singles[s] = oracle.value(SpeciesSet{s});
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return singles[a] != singles[b] ? singles[a] > singles[b] : a < b;
    });
    std::vector<std::int64_t> sorted = singles;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    top_value_prefix.assign(n + 1, 0);
    for (int i2 = 0; i2 < n; ++i2)
      top_value_prefix[i2 + 1] = top_value_prefix[i2] + sorted[i2];
  }

  std::int64_t top_up(std::int64_t budget) const {
    std::int64_t take = std::min<std::int64_t>(budget, n);
    return top_value_prefix[static_cast<std::size_t>(take)];
  }

  bool viable_now() const {
    for (int s : chosen_stack) {
      if (inst.web.mode(s) == ViabilityMode::kAnd) {
        for (int succ : inst.web.successors(s)) {
          if (!in[succ]) return false;
        }
      } else if (!inst.web.is_sink(s)) {
        bool sat = false;
        for (int succ : inst.web.successors(s)) {
          if (in[succ]) {
            sat = true;
            break;
          }
        }
        if (!sat) return false;
      }
    }
    return true;
  }

  // Standard instances: minimum viable completion avoiding banned species
  // must fit in k.
  bool completion_fits() {
    auto outcome = engine.min_addition(in, &banned, kExactHeadLimit);
    if (outcome.status == SteinerStatus::kTooManyHeads)
      outcome = engine.per_head_bound(in, &banned);
    if (outcome.status == SteinerStatus::kInfeasible) return false;
    return static_cast<std::int64_t>(chosen_stack.size()) + outcome.added <= k;
  }

  // Generalized instances: every chosen OR node needs a not-banned
  // successor, and the AND-closure of the chosen set must fit in k without
  // touching banned species.
  bool generalized_feasible() {
    for (int s : chosen_stack) {
      if (inst.web.mode(s) == ViabilityMode::kAnd) continue;
      if (inst.web.is_sink(s)) continue;
      bool possible = false;
      for (int succ : inst.web.successors(s)) {
        if (!banned[succ]) {
          possible = true;
          break;
        }
      }
      if (!possible) return false;
    }
    std::vector<char> closed(n, 0);
    std::vector<int> work;
    for (int s : chosen_stack) {
      closed[s] = 1;
      work.push_back(s);
    }
    std::int64_t size = static_cast<std::int64_t>(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
      int s = work[i];
      if (inst.web.mode(s) != ViabilityMode::kAnd) continue;
      for (int succ : inst.web.successors(s)) {
        if (closed[succ]) continue;
        if (banned[succ]) return false;
        closed[succ] = 1;
        work.push_back(succ);
        if (++size > k) return false;
      }
    }
    return true;
  }

  void dfs(int depth) {
    ++nodes;
    std::int64_t size = static_cast<std::int64_t>(chosen_stack.size());
    SpeciesSet current(chosen_stack);
    std::int64_t current_value = oracle.value(current);
    if (current_value > best_value && viable_now()) {
      best_value = current_value;
      best_set = std::move(current);
    }
    if (depth == n || size == k) return;

    if (current_value + top_up(k - size) <= best_value) return;
    {
      std::vector<int> rest(chosen_stack);
      for (int i = depth; i < n; ++i) rest.push_back(order[i]);
      if (oracle.value(SpeciesSet(std::move(rest))) <= best_value) return;
    }
    if (inst.generalized) {
      if (!generalized_feasible()) return;
    } else {
      if (!completion_fits()) return;
    }

    int v = order[depth];
    in[v] = 1;
    chosen_stack.push_back(v);
    dfs(depth + 1);
    chosen_stack.pop_back();
    in[v] = 0;

    banned[v] = 1;
    dfs(depth + 1);
    banned[v] = 0;
  }
};

}  // namespace

SolveReport solve_exact(const Instance& inst, const SubmodularOracle& oracle,
                        const SolverConfig& config) {
  if (inst.species_count() > config.limits.exact_species_cap)
    throw CapExceeded("exact solver capped at " +
                      std::to_string(config.limits.exact_species_cap) +
                      " species (exact_species_cap)");
  auto start = Clock::now();
  std::uint64_t calls_before = oracle.calls();

  ExactSearch search(inst, oracle, config.limits);
  if (inst.budget > 0) search.dfs(0);

  SolveReport report =
      make_report(inst, oracle, "exact", 0, std::move(search.best_set),
                  calls_before, start);
  report.iterations = search.nodes;
  report.steiner_calls = static_cast<std::uint64_t>(search.engine.calls());
  return report;
}

SolveReport solve(const Instance& inst, const SubmodularOracle& oracle,
                  const SolverConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kFaller: return solve_faller(inst, oracle, config);
    case Algorithm::kGreedyP: return solve_greedy_p(inst, oracle, config);
    case Algorithm::kEnumP: return solve_enum_p(inst, oracle, config);
    case Algorithm::kExact: return solve_exact(inst, oracle, config);
  }
  throw ValidationError("unknown algorithm");
}

Decomposition decompose(const SpeciesSet& o, const FoodWeb& web, int p,
                        std::int64_t k) {
  require_p(p);
  if (static_cast<std::int64_t>(o.size()) > k)
    throw ValidationError("decompose: |O| exceeds k");
  if (!is_viable(o, web)) throw ValidationError("decompose: O is not viable");

  int n = web.size();
  std::vector<char> in(n, 0);
  for (int s : o) in[s] = 1;

  // DFS over the reverse web restricted to O, started from the sinks of the
  // web (the roots after reversal) in ascending order. Each finished node
  // joins the open block O_i; when the block reaches p the ancestors still
  // on the DFS path become its helper set B_i.
  std::vector<DecompositionPair> pairs;
  std::vector<int> open_block;
  std::vector<int> path;
  std::vector<char> visited(n, 0);

  auto finish = [&](int v) {
    open_block.push_back(v);
    if (static_cast<int>(open_block.size()) == p) {
      pairs.push_back({SpeciesSet(open_block), SpeciesSet(path)});
      open_block.clear();
    }
  };

  // Children in the reverse graph are the web predecessors inside O.
  struct Frame {
    int node;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  for (int root : o) {
    if (!web.is_sink(root) || visited[root]) continue;
    visited[root] = 1;
    stack.push_back({root});
    path.push_back(root);
    while (!stack.empty()) {
      Frame& frame = stack.back();
      auto preds = web.predecessors(frame.node);
      bool descended = false;
      while (frame.next < preds.size()) {
        int child = preds[frame.next++];
        if (!in[child] || visited[child]) continue;
        visited[child] = 1;
        stack.push_back({child});
        path.push_back(child);
        descended = true;
        break;
      }
      if (!descended) {
        int done = stack.back().node;
        stack.pop_back();
        path.pop_back();
        finish(done);
      }
    }
  }
  if (!open_block.empty()) pairs.push_back({SpeciesSet(open_block), {}});

  Decomposition out;
  out.pairs = std::move(pairs);
  return out;
}

}  // namespace viaphy
