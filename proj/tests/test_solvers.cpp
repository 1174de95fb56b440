#include <doctest.h>

#include "testgen.hpp"
#include "viaphy/error.hpp"
#include "viaphy/instance.hpp"
#include "viaphy/pd_oracle.hpp"
#include "viaphy/solvers.hpp"

using namespace viaphy;

namespace {

// fig1 indices: A=0 B=1 D=2 E=3 C=4
constexpr int A = 0, B = 1, D = 2, E = 3, C = 4;

Instance fig1(std::int64_t k) {
  TreeBuilder tree("r");
  int i1 = tree.add_inner(tree.root(), 1);
  tree.add_leaf(i1, "A", 1);
  tree.add_leaf(i1, "B", 2);
  int i2 = tree.add_inner(tree.root(), 2);
  tree.add_leaf(i2, "D", 2);
  tree.add_leaf(i2, "E", 1);
  tree.add_leaf(tree.root(), "C", 3);
  FoodWeb web = FoodWeb::create(5, {{A, B}, {A, C}, {D, A}, {D, E}});
  return make_instance(std::move(tree).build(), std::move(web), k);
}

// Example-2 family: y=0 z=1 x1=2 x2=3, weight C on z, food web {z -> y}.
Instance example2(std::int64_t c) {
  TreeBuilder tree("r");
  tree.add_leaf(tree.root(), "y", 0);
  tree.add_leaf(tree.root(), "z", c);
  tree.add_leaf(tree.root(), "x1", 1);
  tree.add_leaf(tree.root(), "x2", 1);
  FoodWeb web = FoodWeb::create(4, {{1, 0}});
  return make_instance(std::move(tree).build(), std::move(web), 2);
}

void check_feasible(const Instance& inst, const SolveReport& report) {
  CHECK(report.viable);
  CHECK(static_cast<std::int64_t>(report.chosen.size()) <= inst.budget);
}

}  // namespace

TEST_CASE("the greedy of Faller et al. misses the guarded heavy species") {
  for (std::int64_t c : {3, 10, 100}) {
    CAPTURE(c);
    Instance inst = example2(c);
    PdOracle pd(inst.tree);
    SolveReport faller = solve_faller(inst, pd);
    CHECK(faller.value == 2);
    CHECK(faller.chosen == SpeciesSet{2, 3});  // x1, x2
    check_feasible(inst, faller);

    SolverConfig p1;
    p1.p = 1;
    SolveReport greedy = solve_greedy_p(inst, pd, p1);
    CHECK(greedy.value == c);
    CHECK(greedy.chosen == SpeciesSet{0, 1});  // {y, z}
    check_feasible(inst, greedy);

    SolveReport enumerated = solve_enum_p(inst, pd, p1);
    CHECK(enumerated.value == c);
    check_feasible(inst, enumerated);

    SolveReport exact = solve_exact(inst, pd);
    CHECK(exact.value == c);
    CHECK(exact.chosen == SpeciesSet{0, 1});
    check_feasible(inst, exact);
  }
}

TEST_CASE("the faller gap grows linearly in the guarded weight") {
  for (std::int64_t c : {4, 40, 400}) {
    Instance inst = example2(c);
    PdOracle pd(inst.tree);
    std::int64_t faller = solve_faller(inst, pd).value;
    std::int64_t exact = solve_exact(inst, pd).value;
    CHECK(faller == 2);
    CHECK(exact == c);  // ratio c/2, unbounded in c
  }
}

TEST_CASE("faller on the worked example with budget 1") {
  Instance inst = fig1(1);
  PdOracle pd(inst.tree);
  SolveReport report = solve_faller(inst, pd);
  CHECK(report.value == 3);
  // B, C and E are the sinks and all have pd 3; the smallest index wins.
  CHECK(report.chosen == SpeciesSet{B});
  CHECK(report.steiner_calls == 0);
}

TEST_CASE("greedy_p on the worked example with budget 1") {
  Instance inst = fig1(1);
  PdOracle pd(inst.tree);
  SolverConfig p1;
  p1.p = 1;
  SolveReport report = solve_greedy_p(inst, pd, p1);
  CHECK(report.value == 3);
  check_feasible(inst, report);
}

TEST_CASE("exact on the worked example with budget 2, and p >= k matches it") {
  Instance inst = fig1(2);
  PdOracle pd(inst.tree);
  std::int64_t brute = testgen::brute_opt(inst, pd);
  CHECK(brute == 6);  // {B,C}: 3 + 3

  SolveReport exact = solve_exact(inst, pd);
  CHECK(exact.value == brute);
  check_feasible(inst, exact);

  SolverConfig p2;
  p2.p = 2;
  CHECK(solve_greedy_p(inst, pd, p2).value == brute);
  SolverConfig p1;
  p1.p = 1;
  CHECK(solve_enum_p(inst, pd, p1).value == brute);  // min(3p+3d-3, k) = k
}

TEST_CASE("budget 0 instances yield the empty set") {
  TreeBuilder tree("r");
  tree.add_leaf(tree.root(), "A", 1);
  tree.add_leaf(tree.root(), "B", 2);
  Instance inst =
      make_instance(std::move(tree).build(), FoodWeb::create(2, {}), 0);
  PdOracle pd(inst.tree);
  for (Algorithm a : {Algorithm::kFaller, Algorithm::kGreedyP, Algorithm::kEnumP,
                      Algorithm::kExact}) {
    SolverConfig config;
    config.algorithm = a;
    SolveReport report = solve(inst, pd, config);
    CHECK(report.value == 0);
    CHECK(report.chosen.empty());
    CHECK(report.viable);
  }
}

TEST_CASE("exact agrees with dumb enumeration on random instances") {
  testgen::Rng rng(101);
  for (int round = 0; round < 40; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 5, 20);
    PdOracle pd(inst.tree);
    SolveReport exact = solve_exact(inst, pd);
    CHECK(exact.value == testgen::brute_opt(inst, pd));
    check_feasible(inst, exact);
  }
}

TEST_CASE("greedy_p with p >= k enumerates everything and is optimal") {
  testgen::Rng rng(107);
  for (int round = 0; round < 25; ++round) {
    Instance inst = testgen::random_instance(rng, 9, 3, 20);
    PdOracle pd(inst.tree);
    SolverConfig config;
    config.p = static_cast<int>(inst.budget);
    CHECK(solve_greedy_p(inst, pd, config).value == testgen::brute_opt(inst, pd));
  }
}

TEST_CASE("every solver output is viable and within budget") {
  testgen::Rng rng(109);
  for (int round = 0; round < 25; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 5, 20);
    PdOracle pd(inst.tree);
    for (Algorithm a : {Algorithm::kFaller, Algorithm::kGreedyP,
                        Algorithm::kEnumP, Algorithm::kExact}) {
      SolverConfig config;
      config.algorithm = a;
      config.p = rng.uniform(1, 2);
      check_feasible(inst, solve(inst, pd, config));
    }
  }
}

TEST_CASE("enum_p dominates the plain greedy pass it repeats") {
  testgen::Rng rng(113);
  for (int round = 0; round < 25; ++round) {
    Instance inst = testgen::random_instance(rng, 9, 4, 20);
    PdOracle pd(inst.tree);
    SolverConfig config;
    config.p = rng.uniform(1, 2);

    GreedyFillStats stats;
    SpeciesSet phase2 = greedy_fill(inst, pd, config.p, {}, config.limits, stats);
    SolveReport enumerated = solve_enum_p(inst, pd, config);
    CHECK(enumerated.value >= pd.value(phase2));
    // and where greedy_p is optimal, enum_p is too (small k keeps it exact)
    std::int64_t greedy = solve_greedy_p(inst, pd, config).value;
    std::int64_t brute = testgen::brute_opt(inst, pd);
    if (greedy == brute) CHECK(enumerated.value >= greedy);
  }
}

TEST_CASE("identical runs produce identical reports") {
  testgen::Rng rng(127);
  for (int round = 0; round < 10; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 5, 20);
    for (Algorithm a : {Algorithm::kFaller, Algorithm::kGreedyP,
                        Algorithm::kEnumP, Algorithm::kExact}) {
      PdOracle pd1(inst.tree);
      PdOracle pd2(inst.tree);
      SolverConfig config;
      config.algorithm = a;
      config.p = 2;
      SolveReport r1 = solve(inst, pd1, config);
      SolveReport r2 = solve(inst, pd2, config);
      CHECK(r1.chosen == r2.chosen);
      CHECK(r1.value == r2.value);
      CHECK(r1.iterations == r2.iterations);
      CHECK(r1.oracle_calls == r2.oracle_calls);
      CHECK(r1.steiner_calls == r2.steiner_calls);
    }
  }
}

TEST_CASE("generalized instances are exact-only") {
  Instance inst = parse_instance(
      "[tree]\n(t:1,u:0,v:0)r;\n[web]\nt u\nt v\nAND t\n[budget]\n3\n"
      "[generalized]\n");
  PdOracle pd(inst.tree);
  SolverConfig config;
  CHECK_THROWS_AS(solve_faller(inst, pd, config), ValidationError);
  CHECK_THROWS_AS(solve_greedy_p(inst, pd, config), ValidationError);
  CHECK_THROWS_AS(solve_enum_p(inst, pd, config), ValidationError);
  SolveReport exact = solve_exact(inst, pd, config);
  CHECK(exact.value == 1);
  CHECK(exact.chosen == SpeciesSet{0, 1, 2});
}

TEST_CASE("caps fail loudly") {
  Instance inst = fig1(3);
  PdOracle pd(inst.tree);

  SolverConfig tiny_seeds;
  tiny_seeds.limits.max_seeds = 3;
  CHECK_THROWS_AS(solve_enum_p(inst, pd, tiny_seeds), CapExceeded);

  SolverConfig tiny_candidates;
  tiny_candidates.limits.max_candidates = 2;
  CHECK_THROWS_AS(solve_greedy_p(inst, pd, tiny_candidates), CapExceeded);

  testgen::Rng rng(131);
  Instance big = testgen::random_instance(rng, 12, 4, 20);
  SolverConfig tiny_exact;
  tiny_exact.limits.exact_species_cap = big.species_count() - 1;
  PdOracle big_pd(big.tree);
  CHECK_THROWS_AS(solve_exact(big, big_pd, tiny_exact), CapExceeded);

  SolverConfig zero_p;
  zero_p.p = 0;
  CHECK_THROWS_AS(solve_greedy_p(inst, pd, zero_p), ValidationError);
}

TEST_CASE("decomposition of the worked example") {
  Instance inst = fig1(3);
  Decomposition decomposition = decompose({A, B, D}, inst.web, 1, 3);
  REQUIRE(decomposition.pairs.size() == 3);
  int d = truncated_depth(inst.web, 3).d;
  SpeciesSet covered;
  for (const auto& [o, b] : decomposition.pairs) {
    CHECK(o.size() <= 1);
    CHECK(static_cast<int>(b.size()) <= d - 1);
    CHECK(is_viable(o.united(b), inst.web));
    for (int member : o) {
      CHECK(!covered.contains(member));
      covered.insert(member);
    }
  }
  CHECK(covered == SpeciesSet{A, B, D});
  CHECK(decomposition.pairs.back().b.empty());
}

TEST_CASE("decomposition of isolated sinks has empty helpers") {
  FoodWeb web = FoodWeb::create(5, {});
  Decomposition decomposition = decompose({0, 2, 4}, web, 2, 4);
  REQUIRE(decomposition.pairs.size() == 2);
  for (const auto& pair : decomposition.pairs) CHECK(pair.b.empty());
}

TEST_CASE("decomposition with |O| <= p is a single pair") {
  Instance inst = fig1(3);
  Decomposition decomposition = decompose({A, B}, inst.web, 4, 3);
  REQUIRE(decomposition.pairs.size() == 1);
  CHECK(decomposition.pairs[0].o == SpeciesSet{A, B});
  CHECK(decomposition.pairs[0].b.empty());
}

TEST_CASE("decomposition rejects non-viable or oversized inputs") {
  Instance inst = fig1(3);
  CHECK_THROWS_AS(decompose({A}, inst.web, 1, 3), ValidationError);
  CHECK_THROWS_AS(decompose({A, B, D}, inst.web, 1, 2), ValidationError);
}

TEST_CASE("decomposition invariants hold on random viable sets") {
  testgen::Rng rng(137);
  for (int round = 0; round < 60; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 6, 20);
    auto table = testgen::viability_table(inst.web);
    SpeciesSet o = testgen::random_viable_set(rng, inst.web, table,
                                              static_cast<int>(inst.budget));
    int p = rng.uniform(1, 3);
    int d = truncated_depth(inst.web, inst.budget).d;
    Decomposition decomposition = decompose(o, inst.web, p, inst.budget);

    std::size_t expected_pairs = o.empty() ? 0 : (o.size() + p - 1) / p;
    CHECK(decomposition.pairs.size() == expected_pairs);

    SpeciesSet covered;
    std::int64_t total = 0;
    for (const auto& [oi, bi] : decomposition.pairs) {
      CHECK(static_cast<int>(oi.size()) <= p);
      CHECK(static_cast<int>(bi.size()) <= d - 1);
      CHECK(is_viable(oi.united(bi), inst.web));
      for (int member : oi) {
        CHECK(!covered.contains(member));
        covered.insert(member);
      }
      total += static_cast<std::int64_t>(oi.united(bi).size());
    }
    CHECK(covered == o);
    // sum |O_i ∪ B_i| <= (k/p)(p+d-1), compared exactly by cross-multiplying
    CHECK(total * p <= inst.budget * (p + d - 1));
    if (!decomposition.pairs.empty()) CHECK(decomposition.pairs.back().b.empty());
  }
}
