#include <doctest.h>

#include "testgen.hpp"
#include "viaphy/error.hpp"
#include "viaphy/instance.hpp"
#include "viaphy/viability.hpp"

using namespace viaphy;

namespace {

// fig1 indices: A=0 B=1 D=2 E=3 C=4
Instance fig1() {
  return parse_instance(
      "[tree]\n((A:1,B:2):1,(D:2,E:1):2,C:3)r;\n"
      "[web]\nA B\nA C\nD A\nD E\n[budget]\n3\n");
}

constexpr int A = 0, B = 1, D = 2, E = 3, C = 4;

}  // namespace

TEST_CASE("viability of the worked example sets") {
  Instance inst = fig1();
  CHECK(is_viable({A, B}, inst.web));
  CHECK(is_viable({A, B, D}, inst.web));
  CHECK(!is_viable({A}, inst.web));
  CHECK(!is_viable({A, D, E}, inst.web));
  CHECK(is_viable({}, inst.web));
  CHECK(is_viable({B, C, E}, inst.web));  // sinks only
}

TEST_CASE("generalized viability needs every successor of an AND node") {
  Instance inst = parse_instance(
      "[tree]\n(t:1,u:0,v:0)r;\n[web]\nt u\nt v\nAND t\n[budget]\n3\n"
      "[generalized]\n");
  CHECK(is_viable({0, 1, 2}, inst.web));
  CHECK(!is_viable({0, 1}, inst.web));
  CHECK(is_viable({1, 2}, inst.web));  // sinks
}

TEST_CASE("truncated depth of the worked example") {
  Instance inst = fig1();
  DepthInfo info = truncated_depth(inst.web, 3);
  CHECK(info.longest_path_len == 3);  // D -> A -> B
  CHECK(info.d == 3);
  CHECK(truncated_depth(inst.web, 2).d == 2);
  CHECK_THROWS_AS(truncated_depth(inst.web, 0), ValidationError);
}

TEST_CASE("truncated depth on arcless and chain webs") {
  FoodWeb arcless = FoodWeb::create(4, {});
  CHECK(truncated_depth(arcless, 5).longest_path_len == 1);
  CHECK(truncated_depth(arcless, 5).d == 1);

  FoodWeb chain = FoodWeb::create(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(truncated_depth(chain, 2).longest_path_len == 6);
  CHECK(truncated_depth(chain, 2).d == 2);
}

TEST_CASE("truncated depth agrees with exhaustive path enumeration") {
  testgen::Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    FoodWeb web = testgen::random_web(rng, rng.uniform(1, 8), rng.uniform(5, 60));
    CHECK(truncated_depth(web, 100).longest_path_len ==
          testgen::brute_longest_path(web));
  }
}

TEST_CASE("viable extension on the worked example") {
  Instance inst = fig1();
  // {A,B} and {A,C} are both minimal; the lexicographic tie-break picks B.
  CHECK(viable_extension({A}, inst.web) == SpeciesSet{A, B});
  CHECK(viable_extension({B}, inst.web) == SpeciesSet{B});
  CHECK(viable_extension({D}, inst.web, {A, B}) == SpeciesSet{A, B, D});
}

TEST_CASE("cost on the worked example") {
  Instance inst = fig1();
  CHECK(cost({D}, {}, inst.web) == 2);        // vcl({D}) = {D,E}
  CHECK(cost({}, {A, B}, inst.web) == 0);     // viable B costs nothing
  CHECK(cost({A}, {D, E}, inst.web) == 2);    // A plus one of B, C
  CHECK(vcl_size({D}, inst.web) == 2);
}

TEST_CASE("cost supports a non-viable second argument") {
  Instance inst = fig1();
  // B = {A} is not viable; vcl({A,D}) must still be minimal.
  CHECK(cost({D}, {A}, inst.web) == 2);  // {A,B,D} (or {A,C,D}); adds 2 beyond {A}
  testgen::BruteVcl brute = testgen::brute_vcl(inst.web, SpeciesSet{A, D});
  CHECK(brute.size == 3);
  CHECK(viable_extension({D}, inst.web, {A}) == brute.witness);
}

TEST_CASE("viable extension matches the brute force on random instances") {
  testgen::Rng rng(83);
  int checked = 0;
  for (int round = 0; round < 25; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 5, 20);
    int n = inst.species_count();
    for (int trial = 0; trial < 40; ++trial) {
      SpeciesSet seed = testgen::random_subset(rng, n, 25);
      if (seed.size() > 3) continue;
      SpeciesSet extended = viable_extension(seed, inst.web);
      testgen::BruteVcl brute = testgen::brute_vcl(inst.web, seed);
      CHECK(static_cast<int>(extended.size()) == brute.size);
      CHECK(extended == brute.witness);  // lexicographic tie-break
      CHECK(is_viable(extended, inst.web));
      CHECK(seed.is_subset_of(extended));
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("is_viable agrees with a sink-reachability oracle") {
  // On OR-only webs the local condition is equivalent to every member
  // reaching a sink inside the set.
  testgen::Rng rng(89);
  auto reaches_sink_inside = [](const FoodWeb& web, const SpeciesSet& s) {
    std::vector<char> in(web.size(), 0);
    for (int m : s) in[m] = 1;
    for (int m : s) {
      // DFS within the set
      std::vector<int> stack{m};
      std::vector<char> seen(web.size(), 0);
      bool ok = false;
      while (!stack.empty() && !ok) {
        int v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        if (web.is_sink(v)) {
          ok = true;
          break;
        }
        for (int succ : web.successors(v)) {
          if (in[succ]) stack.push_back(succ);
        }
      }
      if (!ok) return false;
    }
    return true;
  };

  for (int round = 0; round < 100; ++round) {
    FoodWeb web = testgen::random_web(rng, rng.uniform(1, 12), rng.uniform(5, 50));
    for (int trial = 0; trial < 5; ++trial) {
      SpeciesSet s = testgen::random_subset(rng, web.size(), 40);
      CHECK(is_viable(s, web) == reaches_sink_inside(web, s));
    }
  }
}

TEST_CASE("viable extension refuses generalized webs") {
  Instance inst = parse_instance(
      "[tree]\n(t:1,u:0,v:0)r;\n[web]\nt u\nt v\nAND t\n[budget]\n3\n"
      "[generalized]\n");
  CHECK_THROWS_AS(viable_extension({0}, inst.web), ValidationError);
  CHECK_THROWS_AS(cost({0}, {}, inst.web), ValidationError);
  CHECK_THROWS_AS(vcl_size({0}, inst.web), ValidationError);
}

TEST_CASE("the head capacity guard refuses oversized extensions") {
  // 13 disjoint predator->prey pairs; extending all predators needs 13
  // separate connections.
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> predators;
  for (int i = 0; i < 13; ++i) {
    arcs.emplace_back(2 * i, 2 * i + 1);
    predators.push_back(2 * i);
  }
  FoodWeb web = FoodWeb::create(26, arcs);
  SpeciesSet all(predators);
  CHECK_THROWS_AS(vcl_size(all, web), CapExceeded);
  SteinerLimits wide;
  wide.max_heads = 13;
  CHECK(vcl_size(all, web, wide) == 26);
}

TEST_CASE("cost is monotone under growth of A") {
  testgen::Rng rng(97);
  for (int round = 0; round < 30; ++round) {
    Instance inst = testgen::random_instance(rng, 10, 5, 20);
    int n = inst.species_count();
    SpeciesSet b = testgen::random_subset(rng, n, 20);
    SpeciesSet a = testgen::random_subset(rng, n, 20);
    SpeciesSet a2 = a.united(testgen::random_subset(rng, n, 20));
    if (a.size() > 3 || a2.size() > 6) continue;
    SteinerLimits wide;
    wide.max_heads = 16;
    CHECK(cost(a, b, inst.web, wide) <= cost(a2, b, inst.web, wide));
  }
}
