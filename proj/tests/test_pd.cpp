#include <doctest.h>

#include "testgen.hpp"
#include "viaphy/error.hpp"
#include "viaphy/pd_oracle.hpp"

using namespace viaphy;

namespace {

PhyloTree fig1_tree() { return parse_tree("((A:1,B:2):1,(D:2,E:1):2,C:3)r;"); }

// fig1 species indices: A=0 B=1 D=2 E=3 C=4

}  // namespace

TEST_CASE("pd values of the worked example") {
  PhyloTree tree = fig1_tree();
  PdOracle pd(tree);
  CHECK(pd.value({0}) == 2);        // PD({A}) = 2
  CHECK(pd.value({1}) == 3);        // PD({B}) = 3
  CHECK(pd.value({0, 1}) == 4);     // PD({A,B}) = 4
  CHECK(pd.value({}) == 0);
  CHECK(pd.value({4}) == 3);        // C hangs off the root
  CHECK(pd.value({0, 1, 2, 3, 4}) == tree.total_edge_weight());
  CHECK(pd.ground_size() == 5);
}

TEST_CASE("pd marginals") {
  PdOracle pd(fig1_tree());
  CHECK(pd.marginal({1}, {0}) == 2);  // PD({A,B}) - PD({A}) = 4 - 2
  CHECK(pd.marginal({}, {0, 1}) == 0);
  CHECK(pd.marginal({0}, {0}) == 0);
}

TEST_CASE("pd rejects unknown species indices") {
  PdOracle pd(fig1_tree());
  CHECK_THROWS_AS(pd.value({7}), ValidationError);
  CHECK_THROWS_AS(pd.value({-1}), ValidationError);
}

TEST_CASE("pd matches the root-path-union brute force on small trees") {
  testgen::Rng rng(31);
  for (int round = 0; round < 40; ++round) {
    int n = rng.uniform(2, 8);
    PhyloTree tree = testgen::random_tree(rng, n, 20);
    PdOracle pd(tree);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      SpeciesSet s = testgen::mask_to_set(mask);
      CHECK(pd.value(s) == testgen::pd_bruteforce(tree, s));
    }
  }
}

TEST_CASE("pd is monotone and submodular") {
  testgen::Rng rng(47);
  for (int round = 0; round < 50; ++round) {
    PhyloTree tree = testgen::random_tree(rng, rng.uniform(2, 12), 20);
    PdOracle pd(tree);
    int n = tree.species_count();
    for (int trial = 0; trial < 50; ++trial) {
      SpeciesSet a = testgen::random_subset(rng, n, 30);
      SpeciesSet b = a.united(testgen::random_subset(rng, n, 30));
      SpeciesSet c = testgen::random_subset(rng, n, 30);
      CHECK(pd.value(a) <= pd.value(b));
      CHECK(pd.value(a.united(c)) - pd.value(a) >=
            pd.value(b.united(c)) - pd.value(b));
    }
  }
}

TEST_CASE("marginal is anti-monotone in the second argument") {
  testgen::Rng rng(53);
  for (int round = 0; round < 50; ++round) {
    PhyloTree tree = testgen::random_tree(rng, rng.uniform(2, 12), 20);
    PdOracle pd(tree);
    int n = tree.species_count();
    for (int trial = 0; trial < 20; ++trial) {
      SpeciesSet a = testgen::random_subset(rng, n, 30);
      SpeciesSet b = testgen::random_subset(rng, n, 30);
      SpeciesSet b2 = b.united(testgen::random_subset(rng, n, 30));
      CHECK(pd.marginal(a, b) >= pd.marginal(a, b2));
    }
  }
}

TEST_CASE("the optional cache does not change answers") {
  testgen::Rng rng(61);
  PhyloTree tree = testgen::random_tree(rng, 10, 20);
  PdOracle plain(tree);
  PdOracle cached(tree);
  cached.enable_cache(64);
  for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
    SpeciesSet s = testgen::mask_to_set(mask);
    CHECK(plain.value(s) == cached.value(s));
  }
  // re-query after the cache has been flushed a few times
  CHECK(cached.value({0, 3, 5}) == plain.value({0, 3, 5}));
}

TEST_CASE("oracle call counting") {
  PdOracle pd(fig1_tree());
  auto before = pd.calls();
  pd.value({0});
  pd.marginal({1}, {0});
  CHECK(pd.calls() - before == 3);  // marginal queries the value twice
}

TEST_CASE("additive oracle is the plain weight sum") {
  AdditiveOracle oracle({5, 0, 7, 1});
  CHECK(oracle.value({}) == 0);
  CHECK(oracle.value({0, 2}) == 12);
  CHECK(oracle.marginal({2}, {0}) == 7);
  CHECK(oracle.ground_size() == 4);
  CHECK_THROWS_AS(oracle.value({4}), ValidationError);
}
