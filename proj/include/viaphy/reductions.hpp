#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "viaphy/instance.hpp"

namespace viaphy {

// Max Coverage input: weighted domain elements 1..n, a collection of subsets
// and a budget of k sets.
struct CoverageInput {
  int n = 0;
  std::vector<std::int64_t> weights;      // weights[i] for element i+1
  std::vector<std::vector<int>> sets;     // 1-based elements, each sorted
  std::int64_t k = 1;
};

// Max Vertex Cover input: simple undirected graph and a budget of k vertices.
struct VertexCoverInput {
  std::vector<std::string> vertices;            // sorted by name
  std::vector<std::pair<int, int>> edges;       // vertex indices, u < v
  std::int64_t k = 1;
  int max_degree() const;
};

// 3-CNF formula: every clause has exactly three literals over distinct
// variables. Literals are ±v with v in 1..variables.
struct CnfInput {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Source-file parsers for the CLI generate subcommand.
CoverageInput parse_coverage(const std::string& text, std::int64_t k);
VertexCoverInput parse_graph(const std::string& text, std::int64_t k);
CnfInput parse_dimacs(const std::string& text);

// Max Coverage -> OptPDVC: elements become weighted leaves of a star tree,
// each set becomes an n-long chain in the web guarding its top node, budget
// k' = (k+1)·n.
Instance generate_maxcov(const CoverageInput& in);

// Max Vertex Cover -> OptPDVC: Γ copies per vertex under per-edge inner tree
// nodes plus zero-weight prime chains of depth Γ in the web, budget 2kΓ.
Instance generate_vertexcover(const VertexCoverInput& in);

// 3-SAT -> generalized OptPDVC: one AND-node t over clause and variable
// gadgets; PD(optimum) > 0 iff the formula is satisfiable. Budget 2n+m+1.
Instance generate_sat(const CnfInput& in);

// Brute-force source-side oracles for the round-trip tests. Desk scale only.
std::int64_t solve_maxcov_exact(const CoverageInput& in);
std::int64_t solve_vc_exact(const VertexCoverInput& in);
bool solve_sat_exact(const CnfInput& in);

}  // namespace viaphy
