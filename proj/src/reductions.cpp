#include "viaphy/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "viaphy/error.hpp"

namespace viaphy {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream probe(raw);
    std::string token;
    if (probe >> token) lines.push_back(raw);
  }
  return lines;
}

void validate_coverage(const CoverageInput& in) {
  if (in.n <= 0) throw ValidationError("coverage input needs n >= 1 elements");
  if (static_cast<int>(in.weights.size()) != in.n)
    throw ValidationError("coverage input needs one weight per element");
  for (std::int64_t w : in.weights) {
    if (w < 0) throw ValidationError("coverage weights must be non-negative");
  }
  for (const auto& set : in.sets) {
    for (int e : set) {
      if (e < 1 || e > in.n)
        throw ValidationError("coverage set member out of range");
    }
  }
  if (in.k < 1) throw ValidationError("coverage input needs k >= 1");
}

void validate_cnf(const CnfInput& in) {
  if (in.variables < 1) throw ValidationError("formula needs at least one variable");
  for (const auto& clause : in.clauses) {
    std::set<int> vars;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > in.variables)
        throw ValidationError("literal out of range");
      vars.insert(std::abs(lit));
    }
    if (vars.size() != 3)
      throw ValidationError("every clause needs exactly 3 distinct variables");
  }
}

}  // namespace

int VertexCoverInput::max_degree() const {
  std::vector<int> degree(vertices.size(), 0);
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  int gamma = 0;
  for (int d : degree) gamma = std::max(gamma, d);
  return gamma;
}

CoverageInput parse_coverage(const std::string& text, std::int64_t k) {
  auto lines = data_lines(text);
  if (lines.empty()) throw ParseError("coverage input needs a weights line");
  CoverageInput in;
  in.k = k;
  {
    std::istringstream ws(lines[0]);
    std::int64_t w;
    while (ws >> w) in.weights.push_back(w);
    if (!ws.eof()) throw ParseError("weights line must contain integers only");
  }
  in.n = static_cast<int>(in.weights.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream es(lines[i]);
    std::vector<int> set;
    int e;
    while (es >> e) set.push_back(e);
    if (!es.eof()) throw ParseError("set lines must contain element indices");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    in.sets.push_back(std::move(set));
  }
  validate_coverage(in);
  return in;
}

VertexCoverInput parse_graph(const std::string& text, std::int64_t k) {
  auto lines = data_lines(text);
  std::set<std::string> names;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream es(lines[i]);
    std::string u, v, extra;
    if (!(es >> u >> v) || (es >> extra))
      throw ParseError("expected 'U V' per edge line", static_cast<int>(i + 1));
    if (!valid_name(u) || !valid_name(v))
      throw ParseError("vertex names must match [A-Za-z0-9_]+",
                       static_cast<int>(i + 1));
    if (u == v) throw ParseError("self-loop", static_cast<int>(i + 1));
    names.insert(u);
    names.insert(v);
    raw_edges.emplace_back(u, v);
  }

  VertexCoverInput in;
  in.k = k;
  in.vertices.assign(names.begin(), names.end());
  auto index_of = [&](const std::string& name) {
    return static_cast<int>(std::lower_bound(in.vertices.begin(),
                                             in.vertices.end(), name) -
                            in.vertices.begin());
  };
  std::set<std::pair<int, int>> edges;
  for (auto& [u, v] : raw_edges) {
    int a = index_of(u), b = index_of(v);
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  in.edges.assign(edges.begin(), edges.end());
  return in;
}

CnfInput parse_dimacs(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  CnfInput in;
  int declared_clauses = -1;
  std::vector<int> pending;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      std::string kind;
      if (!(tokens >> kind >> in.variables >> declared_clauses) || kind != "cnf")
        throw ParseError("expected 'p cnf VARS CLAUSES'", lineno);
      continue;
    }
    if (declared_clauses < 0) throw ParseError("clause before 'p cnf' header", lineno);
    tokens.clear();
    tokens.str(line);
    int lit;
    while (tokens >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError("every clause needs exactly 3 literals", lineno);
        in.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!pending.empty()) throw ParseError("unterminated clause");
  if (declared_clauses < 0) throw ParseError("missing 'p cnf' header");
  if (static_cast<int>(in.clauses.size()) != declared_clauses)
    throw ParseError("clause count differs from the header");
  validate_cnf(in);
  return in;
}

Instance generate_maxcov(const CoverageInput& in) {
  validate_coverage(in);
  int n = in.n;
  int m = static_cast<int>(in.sets.size());

  TreeBuilder tree("r");
  for (int e = 1; e <= n; ++e)
    tree.add_leaf(tree.root(), "e" + std::to_string(e), in.weights[e - 1]);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      tree.add_leaf(tree.root(),
                    "S" + std::to_string(i) + "_" + std::to_string(j), 0);
    }
  }

  // Species indices: element e -> e-1, chain node S_{i,j} -> n+(i-1)n+(j-1).
  auto chain = [&](int i, int j) { return n + (i - 1) * n + (j - 1); };
  std::vector<std::pair<int, int>> arcs;
  for (int i = 1; i <= m; ++i) {
    for (int e : in.sets[i - 1]) arcs.emplace_back(e - 1, chain(i, n));
    for (int j = 1; j < n; ++j)
      arcs.emplace_back(chain(i, j + 1), chain(i, j));
  }

  std::ostringstream sets_line;
  for (int i = 0; i < m; ++i) {
    if (i > 0) sets_line << " | ";
    for (std::size_t j = 0; j < in.sets[i].size(); ++j)
      sets_line << (j > 0 ? " " : "") << in.sets[i][j];
  }
  std::ostringstream weights_line;
  for (int e = 0; e < n; ++e)
    weights_line << (e > 0 ? " " : "") << in.weights[e];

  int species = n + m * n;
  return make_instance(
      std::move(tree).build(), FoodWeb::create(species, std::move(arcs)),
      (in.k + 1) * n, false,
      {"source: maxcov", "k: " + std::to_string(in.k),
       "weights: " + weights_line.str(), "sets: " + sets_line.str()});
}

Instance generate_vertexcover(const VertexCoverInput& in) {
  if (in.edges.empty()) throw ValidationError("vertex cover input needs at least one edge");
  if (in.k < 1) throw ValidationError("vertex cover input needs k >= 1");
  int nv = static_cast<int>(in.vertices.size());
  for (auto [u, v] : in.edges) {
    if (u < 0 || v < 0 || u >= nv || v >= nv || u == v)
      throw ValidationError("bad edge");
  }
  int gamma = in.max_degree();

  // Incident edges of every vertex, ordered by ascending neighbour index;
  // the position of an edge in that order decides which copy hangs under it.
  std::vector<std::vector<std::pair<int, int>>> incident(nv);  // (neighbour, edge id)
  for (std::size_t f = 0; f < in.edges.size(); ++f) {
    auto [u, v] = in.edges[f];
    incident[u].emplace_back(v, static_cast<int>(f));
    incident[v].emplace_back(u, static_cast<int>(f));
  }
  for (auto& list : incident) std::sort(list.begin(), list.end());

  TreeBuilder tree("r");
  std::map<std::pair<int, int>, int> copy_index;  // (vertex, i) -> species
  int next_species = 0;
  auto copy_name = [&](int v, int i) {
    return in.vertices[v] + "_" + std::to_string(i);
  };

  for (std::size_t f = 0; f < in.edges.size(); ++f) {
    int inner = tree.add_inner(tree.root(), 1);
    for (int v : {in.edges[f].first, in.edges[f].second}) {
      int pos = 0;
      while (incident[v][pos].second != static_cast<int>(f)) ++pos;
      tree.add_leaf(inner, copy_name(v, pos + 1), 1);
      copy_index[{v, pos + 1}] = next_species++;
    }
  }
  for (int v = 0; v < nv; ++v) {
    for (int i = static_cast<int>(incident[v].size()) + 1; i <= gamma; ++i) {
      tree.add_leaf(tree.root(), copy_name(v, i), 1);
      copy_index[{v, i}] = next_species++;
    }
  }
  std::map<std::pair<int, int>, int> prime_index;  // (vertex, i) -> species
  for (int v = 0; v < nv; ++v) {
    for (int i = 1; i <= gamma; ++i) {
      tree.add_leaf(tree.root(), in.vertices[v] + "_p" + std::to_string(i), 0);
      prime_index[{v, i}] = next_species++;
    }
  }

  std::vector<std::pair<int, int>> arcs;
  for (int v = 0; v < nv; ++v) {
    for (int i = 1; i <= gamma; ++i)
      arcs.emplace_back(copy_index[{v, i}], prime_index[{v, gamma}]);
    for (int i = 2; i <= gamma; ++i)
      arcs.emplace_back(prime_index[{v, i}], prime_index[{v, i - 1}]);
  }

  std::ostringstream vertices_line, edges_line;
  for (int v = 0; v < nv; ++v)
    vertices_line << (v > 0 ? " " : "") << in.vertices[v];
  for (std::size_t f = 0; f < in.edges.size(); ++f) {
    edges_line << (f > 0 ? " " : "") << in.vertices[in.edges[f].first] << "-"
               << in.vertices[in.edges[f].second];
  }

  return make_instance(
      std::move(tree).build(), FoodWeb::create(next_species, std::move(arcs)),
      2 * in.k * gamma, false,
      {"source: vertexcover", "k: " + std::to_string(in.k),
       "gamma: " + std::to_string(gamma), "vertices: " + vertices_line.str(),
       "edges: " + edges_line.str()});
}

Instance generate_sat(const CnfInput& in) {
  validate_cnf(in);
  int n = in.variables;
  int m = static_cast<int>(in.clauses.size());

  TreeBuilder tree("r");
  tree.add_leaf(tree.root(), "t", 1);
  for (int i = 1; i <= n; ++i) {
    tree.add_leaf(tree.root(), "x" + std::to_string(i), 0);
    tree.add_leaf(tree.root(), "nx" + std::to_string(i), 0);
    tree.add_leaf(tree.root(), "cx" + std::to_string(i), 0);
  }
  for (int j = 1; j <= m; ++j)
    tree.add_leaf(tree.root(), "c" + std::to_string(j), 0);

  auto pos_lit = [&](int i) { return 1 + 3 * (i - 1); };
  auto neg_lit = [&](int i) { return 2 + 3 * (i - 1); };
  auto var_clause = [&](int i) { return 3 + 3 * (i - 1); };
  auto clause = [&](int j) { return 1 + 3 * n + (j - 1); };

  std::vector<std::pair<int, int>> arcs;
  for (int i = 1; i <= n; ++i) {
    arcs.emplace_back(var_clause(i), pos_lit(i));
    arcs.emplace_back(var_clause(i), neg_lit(i));
    arcs.emplace_back(0, var_clause(i));
  }
  for (int j = 1; j <= m; ++j) {
    arcs.emplace_back(0, clause(j));
    for (int lit : in.clauses[j - 1])
      arcs.emplace_back(clause(j), lit > 0 ? pos_lit(lit) : neg_lit(-lit));
  }

  std::ostringstream clauses_line;
  for (int j = 0; j < m; ++j) {
    if (j > 0) clauses_line << " | ";
    clauses_line << in.clauses[j][0] << " " << in.clauses[j][1] << " "
                 << in.clauses[j][2];
  }

  int species = 1 + 3 * n + m;
  return make_instance(
      std::move(tree).build(),
      FoodWeb::create(species, std::move(arcs), {0}), 2 * n + m + 1, true,
      {"source: sat", "vars: " + std::to_string(n),
       "clauses: " + clauses_line.str()});
}

std::int64_t solve_maxcov_exact(const CoverageInput& in) {
  validate_coverage(in);
  int m = static_cast<int>(in.sets.size());
  if (m > 12) throw CapExceeded("max coverage oracle capped at 12 sets");
  if (in.k > m)
    throw ValidationError("coverage k exceeds the number of sets");

  std::int64_t best = 0;
  std::vector<int> combo(in.k);
  auto weight_of = [&](const std::vector<int>& chosen) {
    std::vector<char> covered(in.n + 1, 0);
    std::int64_t total = 0;
    for (int i : chosen) {
      for (int e : in.sets[i]) {
        if (!covered[e]) {
          covered[e] = 1;
          total += in.weights[e - 1];
        }
      }
    }
    return total;
  };
  // all k-subsets of the collection
  auto rec = [&](auto&& self, int start, int picked) -> void {
    if (picked == static_cast<int>(in.k)) {
      best = std::max(best, weight_of(combo));
      return;
    }
    for (int i = start; i <= m - (static_cast<int>(in.k) - picked); ++i) {
      combo[picked] = i;
      self(self, i + 1, picked + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

std::int64_t solve_vc_exact(const VertexCoverInput& in) {
  int nv = static_cast<int>(in.vertices.size());
  if (nv > 10) throw CapExceeded("vertex cover oracle capped at 10 vertices");
  if (in.k > nv) throw ValidationError("vertex cover k exceeds |V|");

  std::int64_t best = 0;
  std::vector<int> combo(in.k);
  auto covered_by = [&](const std::vector<int>& chosen) {
    std::int64_t count = 0;
    for (auto [u, v] : in.edges) {
      for (int c : chosen) {
        if (c == u || c == v) {
          ++count;
          break;
        }
      }
    }
    return count;
  };
  auto rec = [&](auto&& self, int start, int picked) -> void {
    if (picked == static_cast<int>(in.k)) {
      best = std::max(best, covered_by(combo));
      return;
    }
    for (int v = start; v <= nv - (static_cast<int>(in.k) - picked); ++v) {
      combo[picked] = v;
      self(self, v + 1, picked + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

bool solve_sat_exact(const CnfInput& in) {
  validate_cnf(in);
  if (in.variables > 12) throw CapExceeded("SAT oracle capped at 12 variables");
  std::uint32_t assignments = 1u << in.variables;
  for (std::uint32_t a = 0; a < assignments; ++a) {
    bool all = true;
    for (const auto& clause : in.clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool value = (a >> (std::abs(lit) - 1)) & 1u;
        if ((lit > 0) == value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace viaphy
