#include "viaphy/instance.hpp"

#include <algorithm>
#include <sstream>

#include "viaphy/error.hpp"

namespace viaphy {

Instance make_instance(PhyloTree tree, FoodWeb web, std::int64_t budget,
                       bool generalized, std::vector<std::string> provenance) {
  if (web.size() != tree.species_count())
    throw ValidationError("food web and tree disagree on the species universe");
  if (budget < 0) throw ValidationError("budget must be non-negative");
  if (!generalized && web.has_and_nodes())
    throw ValidationError("AND tag on a standard (non-generalized) instance");
  Instance inst;
  inst.tree = std::move(tree);
  inst.web = std::move(web);
  inst.budget = budget;
  inst.generalized = generalized;
  inst.provenance = std::move(provenance);
  return inst;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

struct SectionReader {
  std::vector<std::string> lines;
  std::vector<int> numbers;
  std::size_t pos = 0;
  std::vector<std::string> provenance;

  explicit SectionReader(const std::string& text) {
    std::istringstream stream(text);
    std::string raw;
    int lineno = 0;
    bool leading = true;
    while (std::getline(stream, raw)) {
      ++lineno;
      std::string line = strip(raw);
      if (line.starts_with("#")) {
        if (leading) {
          std::string comment = strip(line.substr(1));
          provenance.push_back(comment);
        }
        continue;
      }
      if (line.empty()) continue;
      leading = false;
      lines.push_back(line);
      numbers.push_back(lineno);
    }
  }

  bool at_header(const std::string& name) const {
    return pos < lines.size() && lines[pos] == "[" + name + "]";
  }

  void expect_header(const std::string& name) {
    if (!at_header(name)) {
      int lineno = pos < lines.size() ? numbers[pos] : 0;
      throw ParseError("missing [" + name + "] section", lineno, 1);
    }
    ++pos;
  }

  // All lines up to the next section header.
  std::string body() {
    std::string out;
    while (pos < lines.size() && !lines[pos].starts_with("[")) {
      out += lines[pos];
      out += '\n';
      ++pos;
    }
    return out;
  }
};

}  // namespace

Instance parse_instance(const std::string& text) {
  SectionReader reader(text);

  reader.expect_header("tree");
  std::string tree_text = reader.body();
  if (tree_text.empty()) throw ParseError("empty [tree] section");
  PhyloTree tree = parse_tree(tree_text);

  reader.expect_header("web");
  std::string web_text = reader.body();

  reader.expect_header("budget");
  std::string budget_text = strip(reader.body());
  std::int64_t budget = 0;
  try {
    std::size_t used = 0;
    budget = std::stoll(budget_text, &used);
    if (used != budget_text.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError("[budget] must be a single integer");
  }
  if (budget < 1) throw ParseError("[budget] must be a positive integer");

  bool generalized = false;
  if (reader.at_header("generalized")) {
    ++reader.pos;
    generalized = true;
  }
  if (reader.pos != reader.lines.size())
    throw ParseError("unexpected content after the last section",
                     reader.numbers[reader.pos], 1);

  auto resolve = [&](std::string_view name) {
    auto index = tree.species_index(name);
    return index ? *index : -1;
  };
  FoodWeb web = parse_web(web_text, tree.species_count(), resolve, generalized);

  return make_instance(std::move(tree), std::move(web), budget, generalized,
                       std::move(reader.provenance));
}

std::string serialize_instance(const Instance& inst) {
  std::string out;
  for (const std::string& line : inst.provenance) {
    out += "# " + line + "\n";
  }
  out += "[tree]\n";
  out += inst.tree.to_newick();
  out += "\n[web]\n";

  const auto& names = inst.species_names();
  std::vector<std::pair<std::string, std::string>> arcs;
  arcs.reserve(inst.web.arcs().size());
  for (auto [from, to] : inst.web.arcs()) arcs.emplace_back(names[from], names[to]);
  std::sort(arcs.begin(), arcs.end());
  for (const auto& [from, to] : arcs) out += from + " " + to + "\n";

  std::vector<std::string> and_names;
  for (int s = 0; s < inst.web.size(); ++s) {
    if (inst.web.mode(s) == ViabilityMode::kAnd) and_names.push_back(names[s]);
  }
  std::sort(and_names.begin(), and_names.end());
  for (const std::string& name : and_names) out += "AND " + name + "\n";

  out += "[budget]\n" + std::to_string(inst.budget) + "\n";
  if (inst.generalized) out += "[generalized]\n";
  return out;
}

}  // namespace viaphy
