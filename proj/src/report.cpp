#include "viaphy/report.hpp"

#include <cmath>

#include "viaphy/viability.hpp"

namespace viaphy {

std::optional<double> approximation_floor(Algorithm algorithm, int p, int d) {
  switch (algorithm) {
    case Algorithm::kGreedyP:
      return (1.0 - std::exp(-static_cast<double>(p) / (p + d - 1))) / 2.0;
    case Algorithm::kEnumP:
      return 1.0 - std::exp(-static_cast<double>(p) / (p + d - 1));
    case Algorithm::kExact:
      return 1.0;
    case Algorithm::kFaller:
      return std::nullopt;  // can be arbitrarily bad
  }
  return std::nullopt;
}

std::string format_species(const Instance& inst, const SpeciesSet& s) {
  std::string out;
  for (int member : s) {
    if (!out.empty()) out += ',';
    out += inst.species_names()[member];
  }
  return out;
}

nlohmann::json report_json(const Instance& inst, const SolveReport& report,
                           const std::optional<VerifyExtras>& extras,
                           bool include_timing) {
  nlohmann::json j;
  j["algorithm"] = report.algorithm;
  j["p"] = report.p;
  j["k"] = inst.budget;
  j["d"] = inst.budget >= 1 ? truncated_depth(inst.web, inst.budget).d : 0;
  j["n"] = inst.species_count();
  j["value"] = report.value;
  nlohmann::json set = nlohmann::json::array();
  for (int member : report.chosen) set.push_back(inst.species_names()[member]);
  j["set"] = std::move(set);
  j["viable"] = report.viable;
  if (extras) {
    j["optimum"] = extras->optimum;
    j["ratio"] = extras->ratio;
    if (extras->floor)
      j["floor"] = *extras->floor;
    else
      j["floor"] = nullptr;
  }
  j["elapsed_ms"] =
      include_timing ? static_cast<std::int64_t>(report.elapsed.count() / 1000)
                     : 0;
  return j;
}

}  // namespace viaphy
