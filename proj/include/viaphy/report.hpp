#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "viaphy/instance.hpp"
#include "viaphy/solvers.hpp"

namespace viaphy {

// Extra fields emitted by the verify subcommand. floor is absent for
// algorithms without a guarantee (faller).
struct VerifyExtras {
  std::int64_t optimum = 0;
  double ratio = 0.0;
  std::optional<double> floor;
};

// Theoretical approximation floor for an algorithm at parameters (p, d), or
// nullopt when none applies.
std::optional<double> approximation_floor(Algorithm algorithm, int p, int d);

// Stable machine-readable report: {algorithm, p, k, d, n, value, set,
// viable, optimum?, ratio?, floor?, elapsed_ms}. With include_timing off,
// elapsed_ms is fixed to 0 so reports are byte-identical across runs.
nlohmann::json report_json(const Instance& inst, const SolveReport& report,
                           const std::optional<VerifyExtras>& extras = {},
                           bool include_timing = true);

std::string format_species(const Instance& inst, const SpeciesSet& s);

}  // namespace viaphy
