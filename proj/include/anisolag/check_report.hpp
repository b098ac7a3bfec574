#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anisolag {

/// Where a property check failed (or came closest to failing).
struct Witness {
  std::vector<double> x;
  std::vector<double> arg;
  /// Second argument for pairwise checks (convexity).
  std::vector<double> arg2;
  double value = 0.0;
  double reference = 0.0;
};

/// Outcome of a sampling or algebraic property check.
struct CheckReport {
  std::string check;
  bool pass = true;
  double max_residual = 0.0;
  std::optional<Witness> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Named sub-residuals, e.g. one per Penrose identity.
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> warnings;
};

nlohmann::ordered_json to_json(const CheckReport& report);
nlohmann::ordered_json to_json(const Witness& witness);

}  // namespace anisolag
