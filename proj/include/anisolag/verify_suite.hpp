#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace anisolag {

/// One entry of the verification battery.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  nlohmann::ordered_json details;
  /// Wall time in seconds; kept out of the JSON so reports stay byte-stable.
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Shortest-path value for the split-plane detour at N = 200, r = 3, computed
  /// by an independent Dijkstra implementation.
  double split_plane_baseline = 3.52613289122856;
};

CriterionResult verify_worked_example(const SuiteOptions& options);
CriterionResult verify_penrose_corpus(const SuiteOptions& options);
CriterionResult verify_representation_identity(const SuiteOptions& options);
CriterionResult verify_lift_preservation(const SuiteOptions& options);
CriterionResult verify_zigzag(const SuiteOptions& options);
CriterionResult verify_energy(const SuiteOptions& options);
CriterionResult verify_affine_gap(const SuiteOptions& options);
CriterionResult verify_cc_distance(const SuiteOptions& options);

/// Runs criteria 1 to 8 in order.
std::vector<CriterionResult> run_verify_suite(const SuiteOptions& options);

/// {"schema", "seed", "all_pass", "criteria": [...]} without timings.
nlohmann::ordered_json suite_json(const std::vector<CriterionResult>& results, const SuiteOptions& options);

}  // namespace anisolag
