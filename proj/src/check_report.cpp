#include "anisolag/check_report.hpp"

#include <cmath>

namespace anisolag {

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::ordered_json to_json(const Witness& witness) {
  nlohmann::ordered_json j;
  j["x"] = witness.x;
  j["arg"] = witness.arg;
  if (!witness.arg2.empty()) j["arg2"] = witness.arg2;
  j["value"] = number(witness.value);
  j["reference"] = number(witness.reference);
  return j;
}

nlohmann::ordered_json to_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["check"] = report.check;
  j["pass"] = report.pass;
  j["max_residual"] = number(report.max_residual);
  j["witness"] = report.witness ? to_json(*report.witness) : nlohmann::ordered_json(nullptr);
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  if (!report.residuals.empty()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.residuals) r[name] = number(value);
    j["residuals"] = r;
  }
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  return j;
}

}  // namespace anisolag
