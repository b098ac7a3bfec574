#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "anisolag/anisotropy.hpp"
#include "anisolag/grid.hpp"
#include "anisolag/lagrangian.hpp"
#include "anisolag/property_checks.hpp"

namespace anisolag {

/// Parses a config document. TOML is chosen for `.toml` files, JSON otherwise.
/// Throws ParseError with the parser's diagnostic.
nlohmann::json load_config_text(std::string_view text, bool toml);
nlohmann::json load_config_file(const std::filesystem::path& path);

/// A loaded run configuration. Blocks are validated lazily, when a subcommand
/// asks for them, so a config only needs the blocks its command uses.
///
///   seed = 0
///   [anisotropy]  name = "heisenberg"            (builtin, optional n / box / frame)
///                 n = 2, m = 1, box = [[0,1],[0,1]], coeffs = [["1","0"]]   (custom)
///   [lagrangian]  kind = "anisotropic", expr = "q1^2 + q2^2"
///   [lagrangian2] second integrand for equivalence checks
///   [grid]        box = [[0,1],...], resolution = 32
///   u = "x3", region = [[...]], basis = ["x1", "x2", "1"], p = 2
///   [check]       tol, x_samples, arg_samples, radius, lattice_probes
///   [growth]      a = "0", b = 1, p = 2
///   [ccdist]      from = [...], to = [...], radius = 3, tau_span = 1e-6
///   [zigzag]      xi1 = [...], xi2 = [...], t = 0.3, h = 10, box = [[...]], samples = 10000
class RunConfig {
 public:
  RunConfig() = default;
  explicit RunConfig(nlohmann::json doc);
  static RunConfig from_file(const std::filesystem::path& path);

  const nlohmann::json& document() const { return doc_; }
  bool has(std::string_view key) const;
  std::uint64_t seed() const;

  Anisotropy anisotropy() const;
  Lagrangian lagrangian(const Anisotropy& a, std::string_view key = "lagrangian") const;
  /// Grid over the `grid` block; the box defaults to the anisotropy domain.
  Grid grid(const Anisotropy& a, std::optional<int> resolution_override = std::nullopt) const;
  Expr expr(std::string_view key) const;
  std::vector<Expr> expr_list(std::string_view key) const;
  std::optional<Box> box(std::string_view key) const;
  SamplingOptions sampling() const;
  double tolerance(double fallback) const;
  GrowthBound growth() const;

  double number(std::string_view block, std::string_view key, double fallback) const;
  int integer(std::string_view block, std::string_view key, int fallback) const;
  Eigen::VectorXd vector(std::string_view block, std::string_view key) const;

 private:
  const nlohmann::json* block(std::string_view name) const;
  nlohmann::json doc_ = nlohmann::json::object();
};

Box parse_box(const nlohmann::json& j);
Anisotropy parse_anisotropy(const nlohmann::json& j);
/// Row-major nested arrays, e.g. [[1,0],[1,0]].
Eigen::MatrixXd parse_matrix(const nlohmann::json& j);
Eigen::MatrixXd parse_matrix_text(std::string_view text);

}  // namespace anisolag
