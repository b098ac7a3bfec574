#include "anisolag/config.hpp"

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "anisolag/error.hpp"

namespace anisolag {

namespace {

nlohmann::json toml_to_json(const toml::node& node) {
  if (const auto* table = node.as_table()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, value] : *table) out[std::string(key.str())] = toml_to_json(value);
    return out;
  }
  if (const auto* array = node.as_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& value : *array) out.push_back(toml_to_json(value));
    return out;
  }
  if (const auto* s = node.as_string()) return s->get();
  if (const auto* i = node.as_integer()) return i->get();
  if (const auto* f = node.as_floating_point()) return f->get();
  if (const auto* b = node.as_boolean()) return b->get();
  throw ParseError("unsupported TOML value type (dates and times are not accepted)");
}

std::string where(std::string_view block, std::string_view key) {
  return block.empty() ? std::string(key) : std::string(block) + "." + std::string(key);
}

double as_number(const nlohmann::json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  return j.get<double>();
}

std::vector<double> as_numbers(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, what));
  return out;
}

std::string as_string(const nlohmann::json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw ParseError(what + " must be an expression string");
}

Expr parse_expr(const nlohmann::json& j, const std::string& what) {
  try {
    return Expr::parse(as_string(j, what));
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::vector<std::vector<Expr>> parse_expr_rows(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of rows");
  std::vector<std::vector<Expr>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(what + " rows must be arrays");
    std::vector<Expr> r;
    for (const auto& e : row) r.push_back(parse_expr(e, what));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

nlohmann::json load_config_text(std::string_view text, bool toml) {
  if (toml) {
    try {
      const toml::table table = toml::parse(text);
      return toml_to_json(table);
    } catch (const toml::parse_error& e) {
      std::ostringstream os;
      os << "TOML parse error at line " << e.source().begin.line << ", column " << e.source().begin.column << ": "
         << e.description();
      throw ParseError(os.str());
    }
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config_text(buffer.str(), path.extension() == ".toml");
}

Box parse_box(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("box must be a non-empty array of [lo, hi] pairs");
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& axis : j) {
    const auto pair = as_numbers(axis, "box axis");
    if (pair.size() != 2) throw ParseError("box axis must be a [lo, hi] pair");
    lo.push_back(pair[0]);
    hi.push_back(pair[1]);
  }
  return Box(std::move(lo), std::move(hi));
}

Anisotropy parse_anisotropy(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("anisotropy block must be a table");
  if (j.contains("name")) {
    CatalogParams params;
    if (j.contains("n")) params.n = static_cast<int>(as_number(j["n"], "anisotropy.n"));
    if (j.contains("box")) params.box = parse_box(j["box"]);
    if (j.contains("frame")) params.frame = parse_expr_rows(j["frame"], "anisotropy.frame");
    return builtin(as_string(j["name"], "anisotropy.name"), params);
  }
  if (!j.contains("coeffs") || !j.contains("box"))
    throw ParseError("custom anisotropy needs 'box' and 'coeffs' (or a builtin 'name')");
  Box box = parse_box(j["box"]);
  auto rows = parse_expr_rows(j["coeffs"], "anisotropy.coeffs");
  if (j.contains("n") && static_cast<int>(as_number(j["n"], "anisotropy.n")) != box.dim())
    throw DimensionError("anisotropy.n does not match the box dimension");
  if (j.contains("m") && static_cast<std::size_t>(as_number(j["m"], "anisotropy.m")) != rows.size())
    throw DimensionError("anisotropy.m does not match the number of coefficient rows");
  const std::string name = j.contains("label") ? as_string(j["label"], "anisotropy.label") : "custom";
  return Anisotropy(std::move(rows), std::move(box), name);
}

Eigen::MatrixXd parse_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = as_numbers(j[static_cast<std::size_t>(r)], "matrix row");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      if (cols == 0) throw ParseError("matrix rows must be non-empty");
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows have different lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = row[static_cast<std::size_t>(c)];
  }
  return out;
}

Eigen::MatrixXd parse_matrix_text(std::string_view text) { return parse_matrix(load_config_text(text, false)); }

RunConfig::RunConfig(nlohmann::json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) throw ParseError("config root must be a table");
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) { return RunConfig(load_config_file(path)); }

bool RunConfig::has(std::string_view key) const { return doc_.contains(std::string(key)); }

const nlohmann::json* RunConfig::block(std::string_view name) const {
  if (name.empty()) return &doc_;
  const auto it = doc_.find(std::string(name));
  if (it == doc_.end()) return nullptr;
  if (!it->is_object()) throw ParseError(std::string(name) + " must be a table");
  return &*it;
}

std::uint64_t RunConfig::seed() const {
  if (!has("seed")) return 0;
  const auto& s = doc_["seed"];
  if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0))
    throw ParseError("seed must be a non-negative integer");
  return s.get<std::uint64_t>();
}

Anisotropy RunConfig::anisotropy() const {
  const auto* b = block("anisotropy");
  if (b == nullptr) throw ParseError("config has no 'anisotropy' block");
  return parse_anisotropy(*b);
}

Lagrangian RunConfig::lagrangian(const Anisotropy& a, std::string_view key) const {
  const auto* b = block(key);
  if (b == nullptr) throw ParseError("config has no '" + std::string(key) + "' block");
  if (!b->contains("kind") || !b->contains("expr"))
    throw ParseError(std::string(key) + " needs 'kind' and 'expr'");
  LagrangianKind kind;
  try {
    kind = parse_kind(as_string((*b)["kind"], where(key, "kind")));
  } catch (const InvalidArgument& e) {
    throw ParseError(where(key, "kind") + ": " + e.what());
  }
  const int arg_dim = kind == LagrangianKind::euclidean ? a.n() : a.m();
  return Lagrangian::from_expr(kind, parse_expr((*b)["expr"], where(key, "expr")), arg_dim, a.n());
}

Grid RunConfig::grid(const Anisotropy& a, std::optional<int> resolution_override) const {
  const auto* b = block("grid");
  Box box = a.domain();
  std::vector<int> resolution(static_cast<std::size_t>(a.n()), 16);
  if (b != nullptr) {
    if (b->contains("box")) box = parse_box((*b)["box"]);
    if (b->contains("resolution")) {
      const auto& r = (*b)["resolution"];
      if (r.is_array()) {
        resolution.clear();
        for (const auto& v : r) resolution.push_back(static_cast<int>(as_number(v, "grid.resolution")));
      } else {
        resolution.assign(static_cast<std::size_t>(box.dim()), static_cast<int>(as_number(r, "grid.resolution")));
      }
    }
  }
  if (resolution_override) resolution.assign(static_cast<std::size_t>(box.dim()), *resolution_override);
  if (box.dim() != a.n()) throw DimensionError("grid box dimension does not match the anisotropy");
  if (!a.domain().contains(box)) throw DomainError("grid box is not contained in the anisotropy domain");
  return Grid(std::move(box), std::move(resolution));
}

Expr RunConfig::expr(std::string_view key) const {
  if (!has(key)) throw ParseError("config has no '" + std::string(key) + "' expression");
  return parse_expr(doc_[std::string(key)], std::string(key));
}

std::vector<Expr> RunConfig::expr_list(std::string_view key) const {
  if (!has(key)) throw ParseError("config has no '" + std::string(key) + "' list");
  const auto& j = doc_[std::string(key)];
  if (!j.is_array()) throw ParseError(std::string(key) + " must be an array of expressions");
  std::vector<Expr> out;
  for (const auto& e : j) out.push_back(parse_expr(e, std::string(key)));
  return out;
}

std::optional<Box> RunConfig::box(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return parse_box(doc_[std::string(key)]);
}

double RunConfig::number(std::string_view block_name, std::string_view key, double fallback) const {
  const auto* b = block(block_name);
  if (b == nullptr || !b->contains(std::string(key))) return fallback;
  return as_number((*b)[std::string(key)], where(block_name, key));
}

int RunConfig::integer(std::string_view block_name, std::string_view key, int fallback) const {
  const double v = number(block_name, key, fallback);
  if (v != static_cast<double>(static_cast<int>(v))) throw ParseError(where(block_name, key) + " must be an integer");
  return static_cast<int>(v);
}

Eigen::VectorXd RunConfig::vector(std::string_view block_name, std::string_view key) const {
  const auto* b = block(block_name);
  if (b == nullptr || !b->contains(std::string(key))) throw ParseError("config has no '" + where(block_name, key) + "'");
  const auto values = as_numbers((*b)[std::string(key)], where(block_name, key));
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

SamplingOptions RunConfig::sampling() const {
  SamplingOptions o;
  o.seed = seed();
  o.x_samples = static_cast<std::size_t>(integer("check", "x_samples", static_cast<int>(o.x_samples)));
  o.arg_samples = static_cast<std::size_t>(integer("check", "arg_samples", static_cast<int>(o.arg_samples)));
  o.radius = number("check", "radius", o.radius);
  if (const auto* b = block("check"); b != nullptr && b->contains("lattice_probes")) {
    if (!(*b)["lattice_probes"].is_boolean()) throw ParseError("check.lattice_probes must be a boolean");
    o.lattice_probes = (*b)["lattice_probes"].get<bool>();
  }
  return o;
}

double RunConfig::tolerance(double fallback) const { return number("check", "tol", fallback); }

GrowthBound RunConfig::growth() const {
  GrowthBound g;
  if (const auto* b = block("growth"); b != nullptr) {
    if (b->contains("a")) g.a = parse_expr((*b)["a"], "growth.a");
    g.b = number("growth", "b", g.b);
    g.p = number("growth", "p", g.p);
  }
  return g;
}

}  // namespace anisolag
