#include "anisolag/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "anisolag/anisotropy.hpp"
#include "anisolag/cc_distance.hpp"
#include "anisolag/config.hpp"
#include "anisolag/error.hpp"
#include "anisolag/grid.hpp"
#include "anisolag/lagrangian.hpp"
#include "anisolag/property_checks.hpp"
#include "anisolag/pseudoinverse.hpp"
#include "anisolag/random.hpp"
#include "anisolag/verify_suite.hpp"
#include "anisolag/zigzag.hpp"

namespace anisolag::cli {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::optional<int> resolution;
  bool csv = false;
  std::string out;
  std::string matrix;
  std::string property;
};

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json box_json(const Box& b) {
  json axes = json::array();
  for (int k = 0; k < b.dim(); ++k) axes.push_back({b.lo[static_cast<std::size_t>(k)], b.hi[static_cast<std::size_t>(k)]});
  return axes;
}

json anisotropy_json(const Anisotropy& a) {
  json coeffs = json::array();
  for (int j = 0; j < a.m(); ++j) {
    json row = json::array();
    for (int i = 0; i < a.n(); ++i) row.push_back(a.coeff(j, i).str());
    coeffs.push_back(std::move(row));
  }
  return {{"name", a.name()}, {"n", a.n()}, {"m", a.m()}, {"box", box_json(a.domain())}, {"coeffs", coeffs}};
}

json header(const std::string& command) { return {{"schema", "anisolag/1"}, {"command", command}}; }

/// Everything a subcommand produces: a JSON report, an optional CSV table and
/// the exit code.
struct Outcome {
  json report;
  std::string csv;
  int code = kOk;
};

RunConfig load(const Flags& flags) {
  if (flags.config.empty()) return RunConfig();
  return RunConfig::from_file(flags.config);
}

std::uint64_t seed_of(const Flags& flags, const RunConfig& cfg) { return flags.seed ? *flags.seed : cfg.seed(); }

Outcome cmd_catalog() {
  Outcome o;
  o.report = header("catalog");
  json list = json::array();
  for (const auto& name : builtin_names()) list.push_back(anisotropy_json(builtin(name)));
  o.report["anisotropies"] = list;
  std::ostringstream csv;
  csv << "name,n,m\n";
  for (const auto& name : builtin_names()) {
    const Anisotropy a = builtin(name);
    csv << name << ',' << a.n() << ',' << a.m() << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome cmd_pinv(const Flags& flags) {
  Eigen::MatrixXd C;
  const RunConfig cfg = load(flags);
  if (!flags.matrix.empty()) {
    C = parse_matrix_text(flags.matrix);
  } else if (cfg.has("matrix")) {
    C = parse_matrix(cfg.document()["matrix"]);
  } else if (cfg.has("anisotropy")) {
    const Anisotropy a = cfg.anisotropy();
    const Eigen::VectorXd x = cfg.has("point") ? cfg.vector("", "point") : a.domain().center();
    C = a.coefficient_matrix(x);
  } else {
    throw InvalidArgument("pinv needs --matrix, a 'matrix' entry or an anisotropy block");
  }
  const PointLinearData pl = pinv(C, flags.tol);
  const CheckReport pen = verify_penrose(C, pl.C_P, 1e-12 * std::max(1.0, max_abs(C) * max_abs(pl.C_P)));
  Outcome o;
  o.report = header("pinv");
  o.report["C"] = matrix_json(pl.C);
  o.report["C_P"] = matrix_json(pl.C_P);
  o.report["Pi"] = matrix_json(pl.Pi);
  o.report["Q_perp"] = matrix_json(pl.Q_perp);
  o.report["singular_values"] = vector_json(pl.singular_values);
  o.report["rank"] = pl.rank;
  o.report["rank_tol"] = pl.tol;
  o.report["near_rank_transition"] = pl.near_rank_transition;
  json residuals = json::object();
  for (const auto& [name, value] : pen.residuals) residuals[name] = value;
  o.report["penrose_residuals"] = residuals;
  std::ostringstream csv;
  csv << std::setprecision(17) << "row,col,value\n";
  for (Eigen::Index r = 0; r < pl.C_P.rows(); ++r)
    for (Eigen::Index c = 0; c < pl.C_P.cols(); ++c) csv << r << ',' << c << ',' << pl.C_P(r, c) << '\n';
  o.csv = csv.str();
  return o;
}

Outcome cmd_compose(const Flags& flags, bool lifting) {
  const RunConfig cfg = load(flags);
  const Anisotropy a = cfg.anisotropy();
  const Lagrangian source = cfg.lagrangian(a);
  const Lagrangian result = lifting ? lift(source, a) : pushforward(source, a);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> points;
  if (cfg.has("evaluate")) {
    const auto& list = cfg.document()["evaluate"];
    if (!list.is_array()) throw ParseError("evaluate must be an array of {x, arg} tables");
    for (const auto& item : list) {
      const RunConfig sub(nlohmann::json{{"p", item}});
      points.emplace_back(sub.vector("p", "x"), sub.vector("p", "arg"));
    }
  } else {
    for (auto& arg : lattice_probes(result.arg_dim())) points.emplace_back(a.domain().center(), std::move(arg));
  }
  Outcome o;
  o.report = header(lifting ? "lift" : "push");
  o.report["anisotropy"] = a.name();
  o.report["source"] = {{"kind", to_string(source.kind())}, {"expr", source.describe()}};
  o.report["result"] = {{"kind", to_string(result.kind())}, {"arg_dim", result.arg_dim()}, {"expr", result.describe()}};
  json values = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "x,arg,value\n";
  for (const auto& [x, arg] : points) {
    const LagrangianValue v = eval_lagrangian(result, x, arg);
    values.push_back({{"x", vector_json(x)}, {"arg", vector_json(arg)}, {"value", v.value}});
    const auto join = [](const Eigen::VectorXd& v) {
      std::ostringstream s;
      s << std::setprecision(17);
      for (Eigen::Index k = 0; k < v.size(); ++k) s << (k ? " " : "") << v[k];
      return s.str();
    };
    csv << join(x) << ',' << join(arg) << ',' << v.value << '\n';
  }
  o.report["values"] = values;
  o.csv = csv.str();
  return o;
}

Outcome cmd_check(const Flags& flags) {
  const RunConfig cfg = load(flags);
  const Anisotropy a = cfg.anisotropy();
  const Lagrangian f = cfg.lagrangian(a);
  SamplingOptions opts = cfg.sampling();
  if (flags.seed) opts.seed = *flags.seed;
  if (flags.samples) opts.arg_samples = *flags.samples;
  CheckReport report;
  const std::string& p = flags.property;
  if (p == "kernel-constancy") {
    report = check_kernel_constancy(f, a, flags.tol.value_or(cfg.tolerance(1e-8)), opts);
  } else if (p == "convexity") {
    report = check_convexity(f, a.domain(), flags.tol.value_or(cfg.tolerance(1e-9)), opts);
  } else if (p == "growth-bound") {
    report = check_growth_bound(f, a, cfg.growth(), opts);
  } else if (p == "equivalence") {
    report = equivalent_on_image(f, cfg.lagrangian(a, "lagrangian2"), a, flags.tol.value_or(cfg.tolerance(1e-10)), opts);
  } else if (p == "nonnegative") {
    report = check_nonnegative(f, a.domain(), opts);
  } else {
    throw InvalidArgument("unknown property '" + p + "'");
  }
  Outcome o;
  o.report = header("check");
  o.report["property"] = p;
  o.report["anisotropy"] = a.name();
  o.report["lagrangian"] = {{"kind", to_string(f.kind())}, {"expr", f.describe()}};
  const json body = to_json(report);
  for (const auto& [key, value] : body.items()) o.report[key] = value;
  o.code = report.pass ? kOk : kCheckFailed;
  std::ostringstream csv;
  csv << std::setprecision(17) << "check,pass,max_residual,samples,seed\n"
      << report.check << ',' << (report.pass ? "true" : "false") << ',' << report.max_residual << ',' << report.samples
      << ',' << report.seed << '\n';
  o.csv = csv.str();
  return o;
}

std::string grid_csv(const GridFunction& g) {
  std::ostringstream s;
  write_csv(s, g);
  return s.str();
}

Outcome cmd_energy(const Flags& flags) {
  const RunConfig cfg = load(flags);
  const Anisotropy a = cfg.anisotropy();
  const Lagrangian f = cfg.lagrangian(a);
  const Grid grid = cfg.grid(a, flags.resolution);
  const GridFunction u = GridFunction::sample(grid, cfg.expr("u"));
  const Box region = cfg.box("region").value_or(grid.box());
  const bool anisotropic = f.kind() == LagrangianKind::anisotropic;
  const double value = anisotropic ? functional_eval(f, u, a, region) : euclidean_functional_eval(f, u, region);
  Outcome o;
  o.report = header("energy");
  o.report["anisotropy"] = a.name();
  o.report["lagrangian"] = {{"kind", to_string(f.kind())}, {"expr", f.describe()}};
  o.report["u"] = cfg.expr("u").str();
  o.report["grid"] = metadata_json(grid);
  o.report["region"] = box_json(region);
  o.report["value"] = value;
  if (flags.csv) o.csv = grid_csv(anisotropic ? x_gradient(u, a) : euclidean_gradient(u));
  return o;
}

Outcome cmd_norm(const Flags& flags) {
  const RunConfig cfg = load(flags);
  const Anisotropy a = cfg.anisotropy();
  const Grid grid = cfg.grid(a, flags.resolution);
  const GridFunction u = GridFunction::sample(grid, cfg.expr("u"));
  const double p = cfg.number("", "p", 2.0);
  Outcome o;
  o.report = header("norm");
  o.report["anisotropy"] = a.name();
  o.report["u"] = cfg.expr("u").str();
  o.report["p"] = p;
  o.report["grid"] = metadata_json(grid);
  o.report["value"] = sobolev_norm(u, a, p);
  if (flags.csv) o.csv = grid_csv(x_gradient(u, a));
  return o;
}

Outcome cmd_fit(const Flags& flags) {
  const RunConfig cfg = load(flags);
  Box box = cfg.box("box").value_or(Box::cube(3, 0.0, 1.0));
  int resolution = 16;
  if (cfg.has("anisotropy")) box = cfg.anisotropy().domain();
  if (cfg.has("grid")) {
    const auto& g = cfg.document()["grid"];
    if (g.contains("box")) box = parse_box(g["box"]);
    resolution = cfg.integer("grid", "resolution", resolution);
  }
  if (flags.resolution) resolution = *flags.resolution;
  const Grid grid = Grid::uniform(box, resolution);
  const GridFunction u = GridFunction::sample(grid, cfg.expr("u"));
  const auto basis = cfg.expr_list("basis");
  const AffineFit fit = best_affine_fit(u, basis, cfg.number("", "p", 2.0));
  Outcome o;
  o.report = header("fit");
  o.report["u"] = cfg.expr("u").str();
  json names = json::array();
  for (const auto& e : basis) names.push_back(e.str());
  o.report["basis"] = names;
  o.report["grid"] = metadata_json(grid);
  o.report["coeffs"] = vector_json(fit.coeffs);
  o.report["residual"] = fit.residual;
  o.report["rank"] = fit.rank;
  o.report["deficiency"] = fit.deficiency;
  std::ostringstream csv;
  csv << std::setprecision(17) << "basis,coeff\n";
  for (std::size_t k = 0; k < basis.size(); ++k) csv << basis[k].str() << ',' << fit.coeffs[static_cast<Eigen::Index>(k)] << '\n';
  o.csv = csv.str();
  return o;
}

Outcome cmd_ccdist(const Flags& flags) {
  const RunConfig cfg = load(flags);
  const Anisotropy a = cfg.anisotropy();
  const Grid grid = cfg.grid(a, flags.resolution);
  const int radius = cfg.integer("ccdist", "radius", 1);
  const double tau = cfg.number("ccdist", "tau_span", 1e-6);
  const Eigen::VectorXd from = cfg.vector("ccdist", "from");
  const Eigen::VectorXd to = cfg.vector("ccdist", "to");
  for (const auto* p : {&from, &to})
    if (!grid.box().contains(*p)) throw DomainError("query point lies outside the grid box");
  const HorizontalGraph g = build_graph(a, grid, radius, tau);
  const DistanceResult r = cc_distance(g, from, to);
  Outcome o;
  o.report = header("ccdist");
  o.report["anisotropy"] = a.name();
  o.report["grid"] = metadata_json(grid);
  o.report["radius"] = radius;
  o.report["tau_span"] = tau;
  o.report["nodes"] = g.node_count();
  o.report["edges"] = g.edge_count();
  o.report["from"] = vector_json(from);
  o.report["to"] = vector_json(to);
  o.report["snapped_from"] = vector_json(r.snapped_from);
  o.report["snapped_to"] = vector_json(r.snapped_to);
  o.report["distance"] = r.finite ? json(r.distance) : json("infinite");
  o.report["nodes_expanded"] = r.nodes_expanded;
  if (flags.csv) {
    std::ostringstream s;
    g.write_edge_csv(s);
    o.csv = s.str();
  }
  return o;
}

Outcome cmd_zigzag(const Flags& flags) {
  const RunConfig cfg = load(flags);
  const Eigen::VectorXd xi1 = cfg.vector("zigzag", "xi1");
  const Eigen::VectorXd xi2 = cfg.vector("zigzag", "xi2");
  const double t = cfg.number("zigzag", "t", 0.5);
  const int h = cfg.integer("zigzag", "h", 10);
  Box box = Box::cube(static_cast<int>(xi1.size()), 0.0, 1.0);
  if (const auto* b = &cfg.document(); b->contains("zigzag") && (*b)["zigzag"].contains("box"))
    box = parse_box((*b)["zigzag"]["box"]);
  const std::size_t samples =
      flags.samples ? *flags.samples : static_cast<std::size_t>(cfg.integer("zigzag", "samples", 10000));
  const PiecewiseAffineFn u = zigzag_sequence(xi1, xi2, t, h, box);
  const Eigen::VectorXd mean = t * xi1 + (1.0 - t) * xi2;
  Rng rng(seed_of(flags, cfg));
  double sup = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Eigen::VectorXd y(box.dim());
    for (int k = 0; k < box.dim(); ++k)
      y[k] = rng.uniform(box.lo[static_cast<std::size_t>(k)], box.hi[static_cast<std::size_t>(k)]);
    sup = std::max(sup, std::fabs(u(y) - mean.dot(y)));
  }
  const double bound = zigzag_bound(xi1, xi2, t, h);
  Outcome o;
  o.report = header("zigzag");
  o.report["xi1"] = vector_json(xi1);
  o.report["xi2"] = vector_json(xi2);
  o.report["t"] = t;
  o.report["h"] = h;
  o.report["box"] = box_json(box);
  o.report["direction"] = vector_json(u.direction());
  o.report["pieces"] = u.pieces().size();
  o.report["samples"] = samples;
  o.report["sup_deviation"] = sup;
  o.report["bound"] = bound;
  o.report["bound_holds"] = sup <= bound + 1e-12;
  o.report["family1_fraction"] = u.family_fraction(1, box.dim() <= 2 ? 1000 : 100);
  std::ostringstream csv;
  csv << std::setprecision(17) << "lo,hi,family,offset\n";
  for (const auto& p : u.pieces()) csv << p.lo << ',' << p.hi << ',' << p.family << ',' << p.offset << '\n';
  o.csv = csv.str();
  o.code = sup <= bound + 1e-12 ? kOk : kCheckFailed;
  return o;
}

Outcome cmd_verify_suite(const Flags& flags, std::ostream& err) {
  SuiteOptions options;
  if (!flags.config.empty()) options.seed = load(flags).seed();
  if (flags.seed) options.seed = *flags.seed;
  const auto results = run_verify_suite(options);
  Outcome o;
  o.report = suite_json(results, options);
  err << "criterion  result  seconds  title\n";
  for (const auto& r : results) {
    err << std::setw(9) << r.id << "  " << (r.pass ? "PASS  " : "FAIL  ") << std::setw(7) << std::fixed
        << std::setprecision(2) << r.seconds << "  " << r.title << '\n';
  }
  err.unsetf(std::ios::floatfield);
  std::ostringstream csv;
  csv << "id,pass,title\n";
  for (const auto& r : results) csv << r.id << ',' << (r.pass ? "true" : "false") << ",\"" << r.title << "\"\n";
  o.csv = csv.str();
  o.code = o.report["all_pass"].get<bool>() ? kOk : kCheckFailed;
  return o;
}

void add_common(CLI::App* cmd, Flags& flags, bool with_config = true) {
  if (with_config) cmd->add_option("--config", flags.config, "JSON or TOML run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "base seed for sampling");
  cmd->add_option("--tol", flags.tol, "tolerance");
  cmd->add_option("--samples", flags.samples, "argument samples per point");
  cmd->add_option("--resolution", flags.resolution, "cells per axis")->check(CLI::PositiveNumber);
  cmd->add_flag("--csv", flags.csv, "tabular output instead of JSON");
  cmd->add_option("--out", flags.out, "write the report to this file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anisotropic variational calculus toolkit", "anisolag"};
  app.require_subcommand(1);
  Flags flags;

  auto* catalog = app.add_subcommand("catalog", "list the builtin anisotropies");
  auto* pinv_cmd = app.add_subcommand("pinv", "pseudo-inverse of a matrix or of C(x)");
  auto* lift_cmd = app.add_subcommand("lift", "lift a euclidean Lagrangian to the anisotropic side");
  auto* push_cmd = app.add_subcommand("push", "push an anisotropic Lagrangian to the euclidean side");
  auto* check_cmd = app.add_subcommand("check", "sampled property check");
  auto* energy_cmd = app.add_subcommand("energy", "integral functional by the midpoint rule");
  auto* norm_cmd = app.add_subcommand("norm", "anisotropic Sobolev norm");
  auto* fit_cmd = app.add_subcommand("fit", "least-squares fit in an affine family");
  auto* ccdist_cmd = app.add_subcommand("ccdist", "graph approximation of the Carnot-Caratheodory distance");
  auto* zigzag_cmd = app.add_subcommand("zigzag", "zig-zag laminate and its sup bound");
  auto* suite_cmd = app.add_subcommand("verify-suite", "run the verification battery");
  for (auto* cmd : {catalog, pinv_cmd, lift_cmd, push_cmd, check_cmd, energy_cmd, norm_cmd, fit_cmd, ccdist_cmd,
                    zigzag_cmd, suite_cmd})
    add_common(cmd, flags);
  pinv_cmd->add_option("--matrix", flags.matrix, "row-major matrix, e.g. [[1,0],[1,0]]");
  check_cmd->add_option("property", flags.property, "kernel-constancy | convexity | growth-bound | equivalence | nonnegative")
      ->required()
      ->check(CLI::IsMember({"kernel-constancy", "convexity", "growth-bound", "equivalence", "nonnegative"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n' << "run 'anisolag --help' for usage\n";
    return kUsageError;
  }

  Outcome outcome;
  try {
    if (catalog->parsed()) outcome = cmd_catalog();
    else if (pinv_cmd->parsed()) outcome = cmd_pinv(flags);
    else if (lift_cmd->parsed()) outcome = cmd_compose(flags, true);
    else if (push_cmd->parsed()) outcome = cmd_compose(flags, false);
    else if (check_cmd->parsed()) outcome = cmd_check(flags);
    else if (energy_cmd->parsed()) outcome = cmd_energy(flags);
    else if (norm_cmd->parsed()) outcome = cmd_norm(flags);
    else if (fit_cmd->parsed()) outcome = cmd_fit(flags);
    else if (ccdist_cmd->parsed()) outcome = cmd_ccdist(flags);
    else if (zigzag_cmd->parsed()) outcome = cmd_zigzag(flags);
    else outcome = cmd_verify_suite(flags, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed config: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string text = flags.csv && !outcome.csv.empty() ? outcome.csv : outcome.report.dump(2) + "\n";
  if (!flags.out.empty()) {
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << flags.out << '\n';
      return kUsageError;
    }
    file << text;
  } else {
    out << text;
  }
  return outcome.code;
}

}  // namespace anisolag::cli
