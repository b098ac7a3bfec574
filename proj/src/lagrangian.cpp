#include "anisolag/lagrangian.hpp"

#include <cmath>
#include <variant>

#include "anisolag/error.hpp"
#include "anisolag/pseudoinverse.hpp"

namespace anisolag {

namespace {

struct ExprBody {
  Expr body;
};

enum class Composition { lift, pushforward, project };

struct Composed {
  Composition how;
  Lagrangian base;
  Anisotropy anisotropy;
};

}  // namespace

struct Lagrangian::Impl {
  LagrangianKind kind;
  int arg_dim;
  int x_dim;
  std::variant<ExprBody, Composed> body;
};

std::string to_string(LagrangianKind kind) { return kind == LagrangianKind::euclidean ? "euclidean" : "anisotropic"; }

LagrangianKind parse_kind(std::string_view text) {
  if (text == "euclidean") return LagrangianKind::euclidean;
  if (text == "anisotropic") return LagrangianKind::anisotropic;
  throw InvalidArgument("lagrangian kind must be \"euclidean\" or \"anisotropic\", got \"" + std::string(text) + "\"");
}

Lagrangian::Lagrangian(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Lagrangian Lagrangian::from_expr(LagrangianKind kind, Expr body, int arg_dim, int x_dim) {
  if (arg_dim <= 0 || x_dim <= 0) throw InvalidArgument("lagrangian dimensions must be positive");
  if (body.x_arity() > x_dim)
    throw DimensionError("lagrangian " + body.str() + " references x beyond x" + std::to_string(x_dim));
  if (body.q_arity() > arg_dim)
    throw DimensionError("lagrangian " + body.str() + " references q beyond q" + std::to_string(arg_dim));
  return Lagrangian(std::make_shared<const Impl>(Impl{kind, arg_dim, x_dim, ExprBody{std::move(body)}}));
}

Lagrangian Lagrangian::parse(LagrangianKind kind, std::string_view text, int arg_dim, int x_dim) {
  return from_expr(kind, Expr::parse(text), arg_dim, x_dim);
}

Lagrangian Lagrangian::for_anisotropy(LagrangianKind kind, std::string_view text, const Anisotropy& a) {
  return parse(kind, text, kind == LagrangianKind::euclidean ? a.n() : a.m(), a.n());
}

LagrangianKind Lagrangian::kind() const { return impl_->kind; }
int Lagrangian::arg_dim() const { return impl_->arg_dim; }
int Lagrangian::x_dim() const { return impl_->x_dim; }

std::string Lagrangian::describe() const {
  if (const auto* e = std::get_if<ExprBody>(&impl_->body)) return e->body.str();
  const auto& c = std::get<Composed>(impl_->body);
  const std::string name = c.anisotropy.name().empty() ? "X" : c.anisotropy.name();
  switch (c.how) {
    case Composition::lift:
      return "lift[" + name + "](" + c.base.describe() + ")";
    case Composition::pushforward:
      return "pushforward[" + name + "](" + c.base.describe() + ")";
    case Composition::project:
      return "project[" + name + "](" + c.base.describe() + ")";
  }
  return {};
}

double Lagrangian::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& arg) const {
  if (x.size() != impl_->x_dim)
    throw DimensionError("point has dimension " + std::to_string(x.size()) + ", lagrangian expects " +
                         std::to_string(impl_->x_dim));
  if (arg.size() != impl_->arg_dim)
    throw DimensionError("argument has dimension " + std::to_string(arg.size()) + ", lagrangian expects " +
                         std::to_string(impl_->arg_dim));
  if (const auto* e = std::get_if<ExprBody>(&impl_->body)) {
    return e->body.eval(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                        std::span<const double>(arg.data(), static_cast<std::size_t>(arg.size())));
  }
  const auto& c = std::get<Composed>(impl_->body);
  const Eigen::MatrixXd C = c.anisotropy.coefficient_matrix_unchecked(x);
  switch (c.how) {
    case Composition::lift:
      return c.base(x, pinv(C).C_P * arg);
    case Composition::pushforward:
      return c.base(x, C * arg);
    case Composition::project:
      return c.base(x, pinv(C).Pi * arg);
  }
  return 0.0;
}

LagrangianValue eval_lagrangian(const Lagrangian& f, const Eigen::VectorXd& x, const Eigen::VectorXd& arg) {
  const double v = f(x, arg);
  if (!std::isfinite(v)) throw NonFiniteError("lagrangian " + f.describe() + " is not finite at the requested point");
  return LagrangianValue{v, v < -1e-12};
}

namespace {

void require(const Lagrangian& f, LagrangianKind kind, int arg_dim, const Anisotropy& a, const char* op) {
  if (f.kind() != kind)
    throw InvalidArgument(std::string(op) + " needs a " + to_string(kind) + " lagrangian, got " + to_string(f.kind()));
  if (f.arg_dim() != arg_dim)
    throw DimensionError(std::string(op) + ": lagrangian argument dimension " + std::to_string(f.arg_dim()) +
                         " does not match " + std::to_string(arg_dim));
  if (f.x_dim() != a.n())
    throw DimensionError(std::string(op) + ": lagrangian point dimension " + std::to_string(f.x_dim()) +
                         " does not match n = " + std::to_string(a.n()));
}

}  // namespace

Lagrangian lift(const Lagrangian& f_e, const Anisotropy& a) {
  require(f_e, LagrangianKind::euclidean, a.n(), a, "lift");
  return Lagrangian(std::make_shared<const Lagrangian::Impl>(
      Lagrangian::Impl{LagrangianKind::anisotropic, a.m(), a.n(), Composed{Composition::lift, f_e, a}}));
}

Lagrangian pushforward(const Lagrangian& f, const Anisotropy& a) {
  require(f, LagrangianKind::anisotropic, a.m(), a, "pushforward");
  return Lagrangian(std::make_shared<const Lagrangian::Impl>(
      Lagrangian::Impl{LagrangianKind::euclidean, a.n(), a.n(), Composed{Composition::pushforward, f, a}}));
}

Lagrangian project_to_row_space(const Lagrangian& f_e, const Anisotropy& a) {
  require(f_e, LagrangianKind::euclidean, a.n(), a, "project_to_row_space");
  return Lagrangian(std::make_shared<const Lagrangian::Impl>(
      Lagrangian::Impl{LagrangianKind::euclidean, a.n(), a.n(), Composed{Composition::project, f_e, a}}));
}

}  // namespace anisolag
