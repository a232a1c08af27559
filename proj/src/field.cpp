#include "globeq/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "globeq/errors.hpp"

namespace globeq {

HessianEigens eigens_of(const Eigen::Matrix2d& hessian) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(hessian, Eigen::EigenvaluesOnly);
  // ascending from Eigen; start descending so equal magnitudes keep the positive one first
  std::array<double, 2> ev{solver.eigenvalues()(1), solver.eigenvalues()(0)};
  std::stable_sort(ev.begin(), ev.end(),
                   [](double l, double r) { return std::abs(l) < std::abs(r); });
  HessianEigens out;
  out.lambda1 = ev[0];
  out.lambda2 = ev[1];
  if (out.definite()) out.tau = out.lambda2 / out.lambda1;
  return out;
}

ScalarField::ScalarField(std::string name, double a, double b, Evaluator f, GradientFn grad,
                         HessianFn hess, double value_scale)
    : name_(std::move(name)),
      a_(a),
      b_(b),
      f_(std::move(f)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      source_(DerivativeSource::ClosedForm),
      value_scale_(value_scale) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("field domain lengths must be positive");
  if (!grad_ || !hess_) throw ParameterError("closed-form field needs gradient and Hessian");
}

ScalarField ScalarField::finite_difference(std::string name, double a, double b, Evaluator f,
                                           double step, double value_scale) {
  ScalarField out(std::move(name), a, b, std::move(f),
                  [](double, double) { return std::array<double, 2>{}; },
                  [](double, double) { return std::array<double, 3>{}; }, value_scale);
  out.grad_ = nullptr;
  out.hess_ = nullptr;
  out.source_ = DerivativeSource::FiniteDifference;
  const double limit = std::min(a, b) / 1000.0;
  if (step < 0.0) throw ParameterError("finite-difference step must be positive");
  out.step_ = step > 0.0 ? step : 1e-5 * std::min(a, b);
  if (!(out.step_ < limit)) throw ParameterError("finite-difference step must be below min(a,b)/1000");
  return out;
}

ScalarField ScalarField::with_finite_differences(double step) const {
  return finite_difference(name_, a_, b_, f_, step, value_scale_);
}

void ScalarField::require_domain(double x, double y) const {
  if (!contains(x, y)) {
    std::ostringstream msg;
    msg << "point (" << x << ", " << y << ") outside field domain [0," << a_ << "]x[0," << b_ << "]";
    throw DomainError(msg.str());
  }
}

double ScalarField::eval(double x, double y) const {
  require_domain(x, y);
  return f_(x, y);
}

std::array<double, 2> ScalarField::gradient(double x, double y) const {
  require_domain(x, y);
  if (source_ == DerivativeSource::ClosedForm) return grad_(x, y);

  const double h = step_;
  auto partial = [&](bool lo_ok, bool hi_ok, auto at) {
    if (lo_ok && hi_ok) return (at(h) - at(-h)) / (2.0 * h);
    if (hi_ok) return (at(h) - at(0.0)) / h;
    return (at(0.0) - at(-h)) / h;
  };
  const double gx = partial(x - h >= 0.0, x + h <= a_, [&](double d) { return f_(x + d, y); });
  const double gy = partial(y - h >= 0.0, y + h <= b_, [&](double d) { return f_(x, y + d); });
  return {gx, gy};
}

Eigen::Matrix2d ScalarField::hessian(double x, double y) const {
  require_domain(x, y);
  Eigen::Matrix2d hm;
  if (source_ == DerivativeSource::ClosedForm) {
    const auto h = hess_(x, y);
    hm << h[0], h[1], h[1], h[2];
    return hm;
  }
  // Second differences need a wider step than first differences to stay clear of round-off.
  const double h = 10.0 * step_;
  const double cx = std::clamp(x, h, a_ - h);
  const double cy = std::clamp(y, h, b_ - h);
  const double f0 = f_(cx, cy);
  const double fxx = (f_(cx + h, cy) - 2.0 * f0 + f_(cx - h, cy)) / (h * h);
  const double fyy = (f_(cx, cy + h) - 2.0 * f0 + f_(cx, cy - h)) / (h * h);
  // grouped so that swapping x and y reproduces the same floating-point sum
  const double fxy = ((f_(cx + h, cy + h) + f_(cx - h, cy - h)) -
                      (f_(cx + h, cy - h) + f_(cx - h, cy + h))) /
                     (4.0 * h * h);
  hm << fxx, fxy, fxy, fyy;
  return hm;
}

HessianEigens ScalarField::hessian_eigens(double x, double y) const {
  const HessianEigens e = eigens_of(hessian(x, y));
  if (std::abs(e.lambda1) < degenerate_hessian_tol()) {
    std::ostringstream msg;
    msg << "degenerate Hessian at (" << x << ", " << y << "): |lambda1| = " << std::abs(e.lambda1);
    throw DegeneracyError(msg.str());
  }
  return e;
}

namespace fields {

ScalarField quadratic(const QuadraticCoeffs& c, double a, double b) {
  return ScalarField(
      "quadratic", a, b,
      [c](double x, double y) {
        const double dx = x - c.center_x, dy = y - c.center_y;
        return c.c_xx * dx * dx + c.c_xy * dx * dy + c.c_yy * dy * dy + c.g_x * dx + c.g_y * dy;
      },
      [c](double x, double y) {
        const double dx = x - c.center_x, dy = y - c.center_y;
        return std::array<double, 2>{2.0 * c.c_xx * dx + c.c_xy * dy + c.g_x,
                                     c.c_xy * dx + 2.0 * c.c_yy * dy + c.g_y};
      },
      [c](double, double) { return std::array<double, 3>{2.0 * c.c_xx, c.c_xy, 2.0 * c.c_yy}; });
}

ScalarField paraboloid(double cx, double cy) {
  return ScalarField("paraboloid", 1.0, 1.0,
                     [cx, cy](double x, double y) {
                       return (x - cx) * (x - cx) + (y - cy) * (y - cy);
                     },
                     [cx, cy](double x, double y) {
                       return std::array<double, 2>{2.0 * (x - cx), 2.0 * (y - cy)};
                     },
                     [](double, double) { return std::array<double, 3>{2.0, 0.0, 2.0}; });
}

ScalarField linear(double cx, double cy) {
  return ScalarField(
      "linear", 1.0, 1.0, [cx, cy](double x, double y) { return cx * x + cy * y; },
      [cx, cy](double, double) { return std::array<double, 2>{cx, cy}; },
      [](double, double) { return std::array<double, 3>{}; });
}

ScalarField saddle(double cx, double cy) {
  return ScalarField(
      "saddle", 1.0, 1.0,
      [cx, cy](double x, double y) { return (x - cx) * (x - cx) - (y - cy) * (y - cy); },
      [cx, cy](double x, double y) {
        return std::array<double, 2>{2.0 * (x - cx), -2.0 * (y - cy)};
      },
      [](double, double) { return std::array<double, 3>{2.0, 0.0, -2.0}; });
}

ScalarField product(int k) {
  const double w = k * std::numbers::pi;
  return ScalarField(
      "product", 1.0, 1.0, [w](double x, double y) { return std::sin(w * x) * std::sin(w * y); },
      [w](double x, double y) {
        return std::array<double, 2>{w * std::cos(w * x) * std::sin(w * y),
                                     w * std::sin(w * x) * std::cos(w * y)};
      },
      [w](double x, double y) {
        const double sx = std::sin(w * x), sy = std::sin(w * y);
        const double cx = std::cos(w * x), cy = std::cos(w * y);
        return std::array<double, 3>{-w * w * sx * sy, w * w * cx * cy, -w * w * sx * sy};
      });
}

ScalarField aniso() {
  return ScalarField(
      "aniso", 1.0, 1.0,
      [](double x, double y) {
        return (x - 0.47) * (x - 0.47) + 4.0 * (y - 0.53) * (y - 0.53);
      },
      [](double x, double y) {
        return std::array<double, 2>{2.0 * (x - 0.47), 8.0 * (y - 0.53)};
      },
      [](double, double) { return std::array<double, 3>{2.0, 0.0, 8.0}; });
}

ScalarField negated(const ScalarField& f) {
  auto value = [f](double x, double y) { return -f.eval(x, y); };
  if (f.derivative_source() == DerivativeSource::FiniteDifference) {
    return ScalarField::finite_difference("-" + f.name(), f.a(), f.b(), value, f.fd_step(),
                                          f.value_scale());
  }
  return ScalarField(
      "-" + f.name(), f.a(), f.b(), value,
      [f](double x, double y) {
        const auto g = f.gradient(x, y);
        return std::array<double, 2>{-g[0], -g[1]};
      },
      [f](double x, double y) {
        const Eigen::Matrix2d h = f.hessian(x, y);
        return std::array<double, 3>{-h(0, 0), -h(0, 1), -h(1, 1)};
      },
      f.value_scale());
}

const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names{"paraboloid", "linear", "saddle", "product", "aniso"};
  return names;
}

ScalarField by_name(const std::string& name) {
  if (name == "paraboloid") return paraboloid();
  if (name == "linear") return linear();
  if (name == "saddle") return saddle();
  if (name == "product") return product();
  if (name == "aniso") return aniso();
  throw ParameterError("unknown field '" + name + "'");
}

}  // namespace fields

}  // namespace globeq
