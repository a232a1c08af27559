#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace globeq {

/// Eigenvalues of a 2x2 Hessian ordered by magnitude, |lambda1| <= |lambda2|.
/// Equal magnitudes keep the positive eigenvalue first.
struct HessianEigens {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::optional<double> tau;  // lambda2 / lambda1, only for definite Hessians

  bool definite() const { return lambda1 * lambda2 > 0.0; }
};

/// Orders the eigenvalues of a symmetric 2x2 matrix and fills tau.
HessianEigens eigens_of(const Eigen::Matrix2d& hessian);

enum class DerivativeSource { ClosedForm, FiniteDifference };

/// A scalar field on the rectangle [0,a] x [0,b].
///
/// Immutable after construction. Evaluation is pure, so a field may be shared
/// across threads. Closed-form fields carry exact gradient and Hessian
/// callbacks; finite-difference fields derive both from the evaluator.
class ScalarField {
 public:
  using Evaluator = std::function<double(double, double)>;
  using GradientFn = std::function<std::array<double, 2>(double, double)>;
  /// Returns (fxx, fxy, fyy).
  using HessianFn = std::function<std::array<double, 3>(double, double)>;

  ScalarField(std::string name, double a, double b, Evaluator f, GradientFn grad, HessianFn hess,
              double value_scale = 1.0);

  /// Field whose derivatives come from central differences of step `step`
  /// (0 selects the default 1e-5 * min(a, b)).
  static ScalarField finite_difference(std::string name, double a, double b, Evaluator f,
                                       double step = 0.0, double value_scale = 1.0);

  /// Same values, derivatives switched to finite differences.
  ScalarField with_finite_differences(double step = 0.0) const;

  const std::string& name() const { return name_; }
  double a() const { return a_; }
  double b() const { return b_; }
  DerivativeSource derivative_source() const { return source_; }
  double fd_step() const { return step_; }
  double value_scale() const { return value_scale_; }
  double degenerate_hessian_tol() const { return 1e-8 * value_scale_; }

  bool contains(double x, double y) const { return x >= 0.0 && x <= a_ && y >= 0.0 && y <= b_; }

  double eval(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;
  Eigen::Matrix2d hessian(double x, double y) const;

  /// Throws DegeneracyError when |lambda1| < degenerate_hessian_tol().
  HessianEigens hessian_eigens(double x, double y) const;

 private:
  void require_domain(double x, double y) const;

  std::string name_;
  double a_;
  double b_;
  Evaluator f_;
  GradientFn grad_;
  HessianFn hess_;
  DerivativeSource source_;
  double step_ = 0.0;
  double value_scale_;
};

/// Coefficients of c_xx dx^2 + c_xy dx dy + c_yy dy^2 + g_x dx + g_y dy,
/// with dx = x - center_x and dy = y - center_y.
struct QuadraticCoeffs {
  double c_xx = 1.0;
  double c_xy = 0.0;
  double c_yy = 1.0;
  double g_x = 0.0;
  double g_y = 0.0;
  double center_x = 0.5;
  double center_y = 0.5;
};

namespace fields {

/// (x - cx)^2 + (y - cy)^2 on [0,1]^2.
ScalarField paraboloid(double cx = 0.47, double cy = 0.53);
/// cx * x + cy * y on [0,1]^2.
ScalarField linear(double cx = 1.0, double cy = 2.0);
/// (x - cx)^2 - (y - cy)^2 on [0,1]^2.
ScalarField saddle(double cx = 0.47, double cy = 0.53);
/// sin(k pi x) sin(k pi y) on [0,1]^2.
ScalarField product(int k = 3);
/// (x - 0.47)^2 + 4 (y - 0.53)^2 on [0,1]^2.
ScalarField aniso();
ScalarField quadratic(const QuadraticCoeffs& c, double a = 1.0, double b = 1.0);
/// -f, keeping the derivative source.
ScalarField negated(const ScalarField& f);

/// Catalog lookup: paraboloid, linear, saddle, product, aniso.
ScalarField by_name(const std::string& name);
const std::vector<std::string>& catalog();

}  // namespace fields

}  // namespace globeq
