#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace mms {

/// Quadrature value plus the integrator's own error estimate.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Raised when an integral misses its tolerance; carries what was achieved.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (31 point) over [a, b], split at `breaks`.
/// Infinite limits are allowed. Throws QuadratureError if the estimated
/// relative error exceeds 100 * rel_tol.
QuadResult integrate_adaptive(const RealFn& f, double a, double b, double rel_tol = 1e-10,
                              std::span<const double> breaks = {});

/// Tanh-sinh quadrature; tolerates integrable endpoint singularities.
/// Finite limits only.
QuadResult integrate_endpoint_singular(const RealFn& f, double a, double b,
                                       double rel_tol = 1e-10,
                                       std::span<const double> breaks = {});

/// Integral over [a, b] of a function with a boundary layer of width
/// `layer` at `a`: the interval is cut at a + layer * 4^k before the
/// adaptive rule runs, so features much narrower than b - a are resolved.
QuadResult integrate_graded(const RealFn& f, double a, double b, double layer,
                            double rel_tol = 1e-10);

/// log of the integral of exp(log_f) over [a, b]. The maximum of log_f is
/// located first and factored out, so integrands far below the double range
/// are handled. `breaks` are known kinks.
QuadResult log_integrate(const RealFn& log_f, double a, double b,
                         std::span<const double> breaks = {}, double rel_tol = 1e-10);

/// log of the regularized lower incomplete gamma P(a, x). Stays finite where
/// P(a, x) itself underflows.
double log_gamma_p(double a, double x);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

/// log(exp(a) - exp(b)) for a >= b.
double log_sub_exp(double a, double b);

}  // namespace mms
