#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mms/measure.hpp"
#include "mms/report.hpp"

namespace mms {

/// Matrix of A_r on a finite atomic space:
/// k(x, y) = [y in B(x, r)] w(y) / mu B(x, r), over the atoms whose ball has
/// positive mass.
struct Kernel {
  Eigen::MatrixXd k;
  std::vector<double> weights;
  double radius = 0.0;
  /// Measure atom index of each row/column.
  std::vector<std::size_t> atoms;
  /// Atoms left out because their ball has zero mass.
  std::vector<std::size_t> undefined;
};

Kernel build_kernel(const Measure& m, const Space& s, double r, bool closed = false);

struct NormReport {
  double p = 1.0;
  double value = 0.0;
  Direction direction = Direction::lower;
  std::string method;
  std::string witness;
  bool converged = true;
  std::size_t iterations = 0;

  nlohmann::json to_json() const;
};

/// Exact L^1 norm: the largest column sum of w(x) k(x, y) / w(y).
NormReport op_norm_l1(const Kernel& kernel);

/// Lower bound for the L^p(mu) norm, p > 1, by the nonlinear power method on
/// D A D^{-1} with D = diag(w^{1/p}); started from the all-ones vector and
/// again from the best single-atom input.
NormReport op_norm_lp(const Kernel& kernel, double p, std::size_t max_iters = 2000, double tol = 1e-10);

/// Lower bound for the weak (p, p) constant: for each probe (a value per
/// kernel atom) every level attained by A f is swept exactly. With no probes
/// the indicator of each atom is used.
NormReport weak_type_constant(const Kernel& kernel, double p, std::span<const std::vector<double>> probes = {});

/// sup over the y grid of the integral over B(y, r) of dmu(x) / mu B(x, r),
/// i.e. the L^1 norm of A_r evaluated at Dirac inputs on the grid.
NormReport fubini_l1_upper(const Measure& m, const Space& s, double r, std::span<const double> y_grid);

/// c_r^(r/p): the L^p bound obtained by interpolating with L^infinity.
double riesz_interpolate(double c_r, double r, double p);

/// sup over levels of alpha * mu{M delta_x0 >= alpha} for the centered
/// maximal function of the unit Dirac mass, evaluated at every atom.
NormReport single_dirac_weak11(const Measure& m, const Space& s, const Point& x0);

}  // namespace mms
