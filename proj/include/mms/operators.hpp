#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mms/measure.hpp"
#include "mms/report.hpp"

namespace mms {

/// The averaging operators are defined only where the ball has positive mass.
class UndefinedAtPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Average of f over B(x, r).
double average(const Measure& m, const Space& s, double r, const FunctionOnSpace& f, const Point& x,
               bool closed = false);

struct MaximalResult {
  double value = 0.0;
  double radius = 0.0;
  Point center;
  /// exact when the radius/center family covers every distinct ball,
  /// lower when it is a supplied grid.
  Direction direction = Direction::lower;
  std::size_t balls_checked = 0;
};

/// Radii d + eps for each distinct distance d from x to an atom (or the Dirac
/// location), eps = 1e-9 * max distance: one radius per distinct open ball.
std::vector<double> auto_radius_grid(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                     const Point& x);

/// sup over radii of the average of |f| on B(x, r). For atomic measures with
/// an empty `radii` the auto grid is used and the result is exact.
MaximalResult maximal_centered(const Measure& m, const Space& s, const FunctionOnSpace& f,
                               const Point& x, std::span<const double> radii = {});

/// sup over balls B(y, r) containing x. For atomic measures with empty grids
/// the centers are every point of the finite universe (or every atom) plus x,
/// and for each center all distinct balls containing x are visited.
MaximalResult maximal_uncentered(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                 const Point& x, std::span<const double> radii = {},
                                 std::span<const Point> centers = {});

/// Average of f over the closed window [x, x + span] of a measure on the line.
double directional_average_right(const Measure& m, double span, const FunctionOnSpace& f, double x);

/// L^1(m) norm of the right directional average of the unit Dirac mass at y:
/// the integral over x in [y - span, y] of density(x) / m([x, x + span]).
/// Computed in the offset u = y - x so that windows of tiny mass keep full
/// precision.
QuadResult directional_dirac_l1(const Density1D& m, double span, double y);

struct OperatorSpec {
  enum class Kind { average, maximal_centered, maximal_uncentered, directional_right };
  Kind kind = Kind::average;
  double radius = 1.0;
  std::vector<double> radii;
  std::vector<Point> centers;
};

/// Evaluates the operator described by `spec` at x.
double apply(const OperatorSpec& spec, const Measure& m, const Space& s, const FunctionOnSpace& f,
             const Point& x);

}  // namespace mms
