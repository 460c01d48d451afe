#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mms/numerics.hpp"
#include "mms/space.hpp"

namespace mms {

struct Atom {
  Point location;
  double weight = 0.0;
};

/// Finite sum of weighted point masses.
struct Atomic {
  std::vector<Atom> atoms;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
};

/// Absolutely continuous measure carried by a one-parameter family of points
/// t -> embed(t), t in `domain`, with density(t) dt. On the real line embed is
/// the identity; for curves in R^2 it is the parametrization.
struct Density1D {
  std::string name;
  RealFn density;
  Interval domain;
  /// Exact mass of [a, b] (clipped to the domain). Quadrature is used if unset.
  std::function<double(double, double)> interval_mass;
  /// Mass of [anchor + lo, anchor + hi], computed relative to the anchor so that
  /// tiny windows far from the origin keep full relative precision.
  std::function<double(double, double, double)> anchored_mass;
  /// density(anchor + offset) evaluated without forming the sum.
  std::function<double(double, double)> anchored_density;
  /// Parameter intervals whose image lies in the ball. Defaults to the line.
  std::function<std::vector<Interval>(const Space&, const Ball&)> preimage;
  std::function<Point(double)> embed;
  std::vector<double> breakpoints;
};

/// Standard Gaussian on R^d; `normalized = false` drops the (2 pi)^{-d/2}.
struct Gaussian {
  std::size_t dim = 1;
  bool normalized = true;
};

using Measure = std::variant<Atomic, Density1D, Gaussian>;

Measure atomic(std::vector<Atom> atoms);
/// Unit weight on every node of a finite space.
Measure counting(const Space& s);
/// dP = e^{-t} dt on (0, inf).
Measure exponential();
Measure lebesgue_line();
Measure gaussian(std::size_t dim, bool normalized = true);

/// One value per atom, in atom order.
struct TableFunction {
  std::vector<double> values;
};

struct CallableFunction {
  std::function<double(const Point&)> fn;
};

/// Point mass used as an extremal input.
struct DiracProbe {
  Point location;
  double coefficient = 1.0;
};

using FunctionOnSpace = std::variant<TableFunction, CallableFunction, DiracProbe>;

FunctionOnSpace constant_function(double c);

/// Sorted, disjoint union of the given intervals (empty ones dropped).
std::vector<Interval> merge_intervals(std::vector<Interval> parts);
/// Merged parameter intervals of a density measure lying inside the ball.
std::vector<Interval> ball_preimage(const Density1D& m, const Space& s, const Ball& b);
/// Mass of [a, b] clipped to the domain.
double interval_mass(const Density1D& m, double a, double b);

double ball_mass(const Measure& m, const Space& s, const Ball& b);
double total_mass(const Measure& m);

enum class McMethod { hit_or_miss, uniform_in_ball };

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Seeded Monte Carlo mass of a Euclidean ball under a Gaussian measure.
/// Hit-or-miss samples the Gaussian; uniform-in-ball averages vol(B) * density
/// over uniform points of B and suits balls of tiny Gaussian mass.
McEstimate ball_mass_mc(const Measure& m, const Ball& b, std::uint64_t n, std::uint64_t seed,
                        McMethod method = McMethod::hit_or_miss);

/// gamma^d(B(u e1, R)) (normalized), by the chi-square reduction: the
/// transverse coordinates are integrated in closed form.
QuadResult gaussian_ball_mass(std::size_t d, double u, double radius);
/// log of the same quantity, finite far below the double range.
QuadResult log_gaussian_ball_mass(std::size_t d, double u, double radius);
/// log volume of the Euclidean unit ball in R^d.
double log_unit_ball_volume(std::size_t d);

/// Integral of f over the region (whole space if absent). Density integrals
/// run to relative tolerance 1e-9 and throw QuadratureError otherwise.
QuadResult integrate_with_error(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                const std::optional<Ball>& region = std::nullopt);
double integrate(const Measure& m, const Space& s, const FunctionOnSpace& f,
                 const std::optional<Ball>& region = std::nullopt);

/// Evaluates f at an atom (table) or a point (callable). Dirac probes have no
/// pointwise value and throw.
double evaluate(const FunctionOnSpace& f, const Point& p, std::optional<std::size_t> atom = {});

/// Reads "index weight" lines for finite spaces or "x1 .. xd weight" lines for
/// Euclidean ones; '#' starts a comment.
Measure load_atomic(const std::filesystem::path& path, const Space& s);

std::string describe(const Measure& m);

}  // namespace mms
