#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mms/measure.hpp"
#include "mms/numerics.hpp"

namespace mms {

struct CapReport {
  std::size_t d = 0;
  double bound = 0.0;
  double log_bound = 0.0;
  /// Normalized surface measure of the cap {<theta, e1> >= sqrt(3)/2}.
  double exact = 0.0;
  double log_exact = 0.0;
  bool holds = false;
};

/// 1 / (2^{d-1} sqrt(2 pi d)) against the exact cap measure
/// I_{1/4}((d-1)/2, 1/2) / 2.
CapReport cap_measure_bound(std::size_t d);

struct GammaRatioReport {
  double lhs = 0.0;      // log sqrt(d/2)
  double rhs = 0.0;      // log Gamma(1 + d/2) / Gamma(1/2 + d/2)
  bool holds = false;
};
GammaRatioReport gamma_ratio_check(std::size_t d);

enum class McVerdict { pass, fail, inconclusive };
std::string_view to_string(McVerdict v);

/// A Monte Carlo inequality check with its 3-sigma verdict.
struct McCheck {
  McVerdict verdict = McVerdict::inconclusive;
  double lhs = 0.0;
  double rhs = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  /// Deterministic quadrature value of the sampled quantity, for comparison.
  double quadrature = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int reruns = 0;

  nlohmann::json to_json() const;
};

/// gamma^d(B^cl(0, r)) <= 2^{d-1} sqrt(2 pi d) gamma^d(B^cl(r e1, r)); the
/// shifted ball is sampled. Inconclusive runs are repeated with 4x samples,
/// at most twice.
McCheck firstop_check(std::size_t d, double r, std::uint64_t samples, std::uint64_t seed);

/// Lower bound on lambda^d(B(e1, 1) cap B(0, 1)) / lambda^d(B(0, 1)).
struct CapVolumeReport {
  std::size_t d = 0;
  double log_ratio = 0.0;
  double log_bound = 0.0;
  bool holds = false;
};
CapVolumeReport cap_volume_ratio(std::size_t d);

/// mu B(x, r) >= e^{-|x|^2/2} lambda^d B(0, r) (sqrt3/2)^{d+1} / sqrt(pi (d+1))
/// for the unnormalized Gaussian, |x| >= r; the left side is sampled uniformly
/// in the ball.
McCheck secondopx_check(std::size_t d, double r, const Coords& x, std::uint64_t samples, std::uint64_t seed);

struct CSFormulas {
  double R = 0.0;
  double t = 0.0;
  double F = 0.0;  // F(t(R), R) = G(R)
  double G = 0.0;
  double G_prime = 0.0;
  double G_second = 0.0;
  /// log V(R) for the dimension passed, if any.
  std::optional<double> log_V;
};

double cs_t(double R);
double cs_F(double t, double R);
double cs_G(double R);
CSFormulas cs_formulas(double R, std::optional<std::size_t> d = std::nullopt);

struct ShellReport {
  std::size_t d = 0;
  double mass = 0.0;
  double log_mass = 0.0;
  double error = 0.0;
  double bound = 0.0;  // 1 / sqrt(pi e^3 d)
  bool holds = false;
};

/// gamma^d of the shell sqrt(d-1) - 1/sqrt(d-1) <= |x| < sqrt(d-1), by
/// log-domain radial quadrature.
ShellReport shell_mass(std::size_t d);

/// First d0 in [2, d_max] with the shell inequality holding for all d in
/// [d0, d_max]; nullopt if it fails at d_max.
std::optional<std::size_t> shell_threshold(std::size_t d_max);

/// gamma^d(B(0, rho) cap B(u e1, Rp)), normalized, by integrating the
/// transverse coordinates in closed form.
QuadResult intersection_mass_2d(std::size_t d, double rho, double u, double Rp);
QuadResult log_intersection_mass(std::size_t d, double rho, double u, double Rp);

struct GaussBoundReport {
  std::size_t d = 0;
  double p = 1.0;
  double upper = 0.0;       // strong-type bound for this p
  double log_upper = 0.0;
  double alpha = 0.0;       // min over the shell of the average
  double alpha_u = 0.0;     // offset attaining it
  double grid_step = 0.0;   // final resolution of the offset search
  double log_shell = 0.0;
  double log_ball = 0.0;
  double value = 0.0;       // alpha * (shell / ball)^{1/p}
  double log_value = 0.0;
  /// Exact level sweep of alpha * gamma{A f >= alpha}^{1/p} / |f|_p for the
  /// same f and radius: another certified lower bound, reported alongside.
  double log_level_sweep = 0.0;
  double quadrature_error = 0.0;

  nlohmann::json to_json() const;
};

/// Lower bound for the weak (p, p) norm of A_r, r = sqrt(3(d-1))/2, witnessed
/// by the indicator of B(0, r) on the shell.
GaussBoundReport weak_lower_bound(std::size_t d, double p);

/// 2^{d-1} sqrt(2 pi d) + sqrt(pi (d+1)) (2/sqrt3)^{d+1}, as a log.
double log_l1_upper_bound(std::size_t d);
double l1_upper_bound(std::size_t d);

struct GRatioReport {
  std::size_t d = 0;
  double ratio = 0.0;
  double chain = 0.0;  // (1 / (1 + sqrt3/(d-1)))^{(d-1)/2}
  bool above_inv_e = false;
  bool concave = false;
};
GRatioReport G_ratio_check(std::size_t d);

struct DiscreteGaussian {
  Space space;
  Measure measure;
};

/// Discretized Gaussian on a cubic grid of R^d (d <= 3) as an atomic measure
/// with weights phi(x) h^d.
DiscreteGaussian discretized_gaussian(std::size_t d, double half_width, std::size_t points_per_axis);

/// Exact L^1 norm of A_r for the discretized Gaussian, maximized over radii.
double discretized_gaussian_l1(std::size_t d, std::span<const double> radii);

}  // namespace mms
