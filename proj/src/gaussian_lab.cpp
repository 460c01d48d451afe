#include "mms/gaussian_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mms/norms.hpp"
#include "mms/parallel.hpp"

namespace mms {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kHalfSqrt3 = 0.5 * std::numbers::sqrt3;

double dbl(std::size_t d) { return static_cast<double>(d); }

void require_dim(std::size_t d, std::size_t min) {
  if (d < min) throw std::invalid_argument("dimension must be at least " + std::to_string(min));
}

// log of sigma(S^{k-1}) = k pi^{k/2} / Gamma(1 + k/2).
double log_sphere_area(std::size_t k) {
  const double kk = dbl(k);
  return std::log(kk) + 0.5 * kk * std::log(kPi) - std::lgamma(1.0 + 0.5 * kk);
}

Coords axis_point(std::size_t d, double u) {
  Coords c(d, 0.0);
  c[0] = u;
  return c;
}

template <class Run, class Decide>
McCheck rerun_until_decided(std::uint64_t samples, std::uint64_t seed, Run&& run, Decide&& decide) {
  McCheck out;
  std::uint64_t n = samples;
  std::uint64_t s = seed;
  for (int attempt = 0; attempt <= 2; ++attempt) {
    const McEstimate e = run(n, s);
    out.estimate = e.estimate;
    out.std_error = e.std_error;
    out.samples = n;
    out.seed = s;
    out.reruns = attempt;
    decide(out);
    if (out.verdict != McVerdict::inconclusive) break;
    n *= 4;
    s = chunk_seed(seed, 1000003ULL + static_cast<std::uint64_t>(attempt));
  }
  return out;
}

}  // namespace

std::string_view to_string(McVerdict v) {
  switch (v) {
    case McVerdict::pass: return "pass";
    case McVerdict::fail: return "fail";
    case McVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

nlohmann::json McCheck::to_json() const {
  return {{"verdict", std::string(to_string(verdict))},
          {"lhs", number_to_json(lhs)},
          {"rhs", number_to_json(rhs)},
          {"estimate", number_to_json(estimate)},
          {"std_error", number_to_json(std_error)},
          {"quadrature", number_to_json(quadrature)},
          {"samples", samples},
          {"seed", seed},
          {"reruns", reruns}};
}

CapReport cap_measure_bound(std::size_t d) {
  require_dim(d, 2);
  CapReport rep;
  rep.d = d;
  rep.log_bound = -(dbl(d) - 1.0) * std::log(2.0) - 0.5 * std::log(2.0 * kPi * dbl(d));
  rep.bound = std::exp(rep.log_bound);
  const double a = 0.5 * (dbl(d) - 1.0);
  const double ib = boost::math::ibeta(a, 0.5, 0.25);
  if (ib > 1e-300) {
    rep.log_exact = std::log(0.5 * ib);
  } else {
    const double log_beta = std::lgamma(a) + std::lgamma(0.5) - std::lgamma(a + 0.5);
    auto lf = [&](double t) { return t > 0 ? (a - 1.0) * std::log(t) - 0.5 * std::log1p(-t) : kNegInf; };
    rep.log_exact = log_integrate(lf, 0.0, 0.25).value - log_beta - std::log(2.0);
  }
  rep.exact = std::exp(rep.log_exact);
  rep.holds = rep.log_bound <= rep.log_exact;
  return rep;
}

GammaRatioReport gamma_ratio_check(std::size_t d) {
  require_dim(d, 1);
  GammaRatioReport rep;
  rep.lhs = 0.5 * std::log(0.5 * dbl(d));
  rep.rhs = std::lgamma(1.0 + 0.5 * dbl(d)) - std::lgamma(0.5 + 0.5 * dbl(d));
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

McCheck firstop_check(std::size_t d, double r, std::uint64_t samples, std::uint64_t seed) {
  require_dim(d, 1);
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  const double factor = std::exp((dbl(d) - 1.0) * std::log(2.0) + 0.5 * std::log(2.0 * kPi * dbl(d)));
  const double centered = gaussian_ball_mass(d, 0.0, r).value;
  const Measure g = gaussian(d);
  const Ball shifted(axis_point(d, r), r, true);
  McCheck out = rerun_until_decided(
      samples, seed, [&](std::uint64_t n, std::uint64_t s) { return ball_mass_mc(g, shifted, n, s, McMethod::uniform_in_ball); },
      [&](McCheck& c) {
        c.lhs = centered;
        c.rhs = factor * c.estimate;
        if (centered <= factor * (c.estimate - 3.0 * c.std_error)) {
          c.verdict = McVerdict::pass;
        } else if (centered > factor * (c.estimate + 3.0 * c.std_error)) {
          c.verdict = McVerdict::fail;
        } else {
          c.verdict = McVerdict::inconclusive;
        }
      });
  out.quadrature = gaussian_ball_mass(d, r, r).value;
  return out;
}

CapVolumeReport cap_volume_ratio(std::size_t d) {
  require_dim(d, 1);
  CapVolumeReport rep;
  rep.d = d;
  const double dd = dbl(d);
  const double log_c = std::lgamma(1.0 + 0.5 * dd) - 0.5 * std::log(kPi) - std::lgamma(0.5 + 0.5 * dd);
  double log_int;
  if (d == 1) {
    log_int = std::log(0.5);
  } else {
    auto lf = [&](double x) { return x < 1.0 ? 0.5 * (dd - 1.0) * std::log1p(-x * x) : kNegInf; };
    log_int = log_integrate(lf, 0.5, 1.0).value;
  }
  rep.log_ratio = std::log(2.0) + log_c + log_int;
  rep.log_bound = -0.5 * std::log(kPi * (dd + 1.0)) + (dd + 1.0) * std::log(kHalfSqrt3);
  rep.holds = rep.log_bound <= rep.log_ratio;
  return rep;
}

McCheck secondopx_check(std::size_t d, double r, const Coords& x, std::uint64_t samples, std::uint64_t seed) {
  require_dim(d, 1);
  if (x.size() != d) throw std::invalid_argument("center dimension mismatch");
  double x2 = 0.0;
  for (double v : x) x2 += v * v;
  const double norm = std::sqrt(x2);
  if (norm < r) throw std::invalid_argument("the center must lie outside B(0, r)");
  const double log_rhs = -0.5 * x2 + log_unit_ball_volume(d) + dbl(d) * std::log(r) -
                         0.5 * std::log(kPi * (dbl(d) + 1.0)) + (dbl(d) + 1.0) * std::log(kHalfSqrt3);
  const double rhs = std::exp(log_rhs);
  const Measure mu = gaussian(d, false);
  const Ball ball(x, r);
  McCheck out = rerun_until_decided(
      samples, seed, [&](std::uint64_t n, std::uint64_t s) { return ball_mass_mc(mu, ball, n, s, McMethod::uniform_in_ball); },
      [&](McCheck& c) {
        c.lhs = c.estimate;
        c.rhs = rhs;
        if (c.estimate - 3.0 * c.std_error >= rhs) {
          c.verdict = McVerdict::pass;
        } else if (c.estimate + 3.0 * c.std_error < rhs) {
          c.verdict = McVerdict::fail;
        } else {
          c.verdict = McVerdict::inconclusive;
        }
      });
  out.quadrature = gaussian_ball_mass(d, norm, r).value * std::exp(0.5 * dbl(d) * std::log(2.0 * kPi));
  return out;
}

double cs_t(double R) { return 2.0 + R * R - std::sqrt(1.0 + 4.0 * R * R); }

double cs_F(double t, double R) {
  const double q = 1.0 + t - R * R;
  return (t - 0.25 * q * q) * std::exp(-t);
}

double cs_G(double R) { return cs_F(cs_t(R), R); }

CSFormulas cs_formulas(double R, std::optional<std::size_t> d) {
  if (!(R > 0) || !(R < 1)) throw std::invalid_argument("R must lie in (0, 1)");
  CSFormulas f;
  f.R = R;
  f.t = cs_t(R);
  f.F = cs_F(f.t, R);
  f.G = f.F;
  const double h1 = 1e-6;
  f.G_prime = (cs_G(R + h1) - cs_G(R - h1)) / (2.0 * h1);
  const double h2 = 1e-4;
  f.G_second = (cs_G(R + h2) - 2.0 * f.G + cs_G(R - h2)) / (h2 * h2);
  if (d) {
    require_dim(*d, 3);
    const double dd = dbl(*d);
    f.log_V = std::log(2.0) + log_sphere_area(*d - 1) + 0.5 * dd * std::log(dd - 1.0) + std::log(R) -
              std::log(dd - 1.0) - 0.5 * std::log1p(-R * R) + 0.5 * (dd - 1.0) * std::log(f.G);
  }
  return f;
}

ShellReport shell_mass(std::size_t d) {
  require_dim(d, 2);
  ShellReport rep;
  rep.d = d;
  const double dd = dbl(d);
  const double s = std::sqrt(dd - 1.0);
  const double a = s - 1.0 / s;
  const double log_const = log_sphere_area(d) - 0.5 * dd * std::log(2.0 * kPi);
  auto lf = [&](double r) { return r > 0 ? log_const + (dd - 1.0) * std::log(r) - 0.5 * r * r : kNegInf; };
  const QuadResult q = log_integrate(lf, std::max(a, 0.0), s, {}, 1e-12);
  rep.log_mass = q.value;
  rep.mass = std::exp(q.value);
  rep.error = q.error;
  rep.bound = 1.0 / std::sqrt(kPi * std::exp(3.0) * dd);
  rep.holds = rep.log_mass > std::log(rep.bound);
  return rep;
}

std::optional<std::size_t> shell_threshold(std::size_t d_max) {
  std::optional<std::size_t> d0;
  for (std::size_t d = d_max; d >= 2; --d) {
    if (!shell_mass(d).holds) break;
    d0 = d;
  }
  return d0;
}

QuadResult intersection_mass_2d(std::size_t d, double rho, double u, double Rp) {
  require_dim(d, 1);
  u = std::abs(u);
  const double lo = std::max(-rho, u - Rp);
  const double hi = std::min(rho, u + Rp);
  if (!(hi > lo)) return {};
  if (d == 1) {
    const double inv = 1.0 / std::numbers::sqrt2;
    return {0.5 * (std::erf(hi * inv) - std::erf(lo * inv)), 0.0};
  }
  if (u == 0.0) return gaussian_ball_mass(d, 0.0, std::min(rho, Rp));
  if (u + std::min(rho, Rp) <= std::max(rho, Rp) && Rp >= u + rho) return gaussian_ball_mass(d, 0.0, rho);
  const double a = 0.5 * (dbl(d) - 1.0);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  auto f = [&](double x) {
    const double h = 0.5 * std::min(rho * rho - x * x, Rp * Rp - (x - u) * (x - u));
    if (h <= 0) return 0.0;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x) * boost::math::gamma_p(a, h);
  };
  const double kink = (rho * rho - Rp * Rp + u * u) / (2.0 * u);
  const double breaks[] = {kink};
  return integrate_endpoint_singular(f, lo, hi, 1e-10, breaks);
}

QuadResult log_intersection_mass(std::size_t d, double rho, double u, double Rp) {
  require_dim(d, 2);
  u = std::abs(u);
  const double lo = std::max(-rho, u - Rp);
  const double hi = std::min(rho, u + Rp);
  if (!(hi > lo)) return {kNegInf, 0.0};
  if (u == 0.0) return log_gaussian_ball_mass(d, 0.0, std::min(rho, Rp));
  const double a = 0.5 * (dbl(d) - 1.0);
  const double log_norm = -0.5 * std::log(2.0 * kPi);
  auto lf = [&](double x) {
    const double h = 0.5 * std::min(rho * rho - x * x, Rp * Rp - (x - u) * (x - u));
    if (h <= 0) return kNegInf;
    return log_norm - 0.5 * x * x + log_gamma_p(a, h);
  };
  const double kink = (rho * rho - Rp * Rp + u * u) / (2.0 * u);
  const double breaks[] = {kink};
  return log_integrate(lf, lo, hi, breaks, 1e-10);
}

double log_l1_upper_bound(std::size_t d) {
  require_dim(d, 1);
  const double dd = dbl(d);
  const double first = (dd - 1.0) * std::log(2.0) + 0.5 * std::log(2.0 * kPi * dd);
  const double second = 0.5 * std::log(kPi * (dd + 1.0)) + (dd + 1.0) * std::log(2.0 / std::numbers::sqrt3);
  return log_add_exp(first, second);
}

double l1_upper_bound(std::size_t d) { return std::exp(log_l1_upper_bound(d)); }

GaussBoundReport weak_lower_bound(std::size_t d, double p) {
  require_dim(d, 10);
  if (!(p >= 1) || !std::isfinite(p)) throw std::invalid_argument("p must lie in [1, inf)");
  GaussBoundReport rep;
  rep.d = d;
  rep.p = p;
  rep.log_upper = log_l1_upper_bound(d) / p;
  rep.upper = std::exp(rep.log_upper);
  const double s = std::sqrt(dbl(d) - 1.0);
  const double radius = kHalfSqrt3 * s;
  double max_err = 0.0;

  // log of the average of 1_{B(0, radius)} over B(u e1, radius).
  auto log_avg = [&](double u) {
    const QuadResult num = log_intersection_mass(d, radius, u, radius);
    const QuadResult den = log_gaussian_ball_mass(d, u, radius);
    return std::pair{num.value - den.value, num.error + den.error};
  };
  auto scan = [&](double lo, double hi, std::size_t n) {
    std::vector<double> us(n), vals(n), errs(n);
    for (std::size_t i = 0; i < n; ++i) us[i] = lo + (hi - lo) * dbl(i) / dbl(n - 1);
    parallel_for(n, [&](std::size_t i) { std::tie(vals[i], errs[i]) = log_avg(us[i]); });
    const auto it = std::min_element(vals.begin(), vals.end());
    const std::size_t k = static_cast<std::size_t>(it - vals.begin());
    max_err = std::max(max_err, *std::max_element(errs.begin(), errs.end()));
    return std::tuple{us[k], vals[k], (hi - lo) / dbl(n - 1)};
  };

  constexpr std::size_t kGrid = 256;
  const double u_lo = s - 1.0 / s;
  const double u_hi = s;
  auto [u1, v1, h1] = scan(u_lo, u_hi, kGrid);
  auto [u2, v2, h2] = scan(std::max(u_lo, u1 - h1), std::min(u_hi, u1 + h1), kGrid);
  const bool refined_better = v2 <= v1;
  rep.alpha_u = refined_better ? u2 : u1;
  const double log_alpha = std::min(v1, v2);
  rep.alpha = std::exp(log_alpha);
  rep.grid_step = h2;

  rep.log_shell = shell_mass(d).log_mass;
  rep.log_ball = log_gamma_p(0.5 * dbl(d), 0.5 * radius * radius);
  rep.log_value = log_alpha + (rep.log_shell - rep.log_ball) / p;
  rep.value = std::exp(rep.log_value);

  // Level sweep: the running minimum m(u) of the average over [0, u] is a
  // level whose superlevel set contains B(0, u).
  constexpr std::size_t kSweep = 512;
  const double u_end = 2.0 * radius;
  std::vector<double> us(kSweep), vals(kSweep), errs(kSweep);
  for (std::size_t i = 0; i < kSweep; ++i) us[i] = u_end * dbl(i + 1) / dbl(kSweep);
  parallel_for(kSweep, [&](std::size_t i) { std::tie(vals[i], errs[i]) = log_avg(us[i]); });
  double running = 0.0;  // log 1: the average at the origin
  double best = kNegInf;
  for (std::size_t i = 0; i < kSweep; ++i) {
    running = std::min(running, vals[i]);
    if (running == kNegInf) break;
    const double log_level_mass = log_gamma_p(0.5 * dbl(d), 0.5 * us[i] * us[i]);
    best = std::max(best, running + (log_level_mass - rep.log_ball) / p);
  }
  rep.log_level_sweep = best;
  rep.quadrature_error = max_err;
  return rep;
}

nlohmann::json GaussBoundReport::to_json() const {
  return {{"d", d},
          {"p", number_to_json(p)},
          {"upper", number_to_json(upper)},
          {"log_upper", number_to_json(log_upper)},
          {"alpha", number_to_json(alpha)},
          {"alpha_offset", number_to_json(alpha_u)},
          {"offset_grid_step", number_to_json(grid_step)},
          {"log_shell_mass", number_to_json(log_shell)},
          {"log_ball_mass", number_to_json(log_ball)},
          {"value", number_to_json(value)},
          {"log_value", number_to_json(log_value)},
          {"log_level_sweep", number_to_json(log_level_sweep)},
          {"quadrature_rel_error", number_to_json(quadrature_error)}};
}

GRatioReport G_ratio_check(std::size_t d) {
  require_dim(d, 3);
  GRatioReport rep;
  rep.d = d;
  const double dd = dbl(d);
  const double g0 = cs_G(kHalfSqrt3);
  const double g1 = cs_G(kHalfSqrt3 + 1.0 / (dd - 1.0));
  rep.ratio = std::exp(0.5 * (dd - 1.0) * (std::log(g0) - std::log(g1)));
  rep.chain = std::exp(-0.5 * (dd - 1.0) * std::log1p(std::numbers::sqrt3 / (dd - 1.0)));
  rep.above_inv_e = rep.ratio > std::exp(-1.0);
  const double h = 1e-4;
  rep.concave = (cs_G(kHalfSqrt3 + h) - 2.0 * g0 + cs_G(kHalfSqrt3 - h)) / (h * h) < 0;
  return rep;
}

DiscreteGaussian discretized_gaussian(std::size_t d, double half_width, std::size_t points_per_axis) {
  if (d < 1 || d > 3) throw std::invalid_argument("discretized Gaussian supports d in 1..3");
  if (points_per_axis < 2) throw std::invalid_argument("need at least two points per axis");
  const double h = 2.0 * half_width / dbl(points_per_axis - 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= points_per_axis;
  std::vector<Atom> atoms;
  atoms.reserve(total);
  const double log_cell = dbl(d) * (std::log(h) - 0.5 * std::log(2.0 * kPi));
  for (std::size_t idx = 0; idx < total; ++idx) {
    Coords c(d);
    std::size_t rem = idx;
    double r2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      c[j] = -half_width + h * dbl(rem % points_per_axis);
      rem /= points_per_axis;
      r2 += c[j] * c[j];
    }
    atoms.push_back({std::move(c), std::exp(log_cell - 0.5 * r2)});
  }
  return {Space::euclidean(d), atomic(std::move(atoms))};
}

double discretized_gaussian_l1(std::size_t d, std::span<const double> radii) {
  static constexpr double kHalfWidth[] = {0.0, 5.0, 4.0, 3.6};
  static constexpr std::size_t kPoints[] = {0, 201, 41, 13};
  if (d < 1 || d > 3) throw std::invalid_argument("discretized Gaussian supports d in 1..3");
  const auto dg = discretized_gaussian(d, kHalfWidth[d], kPoints[d]);
  double best = 0.0;
  for (double r : radii) best = std::max(best, op_norm_l1(build_kernel(dg.measure, dg.space, r)).value);
  return best;
}

}  // namespace mms
