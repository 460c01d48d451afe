#include "mms/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace mms {

namespace {

constexpr std::size_t kMaxSplits = 20000;
// Segments whose error is at the level of rounding in the rule are final.
constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

struct Segment {
  double a = 0.0, b = 0.0, value = 0.0, error = 0.0, l1 = 0.0;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// One Gauss-Kronrod 15/31 pass; Boost supplies nodes and weights.
Segment gk31(const RealFn& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& x = gauss_kronrod<double, 31>::abscissa();
  const auto& wk = gauss_kronrod<double, 31>::weights();
  const auto& wg = gauss<double, 15>::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double f0 = f(c);
  double k = f0 * wk[0], g = f0 * wg[0], l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(c + h * x[i]);
    const double fm = f(c - h * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) g += (fp + fm) * wg[i / 2];
  }
  const double err = std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
  return {a, b, k * h, err * std::abs(h), l1 * std::abs(h)};
}

std::vector<double> cut_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts{a};
  for (double x : breaks) {
    if (x > a && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void check_tolerance(const QuadResult& r, double l1, double rel_tol) {
  if (!std::isfinite(r.value) || !std::isfinite(r.error))
    throw QuadratureError("quadrature produced a non-finite value", r.error);
  const double scale = std::max(l1, std::abs(r.value));
  if (scale > 0 && r.error > 100.0 * rel_tol * scale && r.error > 1e-300) {
    throw QuadratureError("quadrature did not reach requested tolerance",
                          r.error / scale);
  }
}

}  // namespace

QuadResult integrate_adaptive(const RealFn& f, double a, double b, double rel_tol,
                              std::span<const double> breaks) {
  if (!(a < b)) return {};
  if (std::isinf(a) && std::isinf(b)) {
    const QuadResult l = integrate_adaptive(f, a, 0.0, rel_tol, breaks);
    const QuadResult r = integrate_adaptive(f, 0.0, b, rel_tol, breaks);
    return {l.value + r.value, l.error + r.error};
  }
  // Half-lines are mapped to [0, 1) by x = a + t / (1 - t).
  if (std::isinf(b)) {
    std::vector<double> mapped;
    for (double x : breaks)
      if (x > a) mapped.push_back((x - a) / (1.0 + x - a));
    auto g = [&](double t) {
      if (t >= 1.0) return 0.0;
      const double u = 1.0 - t;
      return f(a + t / u) / (u * u);
    };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, mapped);
  }
  if (std::isinf(a)) {
    std::vector<double> mapped;
    for (double x : breaks)
      if (x < b) mapped.push_back((b - x) / (1.0 + b - x));
    auto g = [&](double t) {
      if (t >= 1.0) return 0.0;
      const double u = 1.0 - t;
      return f(b - t / u) / (u * u);
    };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, mapped);
  }

  std::priority_queue<Segment> queue;
  double value = 0.0, error = 0.0, l1 = 0.0;
  const auto pts = cut_points(a, b, breaks);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Segment seg = gk31(f, pts[i], pts[i + 1]);
    value += seg.value;
    error += seg.error;
    l1 += seg.l1;
    queue.push(seg);
  }
  // Global adaptivity: keep bisecting the worst segment.
  for (std::size_t splits = 0; splits < kMaxSplits && !queue.empty(); ++splits) {
    if (error <= rel_tol * std::max(std::abs(value), 1e-3 * l1)) break;
    const Segment worst = queue.top();
    if (worst.error <= kRoundoff * worst.l1) break;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    const Segment left = gk31(f, worst.a, mid);
    const Segment right = gk31(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift of the running totals.
  value = error = l1 = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    l1 += queue.top().l1;
    queue.pop();
  }
  QuadResult total{value, error};
  check_tolerance(total, l1, rel_tol);
  return total;
}

QuadResult integrate_endpoint_singular(const RealFn& f, double a, double b, double rel_tol,
                                       std::span<const double> breaks) {
  if (!(a < b)) return {};
  boost::math::quadrature::tanh_sinh<double> integrator(12);
  QuadResult total;
  double l1_total = 0.0;
  const auto pts = cut_points(a, b, breaks);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = integrator.integrate(f, pts[i], pts[i + 1], rel_tol, &err, &l1);
    total.value += v;
    total.error += err;
    l1_total += l1;
  }
  check_tolerance(total, l1_total, rel_tol);
  return total;
}

QuadResult integrate_graded(const RealFn& f, double a, double b, double layer,
                            double rel_tol) {
  std::vector<double> breaks;
  if (layer > 0) {
    for (double w = layer; a + w < b; w *= 4.0) breaks.push_back(a + w);
  }
  return integrate_adaptive(f, a, b, rel_tol, breaks);
}

QuadResult log_integrate(const RealFn& log_f, double a, double b,
                         std::span<const double> breaks, double rel_tol) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!(a < b)) return {kNegInf, 0.0};

  // Coarse scan for the peak, then golden-section polish around it.
  constexpr int kScan = 256;
  double best_x = a;
  double best = kNegInf;
  for (int i = 0; i <= kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    const double v = log_f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  for (double x : breaks) {
    if (x > a && x < b) {
      const double v = log_f(x);
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
  }
  if (best == kNegInf) return {kNegInf, 0.0};
  {
    const double h = (b - a) / kScan;
    double lo = std::max(a, best_x - h);
    double hi = std::min(b, best_x + h);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = log_f(x1);
    double f2 = log_f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + std::abs(best_x)); ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = log_f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = log_f(x1);
      }
    }
    const double xm = 0.5 * (lo + hi);
    const double vm = log_f(xm);
    if (vm > best) {
      best = vm;
      best_x = xm;
    }
  }

  std::vector<double> all_breaks(breaks.begin(), breaks.end());
  all_breaks.push_back(best_x);
  const double shift = best;
  auto scaled = [&](double x) {
    const double v = log_f(x);
    return v == kNegInf ? 0.0 : std::exp(v - shift);
  };
  const QuadResult r = integrate_adaptive(scaled, a, b, rel_tol, all_breaks);
  if (r.value <= 0) return {kNegInf, 0.0};
  return {shift + std::log(r.value), r.error / r.value};
}

double log_gamma_p(double a, double x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  // P(a, x) = x^a e^{-x} / Gamma(a + 1) * sum_k x^k / ((a+1)...(a+k)); the
  // series converges geometrically for x well below a.
  auto series = [&] {
    const double log_prefix = a * std::log(x) - x - std::lgamma(a + 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return log_prefix + std::log(sum);
  };
  if (x < 0.5 * a) return series();
  try {
    const double p = boost::math::gamma_p(a, x);
    if (p > 1e-280) return std::log(p);
  } catch (const std::overflow_error&) {
  }
  return series();
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sub_exp(double a, double b) {
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log(-std::expm1(b - a));
}

}  // namespace mms
