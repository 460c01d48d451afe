#include "mms/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "mms/parallel.hpp"

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDensityTol = 1e-9;

double scalar_of(const Point& p) {
  if (const auto* x = std::get_if<double>(&p)) return *x;
  if (const auto* c = std::get_if<Coords>(&p); c && c->size() == 1) return (*c)[0];
  throw std::invalid_argument("expected a point on the line");
}

Coords coords_of(const Point& p, std::size_t dim) {
  if (const auto* c = std::get_if<Coords>(&p)) {
    if (c->size() != dim) throw std::invalid_argument("point dimension does not match the measure");
    return *c;
  }
  if (const auto* x = std::get_if<double>(&p); x && dim == 1) return {*x};
  throw std::invalid_argument("expected a Euclidean point");
}

void require_gaussian_space(const Gaussian& g, const Space& s) {
  if (s.kind() != SpaceKind::euclidean || s.exponent() != 2.0 || s.dimension() != g.dim)
    throw std::invalid_argument("Gaussian measure needs Euclidean l2 space of matching dimension");
}

double log_normalizer(const Gaussian& g) {
  return g.normalized ? 0.0 : 0.5 * static_cast<double>(g.dim) * std::log(2.0 * std::numbers::pi);
}

std::vector<Interval> line_preimage(const Density1D& m, const Ball& b) {
  const double c = scalar_of(b.center);
  return {{std::max(c - b.radius, m.domain.lo), std::min(c + b.radius, m.domain.hi)}};
}

}  // namespace

Measure atomic(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.weight > 0) || !std::isfinite(a.weight))
      throw std::invalid_argument("atom weights must be positive and finite");
  }
  return Atomic{std::move(atoms)};
}

Measure counting(const Space& s) {
  if (!s.is_finite()) throw std::invalid_argument("counting measure needs a finite space");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < s.cardinality(); ++i) atoms.push_back({Node{i}, 1.0});
  return Atomic{std::move(atoms)};
}

Measure exponential() {
  Density1D m;
  m.name = "exponential";
  m.domain = {0.0, kInf};
  m.density = [](double t) { return t >= 0 ? std::exp(-t) : 0.0; };
  m.interval_mass = [](double a, double b) {
    a = std::max(a, 0.0);
    if (!(b > a)) return 0.0;
    return std::exp(-a) * -std::expm1(-(b - a));
  };
  m.anchored_mass = [](double anchor, double lo, double hi) {
    lo = std::max(lo, -anchor);
    if (!(hi > lo)) return 0.0;
    return std::exp(-(anchor + lo)) * -std::expm1(-(hi - lo));
  };
  m.anchored_density = [](double anchor, double off) { return anchor + off >= 0 ? std::exp(-(anchor + off)) : 0.0; };
  m.breakpoints = {0.0};
  return m;
}

Measure lebesgue_line() {
  Density1D m;
  m.name = "lebesgue";
  m.domain = {-kInf, kInf};
  m.density = [](double) { return 1.0; };
  m.interval_mass = [](double a, double b) { return b > a ? b - a : 0.0; };
  m.anchored_mass = [](double, double lo, double hi) { return hi > lo ? hi - lo : 0.0; };
  m.anchored_density = [](double, double) { return 1.0; };
  return m;
}

Measure gaussian(std::size_t dim, bool normalized) {
  if (dim == 0) throw std::invalid_argument("Gaussian dimension must be at least 1");
  return Gaussian{dim, normalized};
}

FunctionOnSpace constant_function(double c) {
  return CallableFunction{[c](const Point&) { return c; }};
}

std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return !(i.hi > i.lo); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<Interval> ball_preimage(const Density1D& m, const Space& s, const Ball& b) {
  auto raw = m.preimage ? m.preimage(s, b) : line_preimage(m, b);
  for (auto& i : raw) {
    i.lo = std::max(i.lo, m.domain.lo);
    i.hi = std::min(i.hi, m.domain.hi);
  }
  return merge_intervals(std::move(raw));
}

double interval_mass(const Density1D& m, double a, double b) {
  a = std::max(a, m.domain.lo);
  b = std::min(b, m.domain.hi);
  if (!(b > a)) return 0.0;
  if (m.interval_mass) return m.interval_mass(a, b);
  return integrate_adaptive(m.density, a, b, kDensityTol, m.breakpoints).value;
}

QuadResult gaussian_ball_mass(std::size_t d, double u, double radius) {
  u = std::abs(u);
  if (d == 0) throw std::invalid_argument("dimension must be at least 1");
  if (d == 1) {
    const double lo = (u - radius) / std::numbers::sqrt2;
    const double hi = (u + radius) / std::numbers::sqrt2;
    const double v = lo > 0 ? 0.5 * (std::erfc(lo) - std::erfc(hi)) : 0.5 * (std::erf(hi) - std::erf(lo));
    return {v, 0.0};
  }
  if (u == 0.0) return {boost::math::gamma_p(0.5 * d, 0.5 * radius * radius), 0.0};
  // x1 = u + R sin(theta) makes the transverse chi-square factor smooth at
  // both ends of the chord.
  const double a = 0.5 * static_cast<double>(d - 1);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto f = [&](double th) {
    const double c = std::cos(th);
    const double x = u + radius * std::sin(th);
    const double h = 0.5 * radius * radius * c * c;
    if (h <= 0) return 0.0;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x) * boost::math::gamma_p(a, h) * radius * c;
  };
  return integrate_adaptive(f, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, 1e-11);
}

QuadResult log_gaussian_ball_mass(std::size_t d, double u, double radius) {
  u = std::abs(u);
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
  if (d == 1) {
    const QuadResult r = gaussian_ball_mass(d, u, radius);
    if (r.value > 1e-280) return {std::log(r.value), 0.0};
    return log_integrate([&](double x) { return log_norm - 0.5 * x * x; }, u - radius, u + radius);
  }
  if (u == 0.0) return {log_gamma_p(0.5 * d, 0.5 * radius * radius), 0.0};
  const double a = 0.5 * static_cast<double>(d - 1);
  auto lf = [&](double th) {
    const double c = std::cos(th);
    const double x = u + radius * std::sin(th);
    const double h = 0.5 * radius * radius * c * c;
    if (h <= 0 || c <= 0) return -kInf;
    return log_norm - 0.5 * x * x + log_gamma_p(a, h) + std::log(radius * c);
  };
  return log_integrate(lf, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, {}, 1e-11);
}

double log_unit_ball_volume(std::size_t d) {
  const double dd = static_cast<double>(d);
  return 0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd + 1.0);
}

double ball_mass(const Measure& m, const Space& s, const Ball& b) {
  s.validate_point(b.center);
  if (const auto* a = std::get_if<Atomic>(&m)) {
    double total = 0.0;
    for (const auto& atom : a->atoms)
      if (s.contains(b, atom.location)) total += atom.weight;
    return total;
  }
  if (const auto* dm = std::get_if<Density1D>(&m)) {
    double total = 0.0;
    for (const auto& i : ball_preimage(*dm, s, b)) total += interval_mass(*dm, i.lo, i.hi);
    return total;
  }
  const auto& g = std::get<Gaussian>(m);
  require_gaussian_space(g, s);
  const Coords c = coords_of(b.center, g.dim);
  double u2 = 0.0;
  for (double v : c) u2 += v * v;
  const QuadResult r = gaussian_ball_mass(g.dim, std::sqrt(u2), b.radius);
  return g.normalized ? r.value : r.value * std::exp(log_normalizer(g));
}

double total_mass(const Measure& m) {
  if (const auto* a = std::get_if<Atomic>(&m)) {
    double total = 0.0;
    for (const auto& atom : a->atoms) total += atom.weight;
    return total;
  }
  if (const auto* dm = std::get_if<Density1D>(&m)) return interval_mass(*dm, dm->domain.lo, dm->domain.hi);
  return std::exp(log_normalizer(std::get<Gaussian>(m)));
}

McEstimate ball_mass_mc(const Measure& m, const Ball& b, std::uint64_t n, std::uint64_t seed,
                        McMethod method) {
  const auto* g = std::get_if<Gaussian>(&m);
  if (!g) throw std::invalid_argument("Monte Carlo ball mass is for Gaussian measures");
  if (n < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  const std::size_t d = g->dim;
  const Coords c = coords_of(b.center, d);
  const double r = b.radius;
  const double log_scale = log_normalizer(*g);
  const double log_vol = log_unit_ball_volume(d) + static_cast<double>(d) * std::log(r);
  const double log_phi0 = -0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi);

  constexpr std::uint64_t kChunk = 65536;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<long double> sum(chunks, 0.0L), sumsq(chunks, 0.0L);
  parallel_for(chunks, [&](std::size_t k) {
    std::mt19937_64 rng(chunk_seed(seed, k));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    const std::uint64_t count = std::min(kChunk, n - k * kChunk);
    std::vector<double> z(d);
    long double s1 = 0, s2 = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      double v = 0.0;
      if (method == McMethod::hit_or_miss) {
        double dist2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double x = normal(rng) - c[j];
          dist2 += x * x;
        }
        v = dist2 < r * r ? 1.0 : 0.0;
      } else {
        double norm2 = 0.0;
        for (auto& zj : z) {
          zj = normal(rng);
          norm2 += zj * zj;
        }
        const double scale = r * std::pow(unif(rng), 1.0 / static_cast<double>(d)) / std::sqrt(norm2);
        double x2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double x = c[j] + scale * z[j];
          x2 += x * x;
        }
        v = std::exp(log_vol + log_phi0 - 0.5 * x2);
      }
      s1 += v;
      s2 += static_cast<long double>(v) * v;
    }
    sum[k] = s1;
    sumsq[k] = s2;
  });
  long double s1 = 0, s2 = 0;
  for (std::uint64_t k = 0; k < chunks; ++k) {
    s1 += sum[k];
    s2 += sumsq[k];
  }
  const long double nn = static_cast<long double>(n);
  const long double mean = s1 / nn;
  const long double var = std::max(0.0L, (s2 / nn - mean * mean) * nn / (nn - 1));
  const double scale = std::exp(log_scale);
  return {static_cast<double>(mean) * scale, static_cast<double>(std::sqrt(var / nn)) * scale, n, seed};
}

double evaluate(const FunctionOnSpace& f, const Point& p, std::optional<std::size_t> atom) {
  if (const auto* t = std::get_if<TableFunction>(&f)) {
    if (!atom || *atom >= t->values.size())
      throw std::invalid_argument("table function needs a valid atom index");
    return t->values[*atom];
  }
  if (const auto* c = std::get_if<CallableFunction>(&f)) return c->fn(p);
  throw std::invalid_argument("a Dirac probe has no pointwise value");
}

QuadResult integrate_with_error(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                const std::optional<Ball>& region) {
  if (const auto* dirac = std::get_if<DiracProbe>(&f)) {
    s.validate_point(dirac->location);
    const bool inside = !region || s.contains(*region, dirac->location);
    return {inside ? dirac->coefficient : 0.0, 0.0};
  }
  if (const auto* a = std::get_if<Atomic>(&m)) {
    if (const auto* t = std::get_if<TableFunction>(&f); t && t->values.size() != a->atoms.size())
      throw std::invalid_argument("table length must equal the atom count");
    double total = 0.0;
    for (std::size_t i = 0; i < a->atoms.size(); ++i) {
      const auto& atom = a->atoms[i];
      if (region && !s.contains(*region, atom.location)) continue;
      total += atom.weight * evaluate(f, atom.location, i);
    }
    return {total, 0.0};
  }
  const auto* call = std::get_if<CallableFunction>(&f);
  if (!call) throw std::invalid_argument("continuous measures integrate callable functions only");
  if (const auto* dm = std::get_if<Density1D>(&m)) {
    std::vector<Interval> parts =
        region ? ball_preimage(*dm, s, *region) : std::vector<Interval>{dm->domain};
    auto embed = dm->embed ? dm->embed : [](double t) { return Point{t}; };
    auto integrand = [&](double t) { return call->fn(embed(t)) * dm->density(t); };
    QuadResult total;
    for (const auto& i : parts) {
      const QuadResult r = integrate_adaptive(integrand, i.lo, i.hi, kDensityTol, dm->breakpoints);
      total.value += r.value;
      total.error += r.error;
    }
    return total;
  }
  const auto& g = std::get<Gaussian>(m);
  require_gaussian_space(g, s);
  if (g.dim != 1) throw std::invalid_argument("Gaussian integration is one-dimensional; use Monte Carlo");
  const double norm = std::exp(-log_normalizer(g)) / std::sqrt(2.0 * std::numbers::pi);
  auto integrand = [&](double t) { return call->fn(Point{t}) * norm * std::exp(-0.5 * t * t); };
  double lo = -kInf, hi = kInf;
  if (region) {
    const double c = scalar_of(region->center);
    lo = c - region->radius;
    hi = c + region->radius;
  }
  const double breaks[] = {0.0};
  const QuadResult r = integrate_adaptive(integrand, lo, hi, kDensityTol, breaks);
  return {r.value * std::exp(log_normalizer(g)), r.error * std::exp(log_normalizer(g))};
}

double integrate(const Measure& m, const Space& s, const FunctionOnSpace& f,
                 const std::optional<Ball>& region) {
  return integrate_with_error(m, s, f, region).value;
}

Measure load_atomic(const std::filesystem::path& path, const Space& s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file " + path.string());
  std::vector<Atom> atoms;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::istringstream line(raw);
    std::vector<double> fields;
    for (double v; line >> v;) fields.push_back(v);
    if (!line.eof()) throw std::invalid_argument("bad number in measure file: " + raw);
    if (fields.empty()) continue;
    const double w = fields.back();
    fields.pop_back();
    Point p;
    if (s.is_finite()) {
      if (fields.size() != 1 || fields[0] < 0 || fields[0] != std::floor(fields[0]))
        throw std::invalid_argument("finite-space measure lines are 'index weight'");
      p = Node{static_cast<std::size_t>(fields[0])};
    } else {
      p = Coords(fields.begin(), fields.end());
    }
    s.validate_point(p);
    atoms.push_back({std::move(p), w});
  }
  return atomic(std::move(atoms));
}

std::string describe(const Measure& m) {
  if (const auto* a = std::get_if<Atomic>(&m)) return "atomic(" + std::to_string(a->atoms.size()) + " atoms)";
  if (const auto* dm = std::get_if<Density1D>(&m)) return "density(" + dm->name + ")";
  const auto& g = std::get<Gaussian>(m);
  return std::string(g.normalized ? "gaussian" : "gaussian-unnormalized") + "(d=" + std::to_string(g.dim) + ")";
}

}  // namespace mms
