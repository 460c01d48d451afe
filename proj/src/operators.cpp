#include "mms/operators.hpp"

#include <algorithm>
#include <cmath>

namespace mms {

namespace {

FunctionOnSpace absolute(const FunctionOnSpace& f) {
  if (const auto* t = std::get_if<TableFunction>(&f)) {
    TableFunction out = *t;
    for (auto& v : out.values) v = std::abs(v);
    return out;
  }
  if (const auto* c = std::get_if<CallableFunction>(&f))
    return CallableFunction{[fn = c->fn](const Point& p) { return std::abs(fn(p)); }};
  auto d = std::get<DiracProbe>(f);
  d.coefficient = std::abs(d.coefficient);
  return d;
}

double line_coordinate(const Point& p) {
  if (const auto* x = std::get_if<double>(&p)) return *x;
  if (const auto* c = std::get_if<Coords>(&p); c && c->size() == 1) return (*c)[0];
  throw std::invalid_argument("directional averages live on the real line");
}

// Every point a ball family must distinguish: the atoms and the Dirac location.
std::vector<Point> relevant_points(const Measure& m, const FunctionOnSpace& f) {
  std::vector<Point> pts;
  if (const auto* a = std::get_if<Atomic>(&m))
    for (const auto& atom : a->atoms) pts.push_back(atom.location);
  if (const auto* d = std::get_if<DiracProbe>(&f)) pts.push_back(d->location);
  return pts;
}

double grid_epsilon(const Space& s, const std::vector<Point>& pts, const Point& x) {
  double max_d = 0.0;
  for (const auto& p : pts) max_d = std::max(max_d, s.distance(x, p));
  const double eps = 1e-9 * (max_d > 0 ? max_d : 1.0);
  return std::max(eps, 4.0 * s.tolerance());
}

// Distinct radii d + eps for d >= floor among the distances from c to pts.
std::vector<double> radii_from(const Space& s, const std::vector<Point>& pts, const Point& c,
                               double floor, double eps) {
  std::vector<double> ds;
  for (const auto& p : pts) {
    const double d = s.distance(c, p);
    if (d >= floor) ds.push_back(d);
  }
  ds.push_back(floor);
  std::sort(ds.begin(), ds.end());
  std::vector<double> radii;
  for (double d : ds)
    if (radii.empty() || d + eps - radii.back() > 0.5 * eps) radii.push_back(d + eps);
  return radii;
}

// Average of f on a ball, or nullopt when the ball has no mass.
std::optional<double> try_average(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                  const Ball& b) {
  if (const auto* a = std::get_if<Atomic>(&m)) {
    // single pass over the atoms
    double mass = 0.0;
    double sum = 0.0;
    const auto* table = std::get_if<TableFunction>(&f);
    const auto* call = std::get_if<CallableFunction>(&f);
    for (std::size_t i = 0; i < a->atoms.size(); ++i) {
      const auto& atom = a->atoms[i];
      if (!s.contains(b, atom.location)) continue;
      mass += atom.weight;
      if (table) sum += atom.weight * table->values.at(i);
      if (call) sum += atom.weight * call->fn(atom.location);
    }
    if (!(mass > 0)) return std::nullopt;
    if (const auto* d = std::get_if<DiracProbe>(&f))
      sum = s.contains(b, d->location) ? d->coefficient : 0.0;
    return sum / mass;
  }
  const double mass = ball_mass(m, s, b);
  if (!(mass > 0)) return std::nullopt;
  return integrate(m, s, f, b) / mass;
}

}  // namespace

double average(const Measure& m, const Space& s, double r, const FunctionOnSpace& f, const Point& x,
               bool closed) {
  s.validate_point(x);
  const Ball b(x, r, closed);
  const auto v = try_average(m, s, f, b);
  if (!v) throw UndefinedAtPoint("ball has zero mass; the average is undefined here");
  return *v;
}

std::vector<double> auto_radius_grid(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                     const Point& x) {
  const auto pts = relevant_points(m, f);
  if (pts.empty()) throw std::invalid_argument("auto radius grid needs atoms");
  return radii_from(s, pts, x, 0.0, grid_epsilon(s, pts, x));
}

MaximalResult maximal_centered(const Measure& m, const Space& s, const FunctionOnSpace& f,
                               const Point& x, std::span<const double> radii) {
  s.validate_point(x);
  const FunctionOnSpace g = absolute(f);
  MaximalResult best;
  best.center = x;
  best.value = -1.0;
  std::vector<double> grid;
  if (radii.empty()) {
    if (!std::holds_alternative<Atomic>(m))
      throw std::invalid_argument("continuous measures need an explicit radius grid");
    grid = auto_radius_grid(m, s, g, x);
    best.direction = Direction::exact;
  } else {
    grid.assign(radii.begin(), radii.end());
  }
  for (double r : grid) {
    const auto v = try_average(m, s, g, Ball(x, r));
    if (!v) continue;
    ++best.balls_checked;
    if (*v > best.value) {
      best.value = *v;
      best.radius = r;
    }
  }
  if (best.balls_checked == 0) throw std::invalid_argument("no radius in the grid gives a ball of positive mass");
  return best;
}

MaximalResult maximal_uncentered(const Measure& m, const Space& s, const FunctionOnSpace& f,
                                 const Point& x, std::span<const double> radii,
                                 std::span<const Point> centers) {
  s.validate_point(x);
  const FunctionOnSpace g = absolute(f);
  const bool atomic_auto = std::holds_alternative<Atomic>(m) && radii.empty();
  std::vector<Point> cs;
  if (centers.empty()) {
    if (!std::holds_alternative<Atomic>(m))
      throw std::invalid_argument("continuous measures need an explicit center grid");
    if (s.is_finite()) {
      cs = s.universe();
    } else {
      for (const auto& atom : std::get<Atomic>(m).atoms) cs.push_back(atom.location);
    }
  } else {
    cs.assign(centers.begin(), centers.end());
  }
  cs.push_back(x);
  if (!atomic_auto && radii.empty()) throw std::invalid_argument("continuous measures need an explicit radius grid");

  const auto pts = relevant_points(m, g);
  MaximalResult best;
  best.value = -1.0;
  best.direction = atomic_auto && centers.empty() ? Direction::exact : Direction::lower;
  for (const auto& c : cs) {
    const double dcx = s.distance(c, x);
    std::vector<double> grid;
    if (atomic_auto) {
      grid = radii_from(s, pts, c, dcx, grid_epsilon(s, pts, c));
    } else {
      for (double r : radii)
        if (s.within(dcx, r, false)) grid.push_back(r);
    }
    for (double r : grid) {
      const auto v = try_average(m, s, g, Ball(c, r));
      if (!v) continue;
      ++best.balls_checked;
      if (*v > best.value) {
        best.value = *v;
        best.radius = r;
        best.center = c;
      }
    }
  }
  if (best.balls_checked == 0) throw std::invalid_argument("no ball in the family contains the point with positive mass");
  return best;
}

double directional_average_right(const Measure& m, double span, const FunctionOnSpace& f, double x) {
  if (!(span > 0)) throw std::invalid_argument("window length must be positive");
  const double lo = x;
  const double hi = x + span;
  double mass = 0.0;
  double sum = 0.0;
  const auto* dirac = std::get_if<DiracProbe>(&f);
  if (const auto* a = std::get_if<Atomic>(&m)) {
    for (std::size_t i = 0; i < a->atoms.size(); ++i) {
      const double t = line_coordinate(a->atoms[i].location);
      if (t < lo || t > hi) continue;
      mass += a->atoms[i].weight;
      if (!dirac) sum += a->atoms[i].weight * evaluate(f, a->atoms[i].location, i);
    }
  } else if (const auto* dm = std::get_if<Density1D>(&m)) {
    mass = interval_mass(*dm, lo, hi);
    if (!dirac && mass > 0) {
      const auto& fn = std::get<CallableFunction>(f).fn;
      const double a = std::max(lo, dm->domain.lo);
      const double b = std::min(hi, dm->domain.hi);
      sum = integrate_adaptive([&](double t) { return fn(Point{t}) * dm->density(t); }, a, b, 1e-9,
                               dm->breakpoints)
                .value;
    }
  } else {
    throw std::invalid_argument("directional averages need a measure on the line");
  }
  if (!(mass > 0)) throw UndefinedAtPoint("window has zero mass; the average is undefined here");
  if (dirac) {
    const double y = line_coordinate(dirac->location);
    sum = (y >= lo && y <= hi) ? dirac->coefficient : 0.0;
  }
  return sum / mass;
}

QuadResult directional_dirac_l1(const Density1D& m, double span, double y) {
  if (!(span > 0)) throw std::invalid_argument("window length must be positive");
  auto window = [&](double u) {
    return m.anchored_mass ? m.anchored_mass(y, -u, span - u) : interval_mass(m, y - u, y - u + span);
  };
  auto dens = [&](double u) { return m.anchored_density ? m.anchored_density(y, -u) : m.density(y - u); };
  const double u_max = std::min(span, y - m.domain.lo);
  const double u_min = std::max(0.0, y - m.domain.hi);
  if (!(u_max > u_min)) return {};
  auto integrand = [&](double u) {
    const double w = window(u);
    return w > 0 ? dens(u) / w : 0.0;
  };
  // The window mass at u = 0 sets the width of the boundary layer.
  const double layer = std::clamp(window(u_min), 1e-300, 0.25 * (u_max - u_min));
  return integrate_graded(integrand, u_min, u_max, layer, 1e-10);
}

double apply(const OperatorSpec& spec, const Measure& m, const Space& s, const FunctionOnSpace& f,
             const Point& x) {
  switch (spec.kind) {
    case OperatorSpec::Kind::average: return average(m, s, spec.radius, f, x);
    case OperatorSpec::Kind::maximal_centered: return maximal_centered(m, s, f, x, spec.radii).value;
    case OperatorSpec::Kind::maximal_uncentered:
      return maximal_uncentered(m, s, f, x, spec.radii, spec.centers).value;
    case OperatorSpec::Kind::directional_right:
      return directional_average_right(m, spec.radius, f, line_coordinate(x));
  }
  return 0.0;
}

}  // namespace mms
