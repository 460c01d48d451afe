#include "mms/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Bits = boost::dynamic_bitset<>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string point_str(const Point& p) {
  if (const auto* n = std::get_if<Node>(&p)) return "node " + std::to_string(n->index);
  if (const auto* x = std::get_if<double>(&p)) return fmt(*x);
  const auto& c = std::get<Coords>(p);
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + fmt(c[i]);
  return out + ")";
}

// Ratio a / b with the conventions of the comparability constants.
std::optional<double> mass_ratio(double a, double b) {
  if (!(a > 0) && !(b > 0)) return std::nullopt;
  if (!(b > 0)) return kInf;
  return a / b;
}

// Exact ball bookkeeping for an atomic measure on a finite space.
class FiniteView {
 public:
  static std::optional<FiniteView> make(const Measure& m, const Space& s) {
    if (!s.is_finite()) return std::nullopt;
    const auto* a = std::get_if<Atomic>(&m);
    if (!a) return std::nullopt;
    FiniteView v(s);
    for (const auto& atom : a->atoms) {
      const auto* node = std::get_if<Node>(&atom.location);
      if (!node) return std::nullopt;
      v.weight_.at(node->index) += atom.weight;
    }
    return v;
  }

  explicit FiniteView(const Space& s) : s_(s), n_(s.cardinality()), weight_(n_, 0.0) {}

  std::size_t size() const { return n_; }

  Bits ball(std::size_t x, double r, bool closed = false) const {
    Bits b(n_);
    for (std::size_t y = 0; y < n_; ++y)
      if (s_.within(s_.distance(x, y), r, closed)) b.set(y);
    return b;
  }

  Bits grow(const Bits& set, double step) const {
    Bits out(n_);
    for (auto x = set.find_first(); x != Bits::npos; x = set.find_next(x)) out |= ball(x, step);
    return out;
  }

  double mass(const Bits& b) const {
    double total = 0.0;
    for (auto y = b.find_first(); y != Bits::npos; y = b.find_next(y)) total += weight_[y];
    return total;
  }

  std::vector<double> ball_masses(double r) const {
    std::vector<double> out(n_);
    for (std::size_t x = 0; x < n_; ++x) out[x] = mass(ball(x, r));
    return out;
  }

 private:
  const Space& s_;
  std::size_t n_;
  std::vector<double> weight_;
};

template <class F>
ConstantEstimate ratio_constant(const std::string& name, const Measure& m, const Space& s,
                                std::span<const Point> centers, std::span<const double> radii, F&& numerator) {
  ConstantEstimate est;
  est.name = name;
  est.value = 1.0;
  std::vector<Point> cs(centers.begin(), centers.end());
  std::vector<double> rs(radii.begin(), radii.end());
  const bool exhaustive = s.is_finite() && cs.empty() && rs.empty() && std::holds_alternative<Atomic>(m);
  if (cs.empty()) {
    if (!s.is_finite()) throw std::invalid_argument(name + ": continuous spaces need explicit centers");
    cs = s.universe();
  }
  if (rs.empty()) {
    if (!s.is_finite()) throw std::invalid_argument(name + ": continuous spaces need explicit radii");
    rs = critical_radii(s);
  }
  for (const auto& x : cs) {
    for (double r : rs) {
      const Ball b(x, r);
      const double den = ball_mass(m, s, b);
      const BlossomMass num = numerator(b, r);
      if (num.direction != Direction::exact) est.direction = Direction::lower;
      const auto q = mass_ratio(num.value, den);
      if (!q) continue;
      ++est.pairs_checked;
      if (*q > est.value) {
        est.value = *q;
        est.witness_radius = r;
        est.witness = point_str(x);
      }
    }
  }
  if (est.pairs_checked == 0) throw std::invalid_argument(name + ": no ball with positive mass among the probes");
  bool all_exact = exhaustive;
  if (est.direction == Direction::lower) all_exact = false;
  est.direction = all_exact ? Direction::exact : Direction::lower;
  est.probe = (exhaustive ? "exhaustive: " : "grid: ") + std::to_string(cs.size()) + " centers x " +
              std::to_string(rs.size()) + " radii";
  return est;
}

}  // namespace

nlohmann::json ConstantEstimate::to_json() const {
  return {{"name", name},
          {"value", number_to_json(value)},
          {"direction", std::string(to_string(direction))},
          {"probe", probe},
          {"pairs_checked", pairs_checked},
          {"witness", witness},
          {"witness_radius", witness_radius}};
}

double union_mass(const Measure& m, const Space& s, std::span<const Ball> balls) {
  if (balls.empty()) return 0.0;
  if (const auto* a = std::get_if<Atomic>(&m)) {
    double total = 0.0;
    for (const auto& atom : a->atoms) {
      for (const auto& b : balls) {
        if (s.contains(b, atom.location)) {
          total += atom.weight;
          break;
        }
      }
    }
    return total;
  }
  if (const auto* dm = std::get_if<Density1D>(&m)) {
    std::vector<Interval> parts;
    for (const auto& b : balls) {
      const auto p = ball_preimage(*dm, s, b);
      parts.insert(parts.end(), p.begin(), p.end());
    }
    double total = 0.0;
    for (const auto& i : merge_intervals(std::move(parts))) total += interval_mass(*dm, i.lo, i.hi);
    return total;
  }
  if (balls.size() == 1) return ball_mass(m, s, balls[0]);
  throw std::invalid_argument("union mass of several balls needs an atomic or 1-D density measure");
}

BlossomMass blossom_mass(const Measure& m, const Space& s, const Ball& base, double step, bool uncentered) {
  if (!(step > 0)) throw std::invalid_argument("blossom step must be positive");
  if (auto fv = FiniteView::make(m, s)) {
    const std::size_t x = std::get<Node>(base.center).index;
    Bits set = fv->grow(fv->ball(x, base.radius, base.closed), step);
    if (uncentered) set = fv->grow(set, step);
    return {fv->mass(set), Direction::exact};
  }
  if (s.kind() == SpaceKind::euclidean && s.convex()) {
    const double grow = uncentered ? 2.0 * step : step;
    return {ball_mass(m, s, Ball(base.center, base.radius + grow)), Direction::exact};
  }
  if (s.is_finite()) throw std::invalid_argument("blossoms on finite spaces need an atomic measure on its nodes");
  const auto samples = s.samples();
  if (samples.empty()) throw std::invalid_argument("blossoms on this space need samples");
  // Grow from the samples: every ball used is inside the true blossom.
  std::vector<Ball> balls{base};
  std::vector<Point> frontier;
  for (const auto& p : samples)
    if (s.contains(base, p)) frontier.push_back(p);
  for (const auto& p : frontier) balls.emplace_back(p, step);
  if (uncentered) {
    const std::vector<Ball> level1 = balls;
    for (const auto& p : samples) {
      const bool inside = std::any_of(level1.begin(), level1.end(), [&](const Ball& b) { return s.contains(b, p); });
      if (inside) balls.emplace_back(p, step);
    }
  }
  return {union_mass(m, s, balls), Direction::lower};
}

std::vector<double> critical_radii(const Space& s) {
  if (!s.is_finite()) throw std::invalid_argument("critical radii exist for finite spaces");
  std::vector<double> vals;
  const std::size_t n = s.cardinality();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = s.distance(i, j);
      vals.insert(vals.end(), {0.5 * d, d, 2.0 * d});
    }
  std::sort(vals.begin(), vals.end());
  std::vector<double> distinct;
  for (double v : vals)
    if (distinct.empty() || v - distinct.back() > 1e-9 * std::max(1.0, v)) distinct.push_back(v);
  std::vector<double> radii;
  if (distinct.empty()) return {1.0};
  radii.push_back(0.5 * distinct.front());
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) radii.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  radii.push_back(distinct.back() + 1.0);
  return radii;
}

ConstantEstimate local_comparability(const Measure& m, const Space& s, double r, std::span<const PointPair> pairs) {
  ConstantEstimate est;
  est.name = "C(mu,r)";
  est.value = 1.0;
  est.witness_radius = r;
  auto consider = [&](double mx, double my, const std::string& label) {
    const auto q1 = mass_ratio(mx, my);
    const auto q2 = mass_ratio(my, mx);
    if (!q1) return;
    ++est.pairs_checked;
    const double q = std::max(*q1, *q2);
    if (q > est.value) {
      est.value = q;
      est.witness = label;
    }
  };
  if (pairs.empty()) {
    auto fv = FiniteView::make(m, s);
    if (!fv) throw std::invalid_argument("local comparability needs probe pairs outside finite atomic spaces");
    const auto masses = fv->ball_masses(r);
    for (std::size_t x = 0; x < fv->size(); ++x)
      for (std::size_t y = x + 1; y < fv->size(); ++y)
        if (s.within(s.distance(x, y), r, false))
          consider(masses[x], masses[y], "node " + std::to_string(x) + " / node " + std::to_string(y));
    est.direction = Direction::exact;
    est.probe = "exhaustive over " + std::to_string(fv->size()) + " points, r=" + fmt(r);
  } else {
    for (const auto& [x, y] : pairs) {
      if (!s.within(s.distance(x, y), r, false)) continue;
      consider(ball_mass(m, s, Ball(x, r)), ball_mass(m, s, Ball(y, r)), point_str(x) + " / " + point_str(y));
    }
    est.direction = Direction::lower;
    est.probe = std::to_string(pairs.size()) + " probe pairs, r=" + fmt(r);
  }
  if (est.pairs_checked == 0) throw std::invalid_argument("no probe pair with d(x, y) < r and positive mass");
  return est;
}

ConstantEstimate comparability_sup(const Measure& m, const Space& s, std::span<const double> radii,
                                   std::span<const PointPair> pairs) {
  std::vector<double> rs(radii.begin(), radii.end());
  if (rs.empty()) {
    if (!s.is_finite()) throw std::invalid_argument("comparability sup needs radii on continuous spaces");
    rs = critical_radii(s);
  }
  ConstantEstimate best;
  best.name = "C(mu)";
  best.value = 1.0;
  best.direction = Direction::exact;
  std::size_t used = 0;
  for (double r : rs) {
    ConstantEstimate e;
    try {
      e = local_comparability(m, s, r, pairs);
    } catch (const std::invalid_argument&) {
      continue;  // no admissible pair at this radius
    }
    ++used;
    best.pairs_checked += e.pairs_checked;
    if (e.direction != Direction::exact) best.direction = Direction::lower;
    if (e.value > best.value) {
      best.value = e.value;
      best.witness = e.witness;
      best.witness_radius = r;
    }
  }
  if (used == 0) throw std::invalid_argument("no admissible probe pair at any radius");
  if (!radii.empty() && best.direction == Direction::exact) best.direction = Direction::lower;
  best.probe = std::to_string(rs.size()) + (radii.empty() ? " critical radii" : " radii") +
               (pairs.empty() ? ", all pairs" : ", " + std::to_string(pairs.size()) + " probe pairs");
  return best;
}

std::vector<PointPair> line_pair_grid(double r, double lo, double hi, std::size_t count, double support_lo) {
  constexpr int kLevels = 24;
  std::vector<PointPair> pairs;
  pairs.reserve(count * 2 * kLevels);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    for (int j = 0; j < kLevels; ++j) {
      const double q = 1e-9 * std::pow(1e9, static_cast<double>(j) / (kLevels - 1));
      for (double sign : {1.0, -1.0}) {
        const double y = x + sign * r * (1.0 - q);
        if (y >= support_lo && y != x) pairs.emplace_back(x, y);
      }
    }
  }
  return pairs;
}

ComparabilityCheck intersecting_comparability_check(const Measure& m, const Space& s, double r, double c,
                                                    std::span<const PointPair> pairs) {
  ComparabilityCheck out;
  const double bound = c * c;
  for (const auto& [x, y] : pairs) {
    const Ball bx(x, r), by(y, r);
    if (!balls_intersect(s, bx, by).intersects) {
      ++out.skipped;
      continue;
    }
    const double mx = ball_mass(m, s, bx);
    const double my = ball_mass(m, s, by);
    const auto q1 = mass_ratio(mx, my);
    if (!q1) {
      ++out.skipped;
      continue;
    }
    ++out.checked;
    const double q = std::max(*q1, *mass_ratio(my, mx));
    out.max_ratio = std::max(out.max_ratio, q);
    if (q > bound * (1.0 + 1e-12)) {
      out.pass = false;
      out.failures.push_back(point_str(x) + " / " + point_str(y) + ": ratio " + fmt(q));
    }
  }
  return out;
}

ConstantEstimate doubling_constant(const Measure& m, const Space& s, std::span<const Point> centers,
                                   std::span<const double> radii) {
  return ratio_constant("doubling", m, s, centers, radii, [&](const Ball& b, double r) {
    return BlossomMass{ball_mass(m, s, Ball(b.center, 2.0 * r)), Direction::exact};
  });
}

ConstantEstimate blossom_constant(const Measure& m, const Space& s, std::span<const Point> centers,
                                  std::span<const double> radii) {
  return ratio_constant("blossom-K", m, s, centers, radii,
                        [&](const Ball& b, double r) { return blossom_mass(m, s, b, r, true); });
}

ConstantEstimate bl_constant(const Measure& m, const Space& s, std::span<const Point> centers,
                             std::span<const double> radii) {
  return ratio_constant("blossom-Bl", m, s, centers, radii,
                        [&](const Ball& b, double r) { return blossom_mass(m, s, b, r, false); });
}

CoveringCount geometric_doubling_number(const Space& s, const Ball& ball, std::span<const Point> sample) {
  if (sample.empty()) throw std::invalid_argument("geometric doubling needs a sample");
  const double half = 0.5 * ball.radius;
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < sample.size(); ++i)
    if (s.contains(ball, sample[i])) inside.push_back(i);
  CoveringCount out;
  if (inside.empty()) return out;
  const std::size_t k = inside.size();

  // Candidate covers: half-radius balls at every sample point.
  std::vector<Bits> covers(sample.size(), Bits(k));
  for (std::size_t c = 0; c < sample.size(); ++c)
    for (std::size_t j = 0; j < k; ++j)
      if (s.within(s.distance(sample[c], sample[inside[j]]), half, false)) covers[c].set(j);
  Bits uncovered(k);
  uncovered.set();
  while (uncovered.any()) {
    std::size_t best = 0, best_count = 0;
    for (std::size_t c = 0; c < sample.size(); ++c) {
      const std::size_t cnt = (covers[c] & uncovered).count();
      if (cnt > best_count) {
        best_count = cnt;
        best = c;
      }
    }
    uncovered -= covers[best];
    out.cover_centers.push_back(best);
  }
  out.cover = out.cover_centers.size();

  // Two points conflict when some half-radius ball can hold both. On finite
  // spaces every possible center is tried; elsewhere d(p, q) < r is the
  // conservative test.
  std::vector<Bits> conflict(k, Bits(k));
  if (s.is_finite()) {
    for (std::size_t w = 0; w < s.cardinality(); ++w) {
      Bits h(k);
      for (std::size_t j = 0; j < k; ++j)
        if (s.within(s.distance(Point{Node{w}}, sample[inside[j]]), half, false)) h.set(j);
      for (auto j = h.find_first(); j != Bits::npos; j = h.find_next(j)) conflict[j] |= h;
    }
  } else {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i == j || s.distance(sample[inside[i]], sample[inside[j]]) < ball.radius) conflict[i].set(j);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return conflict[a].count() < conflict[b].count(); });
  Bits blocked(k);
  for (std::size_t j : order) {
    if (blocked.test(j)) continue;
    out.packing_points.push_back(inside[j]);
    blocked |= conflict[j];
  }
  out.packing = out.packing_points.size();
  return out;
}

GeometricDoubling geometric_doubling_finite(const Space& s) {
  if (!s.is_finite()) throw std::invalid_argument("exhaustive geometric doubling needs a finite space");
  const auto pts = s.universe();
  GeometricDoubling out;
  for (double r : critical_radii(s)) {
    for (std::size_t x = 0; x < pts.size(); ++x) {
      const auto c = geometric_doubling_number(s, Ball(pts[x], r), pts);
      out.upper = std::max(out.upper, c.cover);
      out.lower = std::max(out.lower, c.packing);
    }
  }
  return out;
}

std::optional<std::size_t> chain_length_at(const Space& s, double r) {
  if (!s.is_finite()) throw std::invalid_argument("chain lengths are measured on finite spaces");
  const std::size_t n = s.cardinality();
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  FiniteView fv(s);
  std::vector<Bits> balls(n);
  for (std::size_t y = 0; y < n; ++y) balls[y] = fv.ball(y, r);
  std::vector<Bits> adj(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (balls[a].intersects(balls[b])) {
        adj[a].set(b);
        adj[b].set(a);
      }
  std::size_t worst = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> dist(n, kUnreached);
    std::deque<std::size_t> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (auto v = adj[u].find_first(); v != Bits::npos; v = adj[u].find_next(v))
        if (dist[v] == kUnreached) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    for (std::size_t z = 0; z < n; ++z) {
      if (!s.within(s.distance(x, z), 2.0 * r, false)) continue;
      std::size_t best = kUnreached;
      for (std::size_t y = 0; y < n; ++y)
        if (balls[y].test(z)) best = std::min(best, dist[y]);
      if (best == kUnreached) return std::nullopt;
      worst = std::max(worst, best);
    }
  }
  return worst;
}

std::optional<std::size_t> measured_chain_length(const Space& s) {
  std::size_t worst = 0;
  for (double r : critical_radii(s)) {
    const auto k = chain_length_at(s, r);
    if (!k) return std::nullopt;
    worst = std::max(worst, *k);
  }
  return worst;
}

double chain_doubling_bound(double c, double d, double k) {
  if (!(c >= 1) || !(d >= 1) || !(k >= 0)) throw std::invalid_argument("chain bound needs C, D >= 1 and K >= 0");
  return d * std::pow(c, 2.0 * k + 3.0);
}

ChainDoublingCheck chain_doubling_check(const Measure& m, const Space& s) {
  ChainDoublingCheck out;
  out.c = comparability_sup(m, s).value;
  out.d = static_cast<double>(geometric_doubling_finite(s).upper);
  for (double r : critical_radii(s)) {
    const auto k = chain_length_at(s, r);
    if (!k) {
      ++out.radii_skipped;
      continue;
    }
    const double radius[] = {r};
    double ratio = 0.0;
    try {
      ratio = doubling_constant(m, s, {}, radius).value;
    } catch (const std::invalid_argument&) {
      continue;  // every ball of this radius is null
    }
    ++out.radii_checked;
    out.max_chain = std::max(out.max_chain, *k);
    const double fraction = ratio / chain_doubling_bound(out.c, out.d, static_cast<double>(*k));
    out.worst_fraction = std::max(out.worst_fraction, fraction);
  }
  out.pass = out.worst_fraction <= 1.0 + 1e-12;
  return out;
}

VitaliResult vitali_select(const Measure& m, const Space& s, std::span<const Ball> balls, std::optional<double> k) {
  VitaliResult out;
  std::vector<std::size_t> order(balls.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return balls[a].radius > balls[b].radius; });
  for (std::size_t i : order) {
    bool free = true;
    for (std::size_t j : out.selected) {
      const auto hit = balls_intersect(s, balls[i], balls[j]);
      if (hit.provenance == Provenance::sampled) out.certified = false;
      if (hit.intersects) {
        free = false;
        break;
      }
    }
    if (free) out.selected.push_back(i);
  }
  std::vector<Ball> chosen;
  for (std::size_t i : out.selected) chosen.push_back(balls[i]);
  out.union_all = union_mass(m, s, balls);
  out.union_selected = union_mass(m, s, chosen);
  out.ratio = out.union_selected > 0 ? out.union_all / out.union_selected : (out.union_all > 0 ? kInf : 1.0);
  if (k) {
    out.k_reference = *k;
  } else {
    out.k_reference = 1.0;
    for (const auto& b : balls) {
      const double base = ball_mass(m, s, b);
      const BlossomMass blu = blossom_mass(m, s, b, b.radius, true);
      if (blu.direction != Direction::exact) out.certified = false;
      if (base > 0) out.k_reference = std::max(out.k_reference, blu.value / base);
    }
  }
  out.within_bound = out.ratio <= out.k_reference * (1.0 + 1e-12);
  return out;
}

ClosedBallCheck closed_ball_equivalence_check(const Measure& m, const Space& s, double r,
                                              std::span<const PointPair> pairs, double tol) {
  ClosedBallCheck out;
  out.open_value = 1.0;
  out.closed_value = 1.0;
  for (const auto& [x, y] : pairs) {
    const double d = s.distance(x, y);
    if (s.within(d, r, false)) {
      const auto q = mass_ratio(ball_mass(m, s, Ball(x, r)), ball_mass(m, s, Ball(y, r)));
      const auto q2 = mass_ratio(ball_mass(m, s, Ball(y, r)), ball_mass(m, s, Ball(x, r)));
      if (q) out.open_value = std::max({out.open_value, *q, *q2});
    }
    if (s.within(d, r, true)) {
      const double mx = ball_mass(m, s, Ball(x, r, true));
      const double my = ball_mass(m, s, Ball(y, r, true));
      if (const auto q = mass_ratio(mx, my)) out.closed_value = std::max({out.closed_value, *q, *mass_ratio(my, mx)});
    }
  }
  out.equal = std::abs(out.open_value - out.closed_value) <= tol * std::max(1.0, out.open_value);
  return out;
}

}  // namespace mms
