#include "mms/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mms/operators.hpp"
#include "mms/parallel.hpp"

namespace mms {

namespace {

std::string atom_label(const Kernel& kernel, std::size_t col) {
  return "atom " + std::to_string(kernel.atoms[col]);
}

// alpha * mu{v >= alpha}^{1/p}, maximized over the attained levels.
std::pair<double, double> level_sweep(const Eigen::VectorXd& v, const std::vector<double>& w, double p) {
  std::vector<std::size_t> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  double best = 0.0, best_level = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    mass += w[order[i]];
    const double level = v[order[i]];
    // Only the last atom at a given level sees the full superlevel mass.
    if (i + 1 < order.size() && v[order[i + 1]] == level) continue;
    if (!(level > 0)) break;
    const double val = level * std::pow(mass, 1.0 / p);
    if (val > best) {
      best = val;
      best_level = level;
    }
  }
  return {best, best_level};
}

double weighted_pnorm(const Eigen::VectorXd& v, const std::vector<double>& w, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += w[i] * std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

nlohmann::json NormReport::to_json() const {
  return {{"p", number_to_json(p)},
          {"value", number_to_json(value)},
          {"direction", std::string(to_string(direction))},
          {"method", method},
          {"witness", witness},
          {"converged", converged},
          {"iterations", iterations}};
}

Kernel build_kernel(const Measure& m, const Space& s, double r, bool closed) {
  const auto* a = std::get_if<Atomic>(&m);
  if (!a) throw std::invalid_argument("kernels are built for atomic measures");
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  const std::size_t n = a->atoms.size();
  std::vector<std::vector<char>> inside(n, std::vector<char>(n, 0));
  std::vector<double> mass(n, 0.0);
  parallel_for(n, [&](std::size_t x) {
    double total = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (s.within(s.distance(a->atoms[x].location, a->atoms[y].location), r, closed)) {
        inside[x][y] = 1;
        total += a->atoms[y].weight;
      }
    }
    mass[x] = total;
  });
  Kernel kernel;
  kernel.radius = r;
  for (std::size_t x = 0; x < n; ++x) {
    if (mass[x] > 0) {
      kernel.atoms.push_back(x);
    } else {
      kernel.undefined.push_back(x);
    }
  }
  const std::size_t k = kernel.atoms.size();
  kernel.k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t x = kernel.atoms[i];
    kernel.weights.push_back(a->atoms[x].weight);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t y = kernel.atoms[j];
      if (inside[x][y]) kernel.k(i, j) = a->atoms[y].weight / mass[x];
    }
  }
  return kernel;
}

NormReport op_norm_l1(const Kernel& kernel) {
  NormReport rep;
  rep.p = 1.0;
  rep.direction = Direction::exact;
  rep.method = "adjoint-columns";
  const auto n = kernel.k.rows();
  for (Eigen::Index y = 0; y < n; ++y) {
    double col = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) col += kernel.weights[x] * kernel.k(x, y);
    col /= kernel.weights[y];
    if (col > rep.value) {
      rep.value = col;
      rep.witness = atom_label(kernel, static_cast<std::size_t>(y));
    }
  }
  return rep;
}

NormReport op_norm_lp(const Kernel& kernel, double p, std::size_t max_iters, double tol) {
  if (!(p > 1) || !std::isfinite(p)) throw std::invalid_argument("op_norm_lp needs finite p > 1");
  const auto n = kernel.k.rows();
  NormReport rep;
  rep.p = p;
  rep.method = "power-iteration";
  rep.direction = Direction::lower;
  if (n == 0) return rep;
  // Unweighted form: ||A||_{L^p(w)} = ||D A D^{-1}||_{l^p}.
  Eigen::VectorXd dp(n);
  for (Eigen::Index i = 0; i < n; ++i) dp[i] = std::pow(kernel.weights[i], 1.0 / p);
  const Eigen::MatrixXd b = dp.asDiagonal() * kernel.k * dp.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd bt = b.transpose();
  const double q = p / (p - 1.0);
  auto pnorm = [](const Eigen::VectorXd& v, double e) { return std::pow(v.array().abs().pow(e).sum(), 1.0 / e); };
  auto quotient = [&](const Eigen::VectorXd& x) { return pnorm(b * x, p) / pnorm(x, p); };

  auto run = [&](Eigen::VectorXd x, std::size_t& iters, bool& converged) {
    x /= pnorm(x, p);
    double val = quotient(x);
    double best = val;
    converged = false;
    for (iters = 0; iters < max_iters; ++iters) {
      const Eigen::VectorXd y = (b * x).array().pow(p - 1.0).matrix();
      Eigen::VectorXd z = (bt * y).array().pow(q - 1.0).matrix();
      const double nz = pnorm(z, p);
      if (!(nz > 0)) break;
      z /= nz;
      const double next = quotient(z);
      best = std::max(best, next);
      x = z;
      if (std::abs(next - val) <= tol * std::max(1.0, next)) {
        converged = true;
        ++iters;
        break;
      }
      val = next;
    }
    return best;
  };

  std::size_t it1 = 0, it2 = 0;
  bool c1 = false, c2 = false;
  const double v1 = run(Eigen::VectorXd::Ones(n), it1, c1);
  // Restart from the best single-atom input.
  Eigen::Index best_col = 0;
  double best_dirac = -1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = pnorm(b.col(j), p);
    if (v > best_dirac) {
      best_dirac = v;
      best_col = j;
    }
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[best_col] = 1.0;
  const double v2 = run(e, it2, c2);
  rep.value = std::max(v1, v2);
  rep.iterations = it1 + it2;
  rep.converged = c1 && c2;
  rep.witness = v1 >= v2 ? "all-ones start" : "dirac start at " + atom_label(kernel, static_cast<std::size_t>(best_col));
  return rep;
}

NormReport weak_type_constant(const Kernel& kernel, double p, std::span<const std::vector<double>> probes) {
  if (!(p >= 1)) throw std::invalid_argument("weak type needs p >= 1");
  NormReport rep;
  rep.p = p;
  rep.method = "probe-sweep";
  rep.direction = Direction::lower;
  const auto n = kernel.k.rows();
  auto consider = [&](const Eigen::VectorXd& f, const std::string& label) {
    const double fn = weighted_pnorm(f, kernel.weights, p);
    if (!(fn > 0)) return;
    const auto [val, level] = level_sweep(kernel.k * f, kernel.weights, p);
    if (val / fn > rep.value) {
      rep.value = val / fn;
      rep.witness = label + ", level " + std::to_string(level);
    }
  };
  if (probes.empty()) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
      f[j] = 1.0;
      consider(f, "indicator of " + atom_label(kernel, static_cast<std::size_t>(j)));
    }
  } else {
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (probes[i].size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("probe length must equal the kernel size");
      consider(Eigen::Map<const Eigen::VectorXd>(probes[i].data(), n).cwiseAbs(), "probe " + std::to_string(i));
    }
  }
  return rep;
}

NormReport fubini_l1_upper(const Measure& m, const Space& s, double r, std::span<const double> y_grid) {
  const auto* dm = std::get_if<Density1D>(&m);
  if (!dm) throw std::invalid_argument("the Fubini bound is computed for 1-D density measures");
  if (y_grid.empty()) throw std::invalid_argument("the Fubini bound needs a grid of points");
  NormReport rep;
  rep.p = 1.0;
  rep.method = "fubini";
  // A grid supremum of the exact column integral: the norm itself, probed.
  rep.direction = Direction::lower;
  std::vector<double> values(y_grid.size());
  parallel_for(y_grid.size(), [&](std::size_t i) {
    const double y = y_grid[i];
    const double a = std::max(y - r, dm->domain.lo);
    const double b = std::min(y + r, dm->domain.hi);
    if (!(b > a)) return;
    auto f = [&](double x) {
      const double mass = ball_mass(m, s, Ball(Point{x}, r));
      return mass > 0 ? dm->density(x) / mass : 0.0;
    };
    std::vector<double> breaks{y};
    if (std::isfinite(dm->domain.lo)) {
      breaks.push_back(dm->domain.lo + r);
      breaks.push_back(dm->domain.lo + 2.0 * r);
    }
    breaks.insert(breaks.end(), dm->breakpoints.begin(), dm->breakpoints.end());
    values[i] = integrate_adaptive(f, a, b, 1e-10, breaks).value;
  });
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > rep.value) {
      rep.value = values[i];
      rep.witness = "y = " + std::to_string(y_grid[i]);
    }
  }
  return rep;
}

double riesz_interpolate(double c_r, double r, double p) {
  if (!(r > 0)) throw std::invalid_argument("exponent r must be positive");
  if (p < r) throw std::invalid_argument("interpolation needs p >= r");
  if (c_r < 1) throw std::invalid_argument("averaging operators have norm at least 1");
  return std::pow(c_r, r / p);
}

NormReport single_dirac_weak11(const Measure& m, const Space& s, const Point& x0) {
  const auto* a = std::get_if<Atomic>(&m);
  if (!a) throw std::invalid_argument("single Dirac weak bound is computed on atomic measures");
  const DiracProbe delta{x0, 1.0};
  Eigen::VectorXd v(static_cast<Eigen::Index>(a->atoms.size()));
  std::vector<double> w;
  for (std::size_t i = 0; i < a->atoms.size(); ++i) {
    v[i] = maximal_centered(m, s, delta, a->atoms[i].location).value;
    w.push_back(a->atoms[i].weight);
  }
  NormReport rep;
  rep.p = 1.0;
  rep.method = "probe-sweep";
  rep.direction = Direction::exact;
  const auto [val, level] = level_sweep(v, w, 1.0);
  rep.value = val;
  rep.witness = "level " + std::to_string(level);
  return rep;
}

}  // namespace mms
