#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "mms/operators.hpp"

using namespace mms;

namespace {

struct Finite {
  Space space;
  Measure measure;
  std::vector<double> w;
};

Finite random_space(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 6.0), wt(0.1, 2.0);
  std::vector<double> x(n), y(n), t(n * n), w(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng), w[i] = wt(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  Space s = Space::finite_matrix(t, n);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({node(i), w[i]});
  return {s, atomic(atoms), w};
}

double brute_average(const Finite& f, const std::vector<double>& v, std::size_t x, double r) {
  double num = 0.0, den = 0.0;
  for (std::size_t y = 0; y < f.w.size(); ++y)
    if (f.space.distance(x, y) < r) num += f.w[y] * std::abs(v[y]), den += f.w[y];
  return num / den;
}

}  // namespace

TEST_CASE("averages on finite spaces") {
  const Finite f = random_space(12, 1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TableFunction t;
  for (int i = 0; i < 12; ++i) t.values.push_back(u(rng));
  for (std::size_t x = 0; x < 12; ++x)
    for (double r : {0.5, 1.5, 3.0}) {
      double num = 0.0, den = 0.0;
      for (std::size_t y = 0; y < 12; ++y)
        if (f.space.distance(x, y) < r) num += f.w[y] * t.values[y], den += f.w[y];
      CHECK(average(f.measure, f.space, r, t, node(x)) == doctest::Approx(num / den).epsilon(1e-12));
    }
}

TEST_CASE("averages of constants and of the identity on the line") {
  const Space s = Space::euclidean(1);
  CHECK(average(exponential(), s, 0.7, constant_function(2.0), 1.3) == doctest::Approx(2.0).epsilon(1e-10));
  const CallableFunction id{[](const Point& p) { return std::get<double>(p); }};
  CHECK(average(lebesgue_line(), s, 0.5, id, 3.0) == doctest::Approx(3.0).epsilon(1e-10));
  // Exponential mean on (x - r, x + r) for x > r.
  const double x = 2.0, r = 1.0;
  const double oracle = ((x - r + 1.0) * std::exp(-(x - r)) - (x + r + 1.0) * std::exp(-(x + r))) /
                        (std::exp(-(x - r)) - std::exp(-(x + r)));
  CHECK(average(exponential(), s, r, id, x) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("averages are undefined on null balls") {
  const Space s = Space::ultrametric(3);
  const Measure m = atomic({{node(0), 1.0}});
  CHECK_THROWS_AS(average(m, s, 0.5, constant_function(1.0), node(2)), UndefinedAtPoint);
}

TEST_CASE("centered maximal function equals a dense radius sweep") {
  const Finite f = random_space(10, 4);
  TableFunction t{std::vector<double>(10, 0.0)};
  t.values[3] = 1.0;
  t.values[7] = -2.0;
  for (std::size_t x = 0; x < 10; ++x) {
    double sweep = 0.0;
    for (int k = 1; k <= 4000; ++k) sweep = std::max(sweep, brute_average(f, t.values, x, 10.0 * k / 4000.0));
    const MaximalResult m = maximal_centered(f.measure, f.space, t, node(x));
    CHECK(m.direction == Direction::exact);
    double at_distances = 0.0;
    for (std::size_t y = 0; y < 10; ++y)
      at_distances = std::max(at_distances, brute_average(f, t.values, x, f.space.distance(x, y) * (1 + 1e-9) + 1e-12));
    CHECK(m.value >= sweep - 1e-12);
    CHECK(m.value == doctest::Approx(at_distances).epsilon(1e-12));
  }
}

TEST_CASE("uncentered maximal function dominates and matches brute force") {
  const Finite f = random_space(8, 9);
  TableFunction t{{0.0, 1.0, 0.0, 0.5, 0.0, 0.0, 2.0, 0.0}};
  for (std::size_t x = 0; x < 8; ++x) {
    double brute = 0.0;
    for (std::size_t y = 0; y < 8; ++y)
      for (std::size_t z = 0; z < 8; ++z) {
        const double r = f.space.distance(y, z) * (1.0 + 1e-9) + 1e-12;
        if (f.space.distance(y, x) < r) brute = std::max(brute, brute_average(f, t.values, y, r));
      }
    const double unc = maximal_uncentered(f.measure, f.space, t, node(x)).value;
    CHECK(unc == doctest::Approx(brute).epsilon(1e-12));
    CHECK(unc >= maximal_centered(f.measure, f.space, t, node(x)).value - 1e-15);
  }
}

TEST_CASE("right directional averages") {
  const CallableFunction id{[](const Point& p) { return std::get<double>(p); }};
  CHECK(directional_average_right(lebesgue_line(), 2.0, id, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  // Exponential: the Dirac at y = 1 spreads over windows [x, x + 1] with x in [0, 1].
  const Density1D e = std::get<Density1D>(exponential());
  const double oracle = 1.0 / (1.0 - std::exp(-1.0));
  CHECK(directional_dirac_l1(e, 1.0, 1.0).value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("operator specs dispatch") {
  const Finite f = random_space(6, 12);
  TableFunction t{{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
  OperatorSpec spec;
  spec.radius = 2.0;
  CHECK(apply(spec, f.measure, f.space, t, node(0)) == doctest::Approx(brute_average(f, t.values, 0, 2.0)));
  spec.kind = OperatorSpec::Kind::maximal_centered;
  CHECK(apply(spec, f.measure, f.space, t, node(0)) == doctest::Approx(1.0));
}
