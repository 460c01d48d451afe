#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include "mms/measure.hpp"

using namespace mms;

TEST_CASE("exponential ball masses") {
  const Space s = Space::euclidean(1);
  const Measure m = exponential();
  for (double x : {0.0, 0.3, 1.0, 4.0})
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
      const double oracle = std::exp(-std::max(0.0, x - r)) - std::exp(-(x + r));
      CHECK(ball_mass(m, s, Ball(x, r)) == doctest::Approx(oracle).epsilon(1e-12));
    }
  CHECK(total_mass(m) == doctest::Approx(1.0));
}

TEST_CASE("Lebesgue ball masses are lengths") {
  const Space s = Space::euclidean(1);
  CHECK(ball_mass(lebesgue_line(), s, Ball(-3.0, 0.75)) == doctest::Approx(1.5));
}

TEST_CASE("one-dimensional Gaussian balls match erf") {
  const Space s = Space::euclidean(1);
  for (double u : {0.0, 0.7, 2.5})
    for (double r : {0.2, 1.0, 3.0}) {
      const double oracle = 0.5 * (std::erf((u + r) / std::sqrt(2.0)) - std::erf((u - r) / std::sqrt(2.0)));
      CHECK(ball_mass(gaussian(1), s, Ball(u, r)) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("shifted Gaussian balls match the noncentral chi-square law") {
  for (std::size_t d : {2u, 5u, 10u, 30u})
    for (double u : {0.0, 0.5, 2.0})
      for (double r : {0.5, 1.5, std::sqrt(double(d))}) {
        double oracle;
        if (u == 0.0) {
          oracle = boost::math::gamma_p(0.5 * d, 0.5 * r * r);
        } else {
          boost::math::non_central_chi_squared law(double(d), u * u);
          oracle = boost::math::cdf(law, r * r);
        }
        const QuadResult q = gaussian_ball_mass(d, u, r);
        CHECK(q.value == doctest::Approx(oracle).epsilon(1e-8));
        if (oracle > 1e-300) CHECK(log_gaussian_ball_mass(d, u, r).value == doctest::Approx(std::log(oracle)).epsilon(1e-8));
      }
}

TEST_CASE("ball masses through the generic entry point") {
  const Space s = Space::euclidean(3);
  const double via_ball = ball_mass(gaussian(3), s, Ball(Coords{0.0, 1.0, 0.0}, 1.2));
  CHECK(via_ball == doctest::Approx(gaussian_ball_mass(3, 1.0, 1.2).value).epsilon(1e-10));
  const double unnormalized = ball_mass(gaussian(3, false), s, Ball(Coords{0.0, 1.0, 0.0}, 1.2));
  CHECK(unnormalized == doctest::Approx(via_ball * std::pow(2.0 * std::numbers::pi, 1.5)).epsilon(1e-10));
}

TEST_CASE("Monte Carlo ball masses agree with quadrature") {
  const Ball b(Coords{1.0, 0.5, 0.0, 0.0}, 1.0);
  const double exact = gaussian_ball_mass(4, std::hypot(1.0, 0.5), 1.0).value;
  for (McMethod method : {McMethod::hit_or_miss, McMethod::uniform_in_ball}) {
    const McEstimate e = ball_mass_mc(gaussian(4), b, 400000, 99, method);
    CHECK(e.std_error > 0.0);
    CHECK(std::abs(e.estimate - exact) < 4.0 * e.std_error);
    const McEstimate again = ball_mass_mc(gaussian(4), b, 400000, 99, method);
    CHECK(again.estimate == e.estimate);
  }
}

TEST_CASE("atomic measures") {
  const Space s = Space::ultrametric(4, 1.0);
  const Measure m = atomic({{node(0), 1.0}, {node(1), 2.0}, {node(3), 0.5}});
  CHECK(ball_mass(m, s, Ball(node(1), 0.5)) == 2.0);
  CHECK(ball_mass(m, s, Ball(node(2), 0.5)) == 0.0);
  CHECK(ball_mass(m, s, Ball(node(2), 1.0, true)) == 3.5);
  CHECK(total_mass(m) == 3.5);
  CHECK(total_mass(counting(s)) == 4.0);
  const TableFunction f{{3.0, -1.0, 4.0}};
  CHECK(integrate(m, s, f) == doctest::Approx(3.0 - 2.0 + 2.0));
  CHECK(integrate(m, s, f, Ball(node(0), 0.5)) == doctest::Approx(3.0));
}

TEST_CASE("integrals over density measures") {
  const Space s = Space::euclidean(1);
  CHECK(integrate(exponential(), s, constant_function(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
  const CallableFunction id{[](const Point& p) { return std::get<double>(p); }};
  CHECK(integrate(lebesgue_line(), s, id, Ball(2.0, 1.0)) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(integrate(exponential(), s, id) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("interval merging") {
  const auto merged = merge_intervals({{3.0, 4.0}, {0.0, 1.0}, {0.5, 2.0}, {5.0, 5.0}});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].lo == 0.0);
  CHECK(merged[0].hi == 2.0);
  CHECK(merged[1].lo == 3.0);
}

TEST_CASE("unit ball volumes") {
  for (std::size_t d = 1; d <= 12; ++d) {
    const double oracle = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
    CHECK(log_unit_ball_volume(d) == doctest::Approx(std::log(oracle)).epsilon(1e-12));
  }
}
