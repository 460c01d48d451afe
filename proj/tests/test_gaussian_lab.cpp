#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include "mms/gaussian_lab.hpp"

using namespace mms;

namespace {
const double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST_CASE("closed-form checkpoints at R = sqrt(3)/2") {
  const CSFormulas cs = cs_formulas(kSqrt3 / 2.0);
  CHECK(cs.t == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cs.G == doctest::Approx(1.0 / (2.0 * std::exp(0.75))).epsilon(1e-14));
  CHECK(cs.G_prime == doctest::Approx(kSqrt3 / (2.0 * std::exp(0.75))).epsilon(1e-6));
  CHECK(cs.G_second < 0.0);
  CHECK(cs_G(1.1) == doctest::Approx(cs_F(cs_t(1.1), 1.1)));
}

TEST_CASE("spherical caps") {
  CHECK(cap_measure_bound(2).exact == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(cap_measure_bound(3).exact == doctest::Approx((1.0 - kSqrt3 / 2.0) / 2.0).epsilon(1e-12));
  CHECK(cap_measure_bound(3).bound == doctest::Approx(1.0 / (4.0 * std::sqrt(6.0 * kPi))).epsilon(1e-12));
  for (std::size_t d = 2; d <= 200; ++d) CHECK(cap_measure_bound(d).holds);
  CHECK_THROWS_AS(cap_measure_bound(1), std::invalid_argument);
}

TEST_CASE("gamma ratio") {
  for (std::size_t d : {1u, 7u, 80u, 200u}) {
    const GammaRatioReport g = gamma_ratio_check(d);
    CHECK(g.lhs == doctest::Approx(0.5 * std::log(d / 2.0)));
    CHECK(g.rhs == doctest::Approx(std::lgamma(1.0 + d / 2.0) - std::lgamma(0.5 + d / 2.0)).epsilon(1e-12));
    CHECK(g.holds);
  }
}

TEST_CASE("lens volumes of unit balls at distance one") {
  CHECK(std::exp(cap_volume_ratio(1).log_ratio) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::exp(cap_volume_ratio(2).log_ratio) == doctest::Approx((2 * kPi / 3 - kSqrt3 / 2) / kPi).epsilon(1e-10));
  CHECK(std::exp(cap_volume_ratio(3).log_ratio) == doctest::Approx(5.0 / 16.0).epsilon(1e-10));
  for (std::size_t d = 1; d <= 200; ++d) CHECK(cap_volume_ratio(d).holds);
}

TEST_CASE("shell masses") {
  for (std::size_t d : {10u, 50u, 300u}) {
    const double s = std::sqrt(d - 1.0), inner = s - 1.0 / s;
    const double oracle =
        boost::math::gamma_p(d / 2.0, s * s / 2.0) - boost::math::gamma_p(d / 2.0, inner * inner / 2.0);
    const ShellReport r = shell_mass(d);
    CHECK(r.mass == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(r.bound == doctest::Approx(1.0 / std::sqrt(kPi * std::exp(3.0) * d)));
  }
  const auto d0 = shell_threshold(1000);
  REQUIRE(d0.has_value());
  for (std::size_t d : {*d0, (*d0 + 1000) / 2, std::size_t{1000}}) CHECK(shell_mass(d).holds);
}

TEST_CASE("intersection masses against sampling") {
  const std::size_t d = 4;
  const double rho = 1.5, u = 1.0, rp = 1.0;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    double r0 = 0.0, r1 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double x = g(rng);
      r0 += x * x;
      r1 += k == 0 ? (x - u) * (x - u) : x * x;
    }
    hits += (r0 < rho * rho && r1 < rp * rp);
  }
  const double p = double(hits) / n;
  const double se = std::sqrt(p * (1 - p) / n);
  const double q = intersection_mass_2d(d, rho, u, rp).value;
  CHECK(std::abs(q - p) < 4.0 * se);
  CHECK(log_intersection_mass(d, rho, u, rp).value == doctest::Approx(std::log(q)).epsilon(1e-8));
}

TEST_CASE("L1 upper bound formula") {
  for (std::size_t d : {1u, 5u, 40u}) {
    const double oracle = std::pow(2.0, d - 1.0) * std::sqrt(2 * kPi * d) +
                          std::sqrt(kPi * (d + 1.0)) * std::pow(2.0 / kSqrt3, d + 1.0);
    CHECK(l1_upper_bound(d) == doctest::Approx(oracle).epsilon(1e-12));
  }
  CHECK(std::exp(log_l1_upper_bound(500) / 500.0) < 2.15);
}

TEST_CASE("weak lower bound pipeline is internally consistent") {
  const GaussBoundReport r = weak_lower_bound(50, 1.0);
  const double rho2 = 0.75 * 49.0;
  CHECK(r.log_ball == doctest::Approx(std::log(boost::math::gamma_p(25.0, rho2 / 2.0))).epsilon(1e-10));
  CHECK(r.log_value == doctest::Approx(std::log(r.alpha) + r.log_shell - r.log_ball).epsilon(1e-12));
  CHECK(r.alpha > 0.0);
  CHECK(r.alpha < 1.0);
  CHECK(r.log_value < r.log_upper);
  CHECK(r.log_level_sweep < r.log_upper);
  const double s = 7.0;
  CHECK(r.alpha_u >= s - 1.0 / s);
  CHECK(r.alpha_u <= s);
  // The minimum over the shell can be no larger than the average at its ends.
  const double at_end = intersection_mass_2d(50, std::sqrt(rho2), s, std::sqrt(rho2)).value /
                        gaussian_ball_mass(50, s, std::sqrt(rho2)).value;
  CHECK(r.alpha <= at_end * (1 + 1e-9));
  CHECK_THROWS_AS(weak_lower_bound(50, 0.5), std::invalid_argument);
}

TEST_CASE("G ratio stays above 1/e") {
  for (std::size_t d : {20u, 100u, 1000u}) CHECK(G_ratio_check(d).above_inv_e);
}

TEST_CASE("sampled ball comparisons") {
  const McCheck a = firstop_check(2, 1.0, 1 << 16, 7);
  CHECK(a.verdict == McVerdict::pass);
  CHECK(std::abs(a.estimate - a.quadrature) < 4.0 * a.std_error);
  const McCheck again = firstop_check(2, 1.0, 1 << 16, 7);
  CHECK(again.estimate == a.estimate);
  const McCheck b = secondopx_check(3, 1.0, Coords{1.5, 0.0, 0.0}, 1 << 16, 9);
  CHECK(b.verdict == McVerdict::pass);
}

TEST_CASE("discretized Gaussians") {
  const DiscreteGaussian g = discretized_gaussian(1, 5.0, 201);
  CHECK(total_mass(g.measure) == doctest::Approx(1.0).epsilon(1e-6));
  const std::vector<double> radii{0.5, 1.0, 2.0};
  const double l1 = discretized_gaussian_l1(1, radii);
  CHECK(l1 >= 1.0);
  CHECK(l1 < l1_upper_bound(1));
}
