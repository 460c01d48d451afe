#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "mms/geometry.hpp"

using namespace mms;

namespace {

struct Finite {
  Space space;
  Measure measure;
  std::vector<double> w;
};

Finite random_space(std::size_t n, std::uint64_t seed, bool integer_grid = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 5.0), wt(0.05, 3.0);
  std::vector<double> x(n), y(n), t(n * n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = integer_grid ? std::floor(u(rng)) : u(rng);
    y[i] = integer_grid ? std::floor(u(rng)) + 0.01 * i : u(rng);
    w[i] = wt(rng);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({node(i), w[i]});
  return {Space::finite_matrix(t, n), atomic(atoms), w};
}

double mass_of(const Finite& f, const std::vector<bool>& set) {
  double m = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set[i]) m += f.w[i];
  return m;
}

std::vector<bool> ball_set(const Finite& f, std::size_t x, double r) {
  std::vector<bool> b(f.w.size());
  for (std::size_t y = 0; y < b.size(); ++y) b[y] = f.space.distance(x, y) < r;
  return b;
}

// Union of B(y, step) over y in the set.
std::vector<bool> grow(const Finite& f, const std::vector<bool>& set, double step) {
  std::vector<bool> out(set.size(), false);
  for (std::size_t y = 0; y < set.size(); ++y)
    if (set[y])
      for (std::size_t z = 0; z < set.size(); ++z) out[z] = out[z] || f.space.distance(y, z) < step;
  return out;
}

// Radii just beyond each distinct distance: one per distinct ball family.
std::vector<double> probe_radii(const Space& s) {
  std::set<double> d;
  for (std::size_t i = 0; i < s.cardinality(); ++i)
    for (std::size_t j = 0; j < s.cardinality(); ++j) d.insert(s.distance(i, j));
  std::vector<double> r;
  for (double v : d) r.push_back(v * (1 + 1e-9) + 1e-12);
  return r;
}

}  // namespace

TEST_CASE("comparability constant equals brute force over all radii") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Finite f = random_space(9, seed);
    const std::size_t n = 9;
    double brute = 1.0;
    for (double r : probe_radii(f.space))
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (f.space.distance(x, y) < r)
            brute = std::max(brute, mass_of(f, ball_set(f, x, r)) / mass_of(f, ball_set(f, y, r)));
    const ConstantEstimate c = comparability_sup(f.measure, f.space);
    CHECK(c.direction == Direction::exact);
    CHECK(c.value == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("doubling constant equals brute force") {
  const Finite f = random_space(10, 7);
  std::vector<double> radii = probe_radii(f.space);
  for (double r : probe_radii(f.space)) radii.push_back(0.5 * r);
  double brute = 1.0;
  for (double r : radii)
    for (std::size_t x = 0; x < 10; ++x)
      brute = std::max(brute, mass_of(f, ball_set(f, x, 2 * r)) / mass_of(f, ball_set(f, x, r)));
  CHECK(doubling_constant(f.measure, f.space).value == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("blossoms on finite spaces follow the definition") {
  const Finite f = random_space(10, 11);
  for (std::size_t x = 0; x < 10; ++x)
    for (double r : {0.5, 1.0, 2.0})
      for (double s : {0.3, 1.0}) {
        const auto base = ball_set(f, x, r);
        const auto bl = grow(f, base, s);
        const auto blu = grow(f, bl, s);
        CHECK(blossom_mass(f.measure, f.space, Ball(node(x), r), s, false).value == doctest::Approx(mass_of(f, bl)));
        CHECK(blossom_mass(f.measure, f.space, Ball(node(x), r), s, true).value == doctest::Approx(mass_of(f, blu)));
      }
}

TEST_CASE("Euclidean blossoms are enlarged balls") {
  const Space s = Space::euclidean(1);
  const auto bl = blossom_mass(lebesgue_line(), s, Ball(1.0, 0.5), 0.25, false);
  CHECK(bl.value == doctest::Approx(1.5));
  CHECK(bl.direction == Direction::exact);
  CHECK(blossom_mass(lebesgue_line(), s, Ball(1.0, 0.5), 0.25, true).value == doctest::Approx(2.0));
  // Lebesgue: Blu(x, r, r) = B(x, 3r), so K = 3.
  const std::vector<Point> c{Point{0.0}};
  const std::vector<double> r{1.0};
  CHECK(blossom_constant(lebesgue_line(), s, c, r).value == doctest::Approx(3.0));
}

TEST_CASE("ultrametric measures have C = 1 for any weights") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> wt(1e-3, 10.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Space s = Space::ultrametric(7, 1.0);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < 7; ++i) atoms.push_back({node(i), wt(rng)});
    CHECK(comparability_sup(atomic(atoms), s).value == 1.0);
  }
}

TEST_CASE("constant interrelations hold on random spaces") {
  for (std::uint64_t seed : {4u, 5u, 6u, 7u}) {
    const Finite f = random_space(10, seed, seed % 2 == 0);
    const double c = comparability_sup(f.measure, f.space).value;
    const GeometricDoubling g = geometric_doubling_finite(f.space);
    CHECK(g.lower <= g.upper);
    const double d = static_cast<double>(g.upper);
    CHECK(bl_constant(f.measure, f.space).value <= d * c * c * c * (1 + 1e-12));
    CHECK(blossom_constant(f.measure, f.space).value <= d * d * c * c * c * c * (1 + 1e-12));
    const ChainDoublingCheck ch = chain_doubling_check(f.measure, f.space);
    CHECK(ch.pass);
    CHECK(ch.radii_checked > 0);
    CHECK(ch.worst_fraction <= 1.0 + 1e-12);
  }
}

TEST_CASE("balls meeting each other are C^2 comparable") {
  const Finite f = random_space(9, 13);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) pairs.emplace_back(node(i), node(j));
  for (double r : {0.7, 1.5, 3.0}) {
    const double c = local_comparability(f.measure, f.space, r).value;
    const ComparabilityCheck chk = intersecting_comparability_check(f.measure, f.space, r, c, pairs);
    CHECK(chk.pass);
    CHECK(chk.max_ratio <= c * c * (1 + 1e-12));
  }
}

TEST_CASE("chain lengths") {
  const Space u = Space::ultrametric(5, 1.0);
  CHECK_FALSE(chain_length_at(u, 0.75).has_value());
  CHECK(chain_length_at(u, 1.5) == std::optional<std::size_t>(0));
  CHECK_FALSE(measured_chain_length(u).has_value());
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 1; i < 10; ++i) edges.push_back({i - 1, i, 1.0});
  const Space path = Space::path_graph(10, edges);
  CHECK(chain_length_at(path, 1.5) == std::optional<std::size_t>(1));
  CHECK(chain_doubling_bound(2.0, 3.0, 1.0) == doctest::Approx(3.0 * 32.0));
}

TEST_CASE("covering the unit interval by half balls") {
  std::vector<Point> grid;
  for (int i = -100; i <= 100; ++i) grid.emplace_back(i / 100.0);
  const Space s = Space::euclidean(1).with_samples(grid);
  const CoveringCount c = geometric_doubling_number(s, Ball(0.0, 1.0), grid);
  CHECK(c.cover == 3);
  CHECK(c.packing <= c.cover);
  CHECK(c.packing >= 2);
}

TEST_CASE("Vitali selection is disjoint, maximal and within K") {
  std::mt19937_64 rng(31);
  const Finite f = random_space(14, 41);
  std::uniform_real_distribution<double> rad(0.2, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Ball> balls;
    for (int i = 0; i < 8; ++i) balls.emplace_back(node(rng() % 14), rad(rng));
    const VitaliResult v = vitali_select(f.measure, f.space, balls);
    for (std::size_t a = 0; a < v.selected.size(); ++a)
      for (std::size_t b = a + 1; b < v.selected.size(); ++b) {
        const auto& b1 = balls[v.selected[a]];
        const auto& b2 = balls[v.selected[b]];
        for (std::size_t z = 0; z < 14; ++z) CHECK_FALSE((f.space.contains(b1, node(z)) && f.space.contains(b2, node(z))));
      }
    // Every ball left out meets a selected ball at least as large.
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (std::find(v.selected.begin(), v.selected.end(), i) != v.selected.end()) continue;
      bool covered = false;
      for (std::size_t j : v.selected)
        covered = covered || (balls[j].radius >= balls[i].radius && balls_intersect(f.space, balls[i], balls[j]).intersects);
      CHECK(covered);
    }
    CHECK(v.ratio <= v.k_reference * (1 + 1e-12));
    CHECK(v.certified);
  }
}

TEST_CASE("union masses on the line") {
  const Space s = Space::euclidean(1);
  const std::vector<Ball> balls{Ball(0.0, 1.0), Ball(1.5, 1.0), Ball(10.0, 0.5)};
  CHECK(union_mass(lebesgue_line(), s, balls) == doctest::Approx(3.5 + 1.0));
}

TEST_CASE("exponential comparability approaches e at r = 1") {
  const Space s = Space::euclidean(1);
  const auto pairs = line_pair_grid(1.0);
  const ConstantEstimate c = local_comparability(exponential(), s, 1.0, pairs);
  CHECK(c.value <= std::exp(1.0));
  CHECK(c.value == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}
