#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "mms/space.hpp"

using namespace mms;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> planar_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> x(n), y(n), t(n * n);
  for (std::size_t i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
  return t;
}

void check_metric_axioms(const Space& s) {
  const std::size_t n = s.cardinality();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(s.distance(i, i) == 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(s.distance(i, j) == s.distance(j, i));
      if (i != j) CHECK(s.distance(i, j) > 0.0);
      for (std::size_t k = 0; k < n; ++k) CHECK(s.distance(i, k) <= s.distance(i, j) + s.distance(j, k) + 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("l_q distances in the plane") {
  const Point a = Coords{0.0, 0.0}, b = Coords{3.0, 4.0};
  CHECK(Space::euclidean(2, kInf).distance(a, b) == 4.0);
  CHECK(Space::euclidean(2, 2.0).distance(a, b) == doctest::Approx(5.0));
  CHECK(Space::euclidean(2, 1.0).distance(a, b) == doctest::Approx(7.0));
  CHECK(Space::euclidean(1).distance(Point{2.0}, Point{-1.5}) == doctest::Approx(3.5));
}

TEST_CASE("finite kinds satisfy the metric axioms") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    check_metric_axioms(Space::finite_matrix(planar_table(9, rng), 9));
    std::uniform_real_distribution<double> w(0.1, 3.0);
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 1; i < 10; ++i) edges.push_back({i - 1, i, w(rng)});
    for (int e = 0; e < 6; ++e) edges.push_back({rng() % 10, rng() % 10, w(rng)});
    edges.erase(std::remove_if(edges.begin(), edges.end(), [](const WeightedEdge& e) { return e.from == e.to; }),
                edges.end());
    check_metric_axioms(Space::path_graph(10, edges));
  }
  check_metric_axioms(Space::ultrametric(6, 2.5));
}

TEST_CASE("path metric equals Floyd-Warshall") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  const std::size_t n = 12;
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({rng() % i, i, w(rng)});
  for (int e = 0; e < 8; ++e) {
    const std::size_t a = rng() % n, b = rng() % n;
    if (a != b) edges.push_back({a, b, w(rng)});
  }
  std::vector<double> fw(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) fw[i * n + i] = 0.0;
  for (const auto& e : edges) {
    fw[e.from * n + e.to] = std::min(fw[e.from * n + e.to], e.length);
    fw[e.to * n + e.from] = std::min(fw[e.to * n + e.from], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) fw[i * n + j] = std::min(fw[i * n + j], fw[i * n + k] + fw[k * n + j]);
  const Space s = Space::path_graph(n, edges);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(s.distance(i, j) == doctest::Approx(fw[i * n + j]).epsilon(1e-12));
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(Space::finite_matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Space::finite_matrix({0, 1, 2, 0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Space::path_graph(3, {{0, 1, 1.0}}), std::invalid_argument);
}

TEST_CASE("open and closed balls differ only on the sphere") {
  const Space s = Space::ultrametric(4, 1.0);
  CHECK_FALSE(s.contains(Ball(node(0), 1.0), node(1)));
  CHECK(s.contains(Ball(node(0), 1.0, true), node(1)));
  CHECK(s.contains(Ball(node(0), 0.1), node(0)));
}

TEST_CASE("Euclidean ball intersection agrees with a witness grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-1.0, 1.0), rad(0.1, 0.9);
  for (std::size_t d = 1; d <= 3; ++d) {
    const Space s = Space::euclidean(d);
    const double step = d == 3 ? 0.05 : 0.02;
    const int steps = static_cast<int>(std::lround(4.0 / step));
    for (int trial = 0; trial < 30; ++trial) {
      Coords a(d), b(d);
      for (auto& v : a) v = c(rng);
      for (auto& v : b) v = c(rng);
      const Ball b1(a, rad(rng)), b2(b, rad(rng));
      const double gap = s.distance(b1.center, b2.center) - b1.radius - b2.radius;
      if (std::abs(gap) < 2.0 * step * std::sqrt(double(d))) continue;
      bool witness = false;
      std::vector<int> idx(d, 0);
      while (!witness) {
        Coords p(d);
        for (std::size_t k = 0; k < d; ++k) p[k] = -2.0 + step * idx[k];
        witness = s.contains(b1, p) && s.contains(b2, p);
        std::size_t k = 0;
        while (k < d && ++idx[k] > steps) idx[k++] = 0;
        if (k == d) break;
      }
      const auto r = balls_intersect(s, b1, b2);
      CHECK(r.intersects == witness);
      CHECK(r.provenance == Provenance::exact);
    }
  }
}

TEST_CASE("finite ball intersection enumerates the points") {
  std::mt19937_64 rng(8);
  const std::size_t n = 10;
  const Space s = Space::finite_matrix(planar_table(n, rng), n);
  std::uniform_real_distribution<double> rad(0.5, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Ball b1(node(rng() % n), rad(rng)), b2(node(rng() % n), rad(rng));
    bool brute = false;
    for (std::size_t z = 0; z < n; ++z) brute = brute || (s.contains(b1, node(z)) && s.contains(b2, node(z)));
    CHECK(balls_intersect(s, b1, b2).intersects == brute);
  }
}

TEST_CASE("non-convex subsets fall back to witnesses") {
  const Space s = Space::euclidean(2).with_samples({Coords{0.0, 0.0}, Coords{5.0, 0.0}}, false);
  const auto r = balls_intersect(s, Ball(Coords{0.0, 0.0}, 1.0), Ball(Coords{1.5, 0.0}, 1.0));
  CHECK_FALSE(r.intersects);
  CHECK(r.provenance == Provenance::sampled);
}

TEST_CASE("space files") {
  std::istringstream m("# triangle\nmatrix 3\n0 1 2\n1 0 1.5\n2 1.5 0\n");
  const Space a = parse_space(m);
  CHECK(a.cardinality() == 3);
  CHECK(a.distance(0, 2) == 2.0);
  std::istringstream g("graph 3\n0 1 1\n1 2 2\n");
  CHECK(parse_space(g).distance(0, 2) == 3.0);
  std::istringstream u("ultrametric 4 2");
  CHECK(parse_space(u).distance(1, 3) == 2.0);
  std::istringstream e("euclidean 2 inf\n0 0\n1 1\n");
  const Space pe = parse_space(e);
  CHECK(pe.samples().size() == 2);
  CHECK(pe.exponent() == kInf);
  std::istringstream bad("simplex 3");
  CHECK_THROWS_AS(parse_space(bad), std::invalid_argument);
  const Space path = load_space(std::string(MMSLAB_DATA_DIR) + "/path5.graph");
  CHECK(path.distance(0, 4) == 5.0);
}
