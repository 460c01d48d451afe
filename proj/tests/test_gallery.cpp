#include <cmath>
#include <string>

#include <doctest.h>

#include "mms/gallery.hpp"
#include "mms/geometry.hpp"

using namespace mms;

TEST_CASE("every gallery entry meets its expectations") {
  for (const std::string& name : gallery_names()) {
    CAPTURE(name);
    const nlohmann::json report = build_entry(name).verify();
    for (const auto& row : report["expectations"]) {
      CAPTURE(row.dump());
      CHECK(row["pass"].get<bool>());
    }
    CHECK(report["expectations"].size() > 0);
  }
}

TEST_CASE("parameterized names") {
  CHECK(build_entry("ultrametric{5}").space.cardinality() == 5);
  CHECK(build_entry("ultrametric:6").space.cardinality() == 6);
  CHECK(build_entry("broom", 4).space.cardinality() == broom_center(5));
  CHECK(build_entry("gaussian{7}").space.dimension() == 7);
  CHECK_THROWS_AS(build_entry("no-such-entry"), std::invalid_argument);
}

TEST_CASE("broom indices and distances") {
  CHECK(broom_center(1) == 0);
  CHECK(broom_tip(1, 1) == 1);
  CHECK(broom_center(2) == 2);
  CHECK(broom_tip(3, 3) == 8);
  const GalleryEntry b = build_broom(6);
  const Space& s = b.space;
  CHECK(s.distance(broom_tip(4, 1), broom_tip(4, 3)) == 2.0);
  CHECK(s.distance(broom_center(4), broom_tip(4, 2)) == 1.0);
  CHECK(s.distance(broom_center(2), broom_center(5)) == 9.0);
  CHECK(s.distance(broom_tip(2, 1), broom_tip(3, 1)) == 5.0);
}

TEST_CASE("analytic distances match subdivided path graphs") {
  for (std::size_t pieces : {1u, 4u}) {
    const GalleryEntry b = build_broom(5);
    const Discretization g = discretize_broom(5, pieces);
    for (std::size_t i = 0; i < b.space.cardinality(); ++i)
      for (std::size_t j = 0; j < b.space.cardinality(); ++j)
        CHECK(g.graph.distance(g.vertex_of[i], g.vertex_of[j]) == doctest::Approx(b.space.distance(i, j)).epsilon(1e-12));
    const GalleryEntry ib = build_infinite_broom(6, true);
    const Discretization h = discretize_infinite_broom(6, pieces);
    for (std::size_t i = 0; i < ib.space.cardinality(); ++i)
      for (std::size_t j = 0; j < ib.space.cardinality(); ++j)
        CHECK(h.graph.distance(h.vertex_of[i], h.vertex_of[j]) == doctest::Approx(ib.space.distance(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("arc-connected curve") {
  CHECK(arc_point(-3.0) == Coords{2.0, 0.0});
  CHECK(arc_point(-1.0) == Coords{0.0, 0.0});
  CHECK(arc_point(-0.5) == Coords{0.0, 0.5});
  CHECK(arc_point(0.0) == Coords{0.0, 1.0});
  CHECK(arc_point(2.0) == Coords{2.0, 1.0});
  const GalleryEntry arc = build_arc_connected(20.0);
  const Ball ball(Coords{3.0, 1.0}, 1.5);
  const double exact = ball_mass(arc.measure, arc.space, ball);
  const McEstimate mc = arc_ball_mass_mc(arc, ball, 1 << 18, 5);
  CHECK(std::abs(mc.estimate - exact) < 4.0 * mc.std_error + 1e-12);
}

TEST_CASE("infinite broom with a single atom is trivially comparable") {
  const GalleryEntry e = build_infinite_broom(10, false);
  CHECK(comparability_sup(e.measure, e.space).value == 1.0);
}
