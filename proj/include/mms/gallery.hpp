#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mms/measure.hpp"
#include "mms/space.hpp"

namespace mms {

struct ExpectationOutcome {
  double computed = 0.0;
  double expected = 0.0;
  bool pass = false;
  std::string detail;
};

/// A claimed property of a gallery example together with the operation that
/// checks it.
struct Expectation {
  std::string name;
  std::string claim;
  std::string operation;
  double tolerance = 0.0;
  std::function<ExpectationOutcome()> check;
};

struct GalleryEntry {
  std::string name;
  Space space;
  Measure measure;
  std::vector<Expectation> expectations;

  /// Runs every expectation; a thrown error marks that row as failed.
  nlohmann::json verify() const;
};

/// Node index of the center (3n, 0) and of the tip z_{n,k}, 1 <= k <= n.
std::size_t broom_center(std::size_t n);
std::size_t broom_tip(std::size_t n, std::size_t k);

/// Centers (3n, 0) with n spike tips each, n <= n_max, under the path metric;
/// counting measure.
GalleryEntry build_broom(std::size_t n_max = 16);

/// {0} and z_n with d(0, z_n) = 1/n, d(z_n, z_m) = 1/n + 1/m. The measure is
/// the unit mass at 0, plus 2^{-n} at z_n when `full_support`.
GalleryEntry build_infinite_broom(std::size_t n_max = 16, bool full_support = false);

/// The curve t -> (-1 - t, 0), (0, 1 + t), (t, 1) in (R^2, l_inf), truncated
/// to coordinates <= x_max, carrying dt for t <= 1 and t dt for t >= 1.
GalleryEntry build_arc_connected(double x_max = 50.0);

/// Point of the arc-connected curve at parameter t.
Coords arc_point(double t);

/// (1_B(x) + e^{-x}) dx on [0, 2 n_max + 2], B the union of [2k, 2k + 1).
GalleryEntry build_onedir(std::size_t n_max = 20);

/// exponential | gaussian{d} | lebesgue1d | ultrametric{n} | twopoint.
GalleryEntry build_standard(const std::string& name);

/// e^{-t} weights on the grid t_i = i h, i < n, as a finite space.
GalleryEntry build_exponential_grid(std::size_t n = 40, double h = 0.25);

/// Names accepted by build_entry.
std::vector<std::string> gallery_names();

/// Builds by name; `n` overrides the truncation where the entry has one.
GalleryEntry build_entry(const std::string& name, std::optional<std::size_t> n = std::nullopt);

/// A path graph subdividing every segment of the space into `pieces` edges,
/// and the vertex of each gallery node in it.
struct Discretization {
  Space graph;
  std::vector<std::size_t> vertex_of;
};
Discretization discretize_broom(std::size_t n_max, std::size_t pieces);
Discretization discretize_infinite_broom(std::size_t n_max, std::size_t pieces);

/// Sampled mass of a ball of the arc-connected curve: t uniform on the
/// parameter domain, weighted by the density.
McEstimate arc_ball_mass_mc(const GalleryEntry& arc, const Ball& b, std::uint64_t n, std::uint64_t seed);

}  // namespace mms
