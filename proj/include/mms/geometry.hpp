#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mms/measure.hpp"
#include "mms/report.hpp"

namespace mms {

/// A constant with the side of the truth it certifies and how it was probed.
struct ConstantEstimate {
  std::string name;
  double value = 1.0;
  Direction direction = Direction::lower;
  std::string probe;
  std::size_t pairs_checked = 0;
  /// Radius at which the supremum was attained (0 when not applicable).
  double witness_radius = 0.0;
  std::string witness;

  nlohmann::json to_json() const;
};

struct BlossomMass {
  double value = 0.0;
  Direction direction = Direction::exact;
};

/// mass of Bl(base, step), or of Blu(base, step) = Bl(Bl(base, step), step)
/// when `uncentered`. Exact on finite spaces and convex Euclidean spaces
/// (where Bl(B(x, r), s) = B(x, r + s)); on non-convex subsets the blossom is
/// grown from the space's samples and the mass is a lower bound.
BlossomMass blossom_mass(const Measure& m, const Space& s, const Ball& base, double step, bool uncentered);

using PointPair = std::pair<Point, Point>;

/// Radii at which ball masses, blossoms, covers or chains of a finite space
/// can change: midpoints between consecutive values of {d/2, d, 2d} over all
/// distances d, plus one radius beyond the largest.
std::vector<double> critical_radii(const Space& s);

/// sup of mu B(x, r) / mu B(y, r) over the pairs with d(x, y) < r (both
/// orders). With no pairs on a finite space every pair of points is used and
/// the result is exact. Both-zero pairs are skipped; a one-sided zero gives
/// +infinity.
ConstantEstimate local_comparability(const Measure& m, const Space& s, double r,
                                     std::span<const PointPair> pairs = {});

/// Max of local_comparability over the radii. On finite spaces with no pairs
/// and no radii the critical radii are used and the result is C(mu), exact.
ConstantEstimate comparability_sup(const Measure& m, const Space& s, std::span<const double> radii = {},
                                   std::span<const PointPair> pairs = {});

/// Pairs for measures on the line: `count` geometric centers on [lo, hi],
/// each with partners x +- r (1 - q) for 24 geometric q in [1e-9, 1], kept
/// when both points lie in [support_lo, inf).
std::vector<PointPair> line_pair_grid(double r, double lo = 1e-3, double hi = 20.0, std::size_t count = 2048,
                                      double support_lo = 0.0);

struct ComparabilityCheck {
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  double max_ratio = 0.0;
  std::vector<std::string> failures;
};

/// Checks mu B(x, r) <= C^2 mu B(y, r) for every pair whose balls intersect.
ComparabilityCheck intersecting_comparability_check(const Measure& m, const Space& s, double r, double c,
                                                    std::span<const PointPair> pairs);

/// sup of mu B(x, 2r) / mu B(x, r). Exhaustive (exact) on finite spaces when
/// centers and radii are empty.
ConstantEstimate doubling_constant(const Measure& m, const Space& s, std::span<const Point> centers = {},
                                   std::span<const double> radii = {});

/// sup of mu Blu(x, r, r) / mu B(x, r): the blossom constant K.
ConstantEstimate blossom_constant(const Measure& m, const Space& s, std::span<const Point> centers = {},
                                  std::span<const double> radii = {});

/// sup of mu Bl(x, r, r) / mu B(x, r).
ConstantEstimate bl_constant(const Measure& m, const Space& s, std::span<const Point> centers = {},
                             std::span<const double> radii = {});

struct CoveringCount {
  /// Radius r/2 balls, centered at sample points, used by the greedy cover.
  std::size_t cover = 0;
  /// Sample points no single radius r/2 ball can hold two of.
  std::size_t packing = 0;
  std::vector<std::size_t> cover_centers;
  std::vector<std::size_t> packing_points;
};

/// Covers the sample points lying in `ball` by balls of half the radius,
/// greedily taking the candidate center that covers the most uncovered points.
/// The packing count is a lower bound for the covering number of the sample.
CoveringCount geometric_doubling_number(const Space& s, const Ball& ball, std::span<const Point> sample);

/// Sup over all balls of a finite space (critical radii) of the cover and
/// packing counts: an upper and a lower bound for the doubling number D.
struct GeometricDoubling {
  std::size_t upper = 0;
  std::size_t lower = 0;
};
GeometricDoubling geometric_doubling_finite(const Space& s);

/// Smallest K such that whenever d(x, z) < 2r an intersecting chain of at most
/// K + 1 radius-r balls leads from B(x, r) to a ball containing z. Finite
/// spaces only; exhaustive over the critical radii. nullopt when some such z
/// cannot be reached by any chain.
std::optional<std::size_t> measured_chain_length(const Space& s);

/// The same at a single radius. On a finite space the chain condition always
/// fails at some radius, so the doubling bound is applied radius by radius.
std::optional<std::size_t> chain_length_at(const Space& s, double r);

/// D * C^(2K + 3).
double chain_doubling_bound(double c, double d, double k);

struct ChainDoublingCheck {
  std::size_t radii_checked = 0;
  /// Radii where some nearby pair has no chain, so the bound says nothing.
  std::size_t radii_skipped = 0;
  std::size_t max_chain = 0;
  /// Largest mu B(x, 2r) / (D C^(2 K_r + 3) mu B(x, r)) over the checked radii.
  double worst_fraction = 0.0;
  double c = 1.0;
  double d = 1.0;
  bool pass = true;
};

/// mu B(x, 2r) <= D C^(2 K_r + 3) mu B(x, r) at every critical radius with a
/// finite chain length K_r; C is C(mu) and D the greedy cover bound.
ChainDoublingCheck chain_doubling_check(const Measure& m, const Space& s);

struct VitaliResult {
  std::vector<std::size_t> selected;
  double union_all = 0.0;
  double union_selected = 0.0;
  double ratio = 1.0;
  /// Blossom constant the ratio is compared with: supplied, or measured as
  /// the largest mu Blu(x, r, r) / mu B(x, r) over the family.
  double k_reference = 1.0;
  bool certified = true;
  bool within_bound = true;
};

/// Greedy selection by decreasing radius (ties in input order), keeping each
/// ball that meets none already kept.
VitaliResult vitali_select(const Measure& m, const Space& s, std::span<const Ball> balls,
                           std::optional<double> k = std::nullopt);

/// Mass of a finite union of balls: exact for atomic and 1-D density measures.
double union_mass(const Measure& m, const Space& s, std::span<const Ball> balls);

struct ClosedBallCheck {
  double open_value = 0.0;
  double closed_value = 0.0;
  bool equal = false;
};

/// Comparability sup over open balls with d(x, y) < r against closed balls
/// with d(x, y) <= r, on the same pairs.
ClosedBallCheck closed_ball_equivalence_check(const Measure& m, const Space& s, double r,
                                              std::span<const PointPair> pairs, double tol = 1e-6);

}  // namespace mms
