#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mms/report.hpp"

namespace mms {

/// Index of a point in a finite space.
struct Node {
  std::size_t index = 0;
  friend bool operator==(Node, Node) = default;
};

using Coords = std::vector<double>;

/// A point of some space: coordinates in R^d, a node of a finite space, or a
/// real number (R^1 shorthand).
using Point = std::variant<Coords, Node, double>;

inline Point node(std::size_t i) { return Node{i}; }

/// B(center, radius) when open, B^cl(center, radius) when closed.
struct Ball {
  Point center;
  double radius;
  bool closed = false;

  Ball(Point c, double r, bool is_closed = false);
};

enum class SpaceKind { euclidean, finite_matrix, path_graph, ultrametric };

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double length = 0.0;
};

struct IntersectResult {
  bool intersects = false;
  Provenance provenance = Provenance::exact;
};

/// Immutable metric space: a distance oracle plus, for continuous kinds, an
/// optional probe sample. Copies share the distance table.
class Space {
 public:
  /// R^d with the l_q norm; q may be +infinity.
  static Space euclidean(std::size_t dim, double q = 2.0);
  /// n x n row-major table; validated for zero diagonal, symmetry and the
  /// triangle inequality.
  static Space finite_matrix(std::vector<double> table, std::size_t n);
  /// Shortest weighted path metric on vertices 0..n-1. Must be connected.
  static Space path_graph(std::size_t n, std::vector<WeightedEdge> edges);
  /// n points, every pair at the same distance.
  static Space ultrametric(std::size_t n, double distance = 1.0);

  /// Attach probe points. `convex = false` marks the space as a non-convex
  /// subset of R^d, so ball intersection can no longer use the center
  /// distance shortcut.
  Space with_samples(std::vector<Point> samples, bool convex = true) const;
  Space with_tolerance(double tol) const;

  SpaceKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != SpaceKind::euclidean; }
  std::size_t dimension() const { return dim_; }
  double exponent() const { return q_; }
  std::size_t cardinality() const { return n_; }
  bool convex() const { return convex_; }
  double tolerance() const { return tol_; }
  std::span<const Point> samples() const;
  const std::vector<WeightedEdge>& edges() const;

  double distance(const Point& a, const Point& b) const;
  /// Fast path for finite kinds.
  double distance(std::size_t i, std::size_t j) const;

  /// d < r (open) or d <= r (closed), with the boundary tolerance applied.
  bool within(double d, double r, bool closed) const;
  bool contains(const Ball& b, const Point& p) const;

  /// All nodes for finite kinds, otherwise the attached samples.
  std::vector<Point> universe() const;

  void validate_point(const Point& p) const;
  std::string describe() const;

 private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::euclidean;
  std::size_t dim_ = 0;
  double q_ = 2.0;
  std::size_t n_ = 0;
  double ultra_distance_ = 1.0;
  bool convex_ = true;
  double tol_ = 1e-12;
  std::shared_ptr<const std::vector<double>> table_;
  std::shared_ptr<const std::vector<WeightedEdge>> edges_;
  std::shared_ptr<const std::vector<Point>> samples_;
};

/// Exact for convex Euclidean spaces (center distance against radius sum) and
/// finite spaces (enumeration). Otherwise decided over `witnesses`, or the
/// space's samples when none are given; the result is then flagged sampled.
IntersectResult balls_intersect(const Space& s, const Ball& b1, const Ball& b2,
                                std::span<const Point> witnesses = {});

/// Parses the plain-text space format (see README, "Space files").
Space parse_space(std::istream& in);
Space load_space(const std::filesystem::path& path);

}  // namespace mms
