#pragma once

// Compact convex sets in vertex representation.
//
// Every query (membership, intersection, inclusion, slicing) is phrased as a
// small linear program over barycentric weights, so degenerate sets such as
// points and segments need no special handling.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace svf::geom {

using Point = std::vector<double>;

inline constexpr double kDefaultEps = 1e-9;

/// conv(vertices) in R^dim. Vertices are deduplicated (within a tolerance
/// scaled by the largest coordinate) and stored in lexicographic order, so
/// two equal vertex lists compare equal.
class Polytope {
 public:
  Polytope(std::size_t dim, std::vector<Point> vertices);

  static Polytope point(Point p);
  static Polytope segment(Point a, Point b);
  /// Axis-aligned box with corners lo and hi.
  static Polytope box(const Point& lo, const Point& hi);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  /// Largest absolute coordinate (at least 1); used to scale tolerances.
  double scale() const;

  bool operator==(const Polytope&) const = default;

 private:
  std::size_t dim_;
  std::vector<Point> vertices_;
};

/// Compact real interval [lo, hi].
struct IntervalSet {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
  bool contains(double v, double eps) const noexcept { return v >= lo - eps && v <= hi + eps; }
  Polytope to_polytope() const;

  bool operator==(const IntervalSet&) const = default;
};

Polytope scale(double t, const Polytope& p);

/// conv{p + q}; redundant vertices are kept (see reduce).
Polytope minkowski_sum(const Polytope& p, const Polytope& q);

/// Smallest s such that some point of conv(P) is within s of v in every coordinate.
double residual(const Polytope& p, std::span<const double> v);

bool contains_point(const Polytope& p, std::span<const double> v, double eps = kDefaultEps);

/// Same as residual(P, 0) for the difference set P - Q, solved without forming it.
double gap(const Polytope& p, const Polytope& q);

bool intersects(const Polytope& p, const Polytope& q, double eps = kDefaultEps);

/// Every vertex of P lies in Q (sufficient because Q is convex).
bool subset(const Polytope& p, const Polytope& q, double eps = kDefaultEps);

Polytope project_drop_last(const Polytope& p);

/// Range of the last coordinate over points of P whose leading coordinates
/// are within eps of w. Empty when no such point exists.
std::optional<IntervalSet> slice_interval(const Polytope& p, std::span<const double> w, double eps = kDefaultEps);

/// Drops vertices that lie within eps of the hull of the remaining ones.
Polytope reduce(const Polytope& p, double eps = kDefaultEps);

/// reduce() without the planar fast path; exposed for cross-checking.
Polytope reduce_by_lp(const Polytope& p, double eps = kDefaultEps);

/// Result of separating a point from a polytope with a hyperplane.
struct Separation {
  Point normal;         // unit normal, pointing from P towards v
  double margin = 0.0;  // lower bound on the Euclidean distance; 0 if v is in P
};

/// Maximizes u.v - max_p u.p over the box |u_i| <= 1 and normalizes the gap
/// by ||u||_2, which yields a certified lower bound on dist(v, P).
Separation separate(const Polytope& p, std::span<const double> v);

/// {y : (x, y) in conv(graph)}, the fiber of a graph polytope whose first
/// coordinate is the abscissa. Built from the crossings of vertex pairs with
/// the hyperplane at x, then reduced. Returns nullopt outside the x-range.
std::optional<Polytope> graph_fiber(const Polytope& graph, double x, double eps = kDefaultEps);

}  // namespace svf::geom
