#include "svf/convex_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svf/error.hpp"
#include "svf/lp_core.hpp"

namespace svf::geom {

namespace {

double max_abs(const std::vector<Point>& points) {
  double s = 1.0;
  for (const Point& p : points) {
    for (double v : p) s = std::max(s, std::abs(v));
  }
  return s;
}

double chebyshev_dist(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void require_same_dim(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) throw InvalidArgument("polytope dimension mismatch");
}

struct Block {
  const Polytope* poly;
  double coef;
};

// minimize s subject to |sum_b coef_b sum_j lambda_bj p_bj - target|_i <= s,
// sum_j lambda_bj = 1 per block, lambda >= 0.
double min_residual(std::span<const Block> blocks, std::span<const double> target) {
  const std::size_t dim = target.size();
  std::size_t nl = 0;
  for (const Block& b : blocks) nl += b.poly->size();
  lp::Program prog;
  prog.num_vars = nl + 1;
  const std::size_t s = nl;
  for (std::size_t i = 0; i < dim; ++i) {
    lp::Row upper, lower;
    upper.coeffs.assign(nl + 1, 0.0);
    std::size_t k = 0;
    for (const Block& b : blocks) {
      for (const Point& v : b.poly->vertices()) upper.coeffs[k++] = b.coef * v[i];
    }
    lower.coeffs = upper.coeffs;
    upper.coeffs[s] = -1.0;
    upper.sense = lp::RowSense::kLessEqual;
    upper.rhs = target[i];
    lower.coeffs[s] = 1.0;
    lower.sense = lp::RowSense::kGreaterEqual;
    lower.rhs = target[i];
    prog.rows.push_back(std::move(upper));
    prog.rows.push_back(std::move(lower));
  }
  std::size_t k = 0;
  for (const Block& b : blocks) {
    lp::Row sum;
    sum.coeffs.assign(nl + 1, 0.0);
    for (std::size_t j = 0; j < b.poly->size(); ++j) sum.coeffs[k++] = 1.0;
    sum.sense = lp::RowSense::kEqual;
    sum.rhs = 1.0;
    prog.rows.push_back(std::move(sum));
  }
  prog.cost.assign(nl + 1, 0.0);
  prog.cost[s] = 1.0;
  const lp::ProgramResult r = lp::solve_program(prog, 1e-10);
  if (r.status != lp::Status::kFeasible) throw NumericalError("residual program failed");
  return std::max(0.0, r.value);
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; collinear points within eps of an edge are dropped.
std::vector<Point> planar_hull(const std::vector<Point>& sorted, double eps) {
  if (sorted.size() <= 2) return sorted;
  auto keep_turn = [eps](const Point& o, const Point& a, const Point& b) {
    const double len = std::hypot(b[0] - o[0], b[1] - o[1]);
    return cross(o, a, b) > eps * std::max(len, 1.0);
  };
  std::vector<Point> hull(2 * sorted.size());
  std::size_t k = 0;
  for (const Point& p : sorted) {
    while (k >= 2 && !keep_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = sorted.size() - 1, t = k + 1; i-- > 0;) {
    const Point& p = sorted[i];
    while (k >= t && !keep_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  // Fully collinear input collapses to the two extreme points.
  if (hull.size() < 2) hull = {sorted.front(), sorted.back()};
  return hull;
}

}  // namespace

Polytope::Polytope(std::size_t dim, std::vector<Point> vertices) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("polytope dimension must be positive");
  if (vertices.empty()) throw InvalidArgument("polytope needs at least one vertex");
  for (const Point& v : vertices) {
    if (v.size() != dim) throw InvalidArgument("vertex dimension mismatch");
    for (double c : v) {
      if (!std::isfinite(c)) throw InvalidArgument("non-finite vertex coordinate");
    }
  }
  std::sort(vertices.begin(), vertices.end());
  const double tol = kDefaultEps * max_abs(vertices);
  for (Point& v : vertices) {
    const bool dup = std::any_of(vertices_.begin(), vertices_.end(),
                                 [&](const Point& kept) { return chebyshev_dist(kept, v) <= tol; });
    if (!dup) vertices_.push_back(std::move(v));
  }
}

Polytope Polytope::point(Point p) {
  const std::size_t d = p.size();
  return Polytope(d, {std::move(p)});
}

Polytope Polytope::segment(Point a, Point b) {
  const std::size_t d = a.size();
  return Polytope(d, {std::move(a), std::move(b)});
}

Polytope Polytope::box(const Point& lo, const Point& hi) {
  if (lo.size() != hi.size()) throw InvalidArgument("box corner dimension mismatch");
  const std::size_t d = lo.size();
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = (mask >> i) & 1U ? hi[i] : lo[i];
    corners.push_back(std::move(c));
  }
  return Polytope(d, std::move(corners));
}

double Polytope::scale() const { return max_abs(vertices_); }

Polytope IntervalSet::to_polytope() const { return Polytope(1, {{lo}, {hi}}); }

Polytope scale(double t, const Polytope& p) {
  if (!std::isfinite(t)) throw InvalidArgument("non-finite scale factor");
  std::vector<Point> out = p.vertices();
  for (Point& v : out) {
    for (double& c : v) c *= t;
  }
  return Polytope(p.dim(), std::move(out));
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  require_same_dim(p, q);
  std::vector<Point> out;
  out.reserve(p.size() * q.size());
  for (const Point& a : p.vertices()) {
    for (const Point& b : q.vertices()) {
      Point s(p.dim());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
      out.push_back(std::move(s));
    }
  }
  return Polytope(p.dim(), std::move(out));
}

double residual(const Polytope& p, std::span<const double> v) {
  if (v.size() != p.dim()) throw InvalidArgument("point dimension mismatch");
  const Block blocks[] = {{&p, 1.0}};
  return min_residual(blocks, v);
}

bool contains_point(const Polytope& p, std::span<const double> v, double eps) { return residual(p, v) <= eps; }

double gap(const Polytope& p, const Polytope& q) {
  require_same_dim(p, q);
  const Block blocks[] = {{&p, 1.0}, {&q, -1.0}};
  const std::vector<double> zero(p.dim(), 0.0);
  return min_residual(blocks, zero);
}

bool intersects(const Polytope& p, const Polytope& q, double eps) { return gap(p, q) <= eps; }

bool subset(const Polytope& p, const Polytope& q, double eps) {
  require_same_dim(p, q);
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const Point& v) { return contains_point(q, v, eps); });
}

Polytope project_drop_last(const Polytope& p) {
  if (p.dim() < 2) throw InvalidArgument("cannot project a one-dimensional polytope");
  std::vector<Point> out;
  out.reserve(p.size());
  for (const Point& v : p.vertices()) out.emplace_back(v.begin(), v.end() - 1);
  return Polytope(p.dim() - 1, std::move(out));
}

std::optional<IntervalSet> slice_interval(const Polytope& p, std::span<const double> w, double eps) {
  if (p.dim() < 2) throw InvalidArgument("slice needs dimension >= 2");
  if (w.size() != p.dim() - 1) throw InvalidArgument("slice point dimension mismatch");
  const std::size_t k = p.size();
  const std::size_t last = p.dim() - 1;
  lp::Program prog;
  prog.num_vars = k;
  for (std::size_t i = 0; i < last; ++i) {
    lp::Row row;
    row.coeffs.resize(k);
    for (std::size_t j = 0; j < k; ++j) row.coeffs[j] = p.vertices()[j][i];
    lp::Row lower = row;
    row.sense = lp::RowSense::kLessEqual;
    row.rhs = w[i] + eps;
    lower.sense = lp::RowSense::kGreaterEqual;
    lower.rhs = w[i] - eps;
    prog.rows.push_back(std::move(row));
    prog.rows.push_back(std::move(lower));
  }
  prog.rows.push_back({std::vector<double>(k, 1.0), lp::RowSense::kEqual, 1.0});

  IntervalSet out;
  for (int dir : {1, -1}) {
    prog.cost.resize(k);
    for (std::size_t j = 0; j < k; ++j) prog.cost[j] = dir * p.vertices()[j][last];
    const lp::ProgramResult r = lp::solve_program(prog, 1e-11 * p.scale());
    if (r.status != lp::Status::kFeasible) return std::nullopt;
    (dir == 1 ? out.lo : out.hi) = dir * r.value;
  }
  return out;
}

Polytope reduce_by_lp(const Polytope& p, double eps) {
  std::vector<Point> kept = p.vertices();
  for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
    std::vector<Point> others;
    others.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    if (contains_point(Polytope(p.dim(), others), kept[i], eps)) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return Polytope(p.dim(), std::move(kept));
}

Polytope reduce(const Polytope& p, double eps) {
  if (p.size() <= 1) return p;
  if (p.dim() == 1) {
    const double lo = p.vertices().front()[0];
    const double hi = p.vertices().back()[0];
    return Polytope(1, {{lo}, {hi}});
  }
  if (p.dim() == 2) return Polytope(2, planar_hull(p.vertices(), eps));
  return reduce_by_lp(p, eps);
}

Separation separate(const Polytope& p, std::span<const double> v) {
  const std::size_t d = p.dim();
  if (v.size() != d) throw InvalidArgument("point dimension mismatch");
  // Variables (u, w): maximize u.v - w with u.p <= w for all vertices.
  std::vector<lp::Halfspace> rows;
  for (const Point& q : p.vertices()) {
    lp::Halfspace h;
    h.normal = q;
    h.normal.push_back(-1.0);
    rows.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (double sgn : {1.0, -1.0}) {
      lp::Halfspace h;
      h.normal.assign(d + 1, 0.0);
      h.normal[i] = sgn;
      h.offset = 1.0;
      rows.push_back(std::move(h));
    }
  }
  std::vector<double> objective(v.begin(), v.end());
  objective.push_back(-1.0);
  const lp::Outcome o = lp::solve(rows, objective, lp::Sense::kMaximize);
  if (o.status != lp::Status::kFeasible) throw NumericalError("separation program failed");
  Separation sep;
  double norm = 0.0;
  for (std::size_t i = 0; i < d; ++i) norm += o.point[i] * o.point[i];
  norm = std::sqrt(norm);
  if (*o.value <= 0.0 || norm == 0.0) {
    sep.normal.assign(d, 0.0);
    return sep;
  }
  sep.normal.assign(o.point.begin(), o.point.begin() + static_cast<std::ptrdiff_t>(d));
  for (double& c : sep.normal) c /= norm;
  sep.margin = *o.value / norm;
  return sep;
}

std::optional<Polytope> graph_fiber(const Polytope& graph, double x, double eps) {
  if (graph.dim() < 2) throw InvalidArgument("graph polytope needs dimension >= 2");
  const double tol = eps * graph.scale();
  std::vector<Point> points;
  const auto& verts = graph.vertices();
  for (const Point& v : verts) {
    if (std::abs(v[0] - x) <= tol) points.emplace_back(v.begin() + 1, v.end());
  }
  for (const Point& lo : verts) {
    if (lo[0] >= x - tol) continue;
    for (const Point& hi : verts) {
      if (hi[0] <= x + tol) continue;
      const double s = (x - lo[0]) / (hi[0] - lo[0]);
      Point c(graph.dim() - 1);
      for (std::size_t i = 1; i < graph.dim(); ++i) c[i - 1] = lo[i] + s * (hi[i] - lo[i]);
      points.push_back(std::move(c));
    }
  }
  if (points.empty()) return std::nullopt;
  return reduce(Polytope(graph.dim() - 1, std::move(points)), eps);
}

}  // namespace svf::geom
