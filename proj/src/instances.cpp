#include "svf/instances.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>
#include <random>

#include "svf/error.hpp"

namespace svf::inst {

namespace {

using geom::Point;
using geom::Polytope;

model::Instance pl_instance(std::vector<double> xs, std::vector<double> lo, std::vector<double> hi) {
  return {model::IntervalPL{std::move(xs), std::move(lo), std::move(hi)}};
}

NamedInstance sadowska() {
  model::FiberFamily fam;
  fam.n = 2;
  fam.domain = {0.0, 4.0};
  fam.fibers = {
      {0.0, Polytope::segment({-4, 1}, {4, 1})},
      {1.0, Polytope::segment({-1, -4}, {-1, 4})},
      {2.0, Polytope::segment({-4, -1}, {4, -1})},
      {3.0, Polytope::segment({1, -4}, {1, 4})},
      {4.0, Polytope::segment({-4, -4}, {4, 4})},
  };
  fam.fallback = Polytope::box({-4, -4}, {4, 4});
  Expectations e;
  e.selection_exists = false;
  e.unique_transversal = true;
  e.condition2_on_grid = true;
  return {"sadowska", {std::move(fam)}, e};
}

// Draws uniformly from [lo, hi] with a plain modulo so streams are identical
// across standard library implementations.
class IntDraw {
 public:
  explicit IntDraw(std::uint64_t seed) : rng_(seed) {}
  int operator()(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<std::string> builtin_names() {
  return {"sadowska",           "triangle_sandwich",   "halfstrip_fixed", "tetra_convex", "reject_unbounded",
          "reject_open_interval", "singleton_violation", "identity_fixed",  "constant_unit"};
}

NamedInstance builtin(const std::string& name) {
  if (name == "sadowska") return sadowska();
  if (name == "triangle_sandwich") {
    Expectations e;
    e.selection_exists = true;
    e.condition2_on_grid = true;
    return {name, pl_instance({0, 1, 2}, {1, 0, 1}, {1, 1, 1}), e};
  }
  if (name == "halfstrip_fixed") {
    Expectations e;
    e.selection_exists = true;
    e.condition2_on_grid = true;
    return {name, pl_instance({0, 1}, {0, 0.5}, {0.5, 1}), e};
  }
  if (name == "tetra_convex") {
    Expectations e;
    e.selection_exists = true;
    e.condition2_on_grid = true;
    Polytope graph(3, {{0, -1, 0}, {0, 1, 0}, {1, 0, -1}, {1, 0, 1}});
    return {name, {model::GraphPolytope(2, std::move(graph))}, e};
  }
  if (name == "reject_unbounded") {
    // [x^2, +inf) sampled at integer abscissae.
    const double inf = std::numeric_limits<double>::infinity();
    Expectations e;
    e.valid = false;
    return {name, pl_instance({-2, -1, 0, 1, 2}, {4, 1, 0, 1, 4}, {inf, inf, inf, inf, inf}), e};
  }
  if (name == "reject_open_interval") {
    // (x^2, 1) over the open interval (-1, 1).
    Expectations e;
    e.valid = false;
    model::Instance inst = pl_instance({-1, 0, 1}, {1, 0, 1}, {1, 1, 1});
    inst.domain_open = {true, true};
    inst.fiber_open = {true, true};
    return {name, std::move(inst), e};
  }
  if (name == "singleton_violation") {
    model::FiberFamily fam;
    fam.n = 1;
    fam.domain = {0.0, 2.0};
    fam.fibers = {{0.0, Polytope::point({0})}, {1.0, Polytope::point({1})}, {2.0, Polytope::point({0})}};
    Expectations e;
    e.selection_exists = false;
    e.condition2_on_grid = false;
    return {name, {std::move(fam)}, e};
  }
  if (name == "identity_fixed") {
    Expectations e;
    e.selection_exists = true;
    e.condition2_on_grid = true;
    return {name, pl_instance({0, 1}, {0, 1}, {0, 1}), e};
  }
  if (name == "constant_unit") {
    Expectations e;
    e.selection_exists = true;
    e.condition2_on_grid = true;
    return {name, pl_instance({0, 1}, {0, 0}, {1, 1}), e};
  }
  throw InvalidArgument("unknown builtin instance \"" + name + "\"");
}

model::GraphPolytope random_convex_graph(std::size_t n, std::size_t num_points, std::uint64_t seed) {
  if (n < 1 || n > 4) throw InvalidArgument("random graph fiber dimension must be in 1..4");
  if (num_points < 4 || num_points > 64) throw InvalidArgument("random graph point count must be in 4..64");
  IntDraw draw(seed);
  std::vector<Point> pts(num_points, Point(n + 1));
  for (Point& p : pts) {
    for (double& c : p) c = draw(-8, 8);
  }
  const bool flat = std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return p[0] == pts[0][0]; });
  if (flat) pts.back()[0] = pts[0][0] == 8 ? 7 : pts[0][0] + 1;
  return model::GraphPolytope(n, Polytope(n + 1, std::move(pts)));
}

model::IntervalPL random_interval_pl(std::size_t max_breakpoints, std::uint64_t seed) {
  if (max_breakpoints < 2 || max_breakpoints > 17) throw InvalidArgument("breakpoint count must be in 2..17");
  IntDraw draw(seed);
  const std::size_t m = static_cast<std::size_t>(draw(2, static_cast<int>(max_breakpoints)));
  std::vector<int> pool;
  for (int v = -8; v <= 8; ++v) pool.push_back(v);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(draw(0, static_cast<int>(pool.size() - 1 - i)));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> xs(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(xs.begin(), xs.end());

  model::IntervalPL pl;
  const bool around_line = draw(0, 1) == 1;
  const int slope = draw(-1, 1);
  const int shift = draw(-3, 3);
  for (int x : xs) {
    int lo = 0, hi = 0;
    if (around_line) {
      const int c = slope * x + shift;
      lo = c - draw(0, 2);
      hi = c + draw(0, 2);
    } else {
      lo = draw(-8, 8);
      hi = draw(-8, 8);
    }
    if (lo > hi) std::swap(lo, hi);
    pl.breakpoints.push_back(x);
    pl.lower.push_back(std::clamp(lo, -8, 8));
    pl.upper.push_back(std::clamp(hi, -8, 8));
  }
  if (around_line) {
    // One random nudge that may or may not destroy feasibility.
    const std::size_t i = static_cast<std::size_t>(draw(0, static_cast<int>(m - 1)));
    const int delta = draw(-3, 3);
    if (delta > 0) {
      pl.lower[i] = std::min(pl.lower[i] + delta, pl.upper[i]);
    } else {
      pl.upper[i] = std::max(pl.upper[i] + delta, pl.lower[i]);
    }
  }
  return pl;
}

OracleSandwich oracle_sandwich(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper, double eps) {
  const std::size_t m = lower.xs.size();
  if (m == 0 || m > 16) throw InvalidArgument("oracle handles 1..16 breakpoints");
  if (upper.xs != lower.xs) throw InvalidArgument("lower and upper envelopes have different breakpoints");

  auto feasible = [&](double alpha, double beta) {
    for (std::size_t i = 0; i < m; ++i) {
      const double h = alpha * lower.xs[i] + beta;
      if (h < lower.ys[i] - eps || h > upper.ys[i] + eps) return false;
    }
    return true;
  };

  OracleSandwich out;
  // Boundary points: (x_i, lower_i) and (x_i, upper_i).
  std::vector<std::array<double, 2>> pts;
  for (std::size_t i = 0; i < m; ++i) {
    pts.push_back({lower.xs[i], lower.ys[i]});
    pts.push_back({lower.xs[i], upper.ys[i]});
  }
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = p + 1; q < pts.size(); ++q) {
      if (pts[p][0] == pts[q][0]) continue;
      const double alpha = (pts[q][1] - pts[p][1]) / (pts[q][0] - pts[p][0]);
      const double beta = pts[p][1] - alpha * pts[p][0];
      if (!feasible(alpha, beta)) continue;
      const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const auto& v) {
        return std::abs(v[0] - alpha) <= eps && std::abs(v[1] - beta) <= eps;
      });
      if (!seen) out.vertices.push_back({alpha, beta});
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());

  bool any = !out.vertices.empty();
  std::optional<std::array<double, 2>> horizontal;
  for (const auto& p : pts) {
    if (!any && feasible(0.0, p[1])) {
      horizontal = std::array<double, 2>{0.0, p[1]};
      any = true;
    }
  }

  select::SelectionResult& r = out.result;
  if (!any) {
    r.status = select::SelectionStatus::kInfeasible;
    return out;
  }
  r.status = select::SelectionStatus::kFound;
  if (!out.vertices.empty()) {
    double a = 0.0, b = 0.0;
    for (const auto& v : out.vertices) {
      a += v[0];
      b += v[1];
    }
    a /= static_cast<double>(out.vertices.size());
    b /= static_cast<double>(out.vertices.size());
    r.map = model::AffineMap{{b}, {a}};
    r.unique = out.vertices.size() == 1;
  } else {
    r.map = model::AffineMap{{(*horizontal)[1]}, {0.0}};
    r.unique = false;
  }
  return out;
}

check::CheckOutcome oracle_condition2_dense(const model::SvFunction& f, std::size_t resolution, double eps) {
  if (resolution == 0 || resolution > 64) throw InvalidArgument("oracle resolution must be in 1..64");
  const model::DomainInterval dom = model::domain(f);
  const std::size_t n = model::dimension(f);
  const double res = static_cast<double>(resolution);
  check::CheckOutcome out;

  for (std::size_t i = 0; i <= resolution; ++i) {
    for (std::size_t k = i + 1; k <= resolution; ++k) {
      for (std::size_t j = 0; j <= resolution; ++j) {
        const double x = dom.a + static_cast<double>(i) * dom.width() / res;
        const double y = dom.a + static_cast<double>(k) * dom.width() / res;
        const double t = static_cast<double>(j) / res;
        const double mid = t * x + (1.0 - t) * y;
        std::optional<Polytope> px, py, pm;
        try {
          px = model::evaluate_polytope(f, x, eps);
          py = model::evaluate_polytope(f, y, eps);
          pm = model::evaluate_polytope(f, mid, eps);
        } catch (const EvaluationError&) {
          continue;  // F is undefined at one of the three abscissae
        }
        ++out.checked;
        double gap = 0.0;
        if (n == 1) {
          auto lo_hi = [](const Polytope& p) {
            double lo = p.vertices().front()[0], hi = lo;
            for (const Point& v : p.vertices()) {
              lo = std::min(lo, v[0]);
              hi = std::max(hi, v[0]);
            }
            return std::pair{lo, hi};
          };
          const auto [lx, hx] = lo_hi(*px);
          const auto [ly, hy] = lo_hi(*py);
          const auto [lm, hm] = lo_hi(*pm);
          const double ls = t * lx + (1.0 - t) * ly;
          const double hs = t * hx + (1.0 - t) * hy;
          gap = std::max({0.0, lm - hs, ls - hm});
        } else {
          std::vector<Point> cloud;
          for (const Point& p : px->vertices()) {
            for (const Point& q : py->vertices()) {
              Point s(n);
              for (std::size_t c = 0; c < n; ++c) s[c] = t * p[c] + (1.0 - t) * q[c];
              cloud.push_back(std::move(s));
            }
          }
          gap = geom::gap(*pm, Polytope(n, std::move(cloud)));
        }
        if (gap > eps) {
          out.pass = false;
          out.witness = check::Witness{{x, y, t, mid}, gap, "F(mid) does not meet t*F(x) + (1-t)*F(y)"};
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace svf::inst
