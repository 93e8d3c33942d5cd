#include "svf/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "svf/error.hpp"

namespace svf::select {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<double> sample_points(const model::DomainInterval& dom, std::size_t samples) {
  std::vector<double> xs;
  if (samples <= 1 || dom.width() == 0.0) return {dom.a};
  for (std::size_t k = 0; k < samples; ++k) {
    xs.push_back(k + 1 == samples ? dom.b
                                  : dom.a + static_cast<double>(k) * dom.width() / static_cast<double>(samples - 1));
  }
  return xs;
}

model::AffineMap interpolate(double a, const geom::Point& ya, double b, const geom::Point& yb) {
  model::AffineMap h;
  h.c.resize(ya.size());
  h.d.resize(ya.size());
  for (std::size_t i = 0; i < ya.size(); ++i) {
    h.d[i] = b > a ? (yb[i] - ya[i]) / (b - a) : 0.0;
    h.c[i] = ya[i] - a * h.d[i];
  }
  return h;
}

// Exact slice first; the eps_slice relaxation only absorbs rounding in the
// selected leading coordinates when the exact slice comes back empty.
std::optional<geom::IntervalSet> slice_with_fallback(const geom::Polytope& graph, const geom::Point& w,
                                                     double eps_slice) {
  if (auto s = geom::slice_interval(graph, w, 0.0)) return s;
  return geom::slice_interval(graph, w, eps_slice);
}

// Selected values at x = a and x = b for the graph polytope `graph` whose
// fibers live in R^(dim-1).
std::pair<geom::Point, geom::Point> induct(const geom::Polytope& graph, double a, double b, double eps_slice) {
  geom::Point wa{a}, wb{b};
  if (graph.dim() > 2) {
    auto [ga, gb] = induct(geom::project_drop_last(graph), a, b, eps_slice);
    wa.insert(wa.end(), ga.begin(), ga.end());
    wb.insert(wb.end(), gb.begin(), gb.end());
  }
  const auto ha = slice_with_fallback(graph, wa, eps_slice);
  if (!ha) throw EvaluationError("empty slice beyond eps_slice at x = " + fmt(a), a);
  const auto hb = slice_with_fallback(graph, wb, eps_slice);
  if (!hb) throw EvaluationError("empty slice beyond eps_slice at x = " + fmt(b), b);
  geom::Point ya(wa.begin() + 1, wa.end()), yb(wb.begin() + 1, wb.end());
  ya.push_back(ha->mid());
  yb.push_back(hb->mid());
  return {ya, yb};
}

void verify_or_throw(const model::SvFunction& f, const model::AffineMap& h, const Tolerances& tol,
                     SelectionResult& r) {
  for (double x : sample_points(model::domain(f), tol.n_verify)) {
    const double res = model::value_residual(f, x, h(x), tol.eps);
    r.verified_residual = std::max(r.verified_residual, res);
    if (res > tol.eps_sel) throw Error("selection verification failed at x = " + fmt(x));
  }
}

void require_valid_envelopes(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper) {
  if (lower.xs.empty() || lower.xs != upper.xs || lower.ys.size() != lower.xs.size() ||
      upper.ys.size() != upper.xs.size())
    throw InvalidArgument("envelopes must share a nonempty breakpoint set");
  for (std::size_t i = 0; i < lower.xs.size(); ++i) {
    if (i > 0 && !(lower.xs[i] > lower.xs[i - 1])) throw InvalidArgument("breakpoints not strictly increasing");
    if (lower.ys[i] > upper.ys[i]) throw InvalidArgument("lower exceeds upper at index " + std::to_string(i));
  }
}

lp::Options no_tie_break() {
  lp::Options o;
  o.lex_tie_break = false;
  return o;
}

Spread coordinate_spread(std::span<const lp::Halfspace> hs, std::size_t k, std::size_t dim,
                         std::vector<std::vector<double>>* extremes) {
  std::vector<double> unit(dim, 0.0);
  unit[k] = 1.0;
  Spread s{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const lp::Outcome lo = lp::solve(hs, unit, lp::Sense::kMinimize, no_tie_break());
  const lp::Outcome hi = lp::solve(hs, unit, lp::Sense::kMaximize, no_tie_break());
  if (lo.status == lp::Status::kFeasible) {
    s.min = *lo.value;
    if (extremes) extremes->push_back(lo.point);
  }
  if (hi.status == lp::Status::kFeasible) {
    s.max = *hi.value;
    if (extremes) extremes->push_back(hi.point);
  }
  return s;
}

}  // namespace

const char* to_string(Objective objective) {
  return objective == Objective::kChebyshev ? "chebyshev" : "lexmin";
}

const char* to_string(SelectionStatus status) {
  switch (status) {
    case SelectionStatus::kFound:
      return "found";
    case SelectionStatus::kInfeasible:
      return "infeasible";
    case SelectionStatus::kMultiple:
      return "multiple";
  }
  return "unknown";
}

double selection_residual(const model::SvFunction& f, const model::AffineMap& h, std::size_t samples, double eps) {
  double worst = 0.0;
  for (double x : sample_points(model::domain(f), samples))
    worst = std::max(worst, model::value_residual(f, x, h(x), eps));
  return worst;
}

SelectionResult sandwich_affine(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper,
                                Objective objective, const Tolerances& tol) {
  require_valid_envelopes(lower, upper);
  SelectionResult r;
  if (lower.xs.size() == 1) {
    // A single abscissa: any slope works; take the constant midpoint.
    r.status = SelectionStatus::kFound;
    r.map = model::AffineMap{{0.5 * (lower.ys[0] + upper.ys[0])}, {0.0}};
    r.unique = false;
    r.slack = 0.5 * (upper.ys[0] - lower.ys[0]);
    return r;
  }

  const std::vector<lp::Halfspace> hs = check::sandwich_halfspaces(lower, upper);
  lp::Options opts;
  opts.eps_feas_rel = tol.eps;
  const lp::Outcome feas = lp::solve(hs, {}, lp::Sense::kMinimize, opts);
  if (feas.status != lp::Status::kFeasible) {
    r.status = SelectionStatus::kInfeasible;
    r.certificate = feas.certificate;
    r.witness = check::witness_from_certificate(r.certificate, lower.xs);
    return r;
  }

  double alpha = 0.0, beta = 0.0;
  if (objective == Objective::kChebyshev) {
    // Variables (alpha, beta, s): lower_i + s <= h(x_i) <= upper_i - s.
    std::vector<lp::Halfspace> lifted;
    for (const lp::Halfspace& h : hs) lifted.push_back({{h.normal[0], h.normal[1], 1.0}, h.offset});
    const double obj[] = {0.0, 0.0, 1.0};
    const lp::Outcome o = lp::solve(lifted, obj, lp::Sense::kMaximize, opts);
    if (o.status != lp::Status::kFeasible) throw NumericalError("Chebyshev sandwich program failed");
    alpha = o.point[0];
    beta = o.point[1];
    r.slack = o.point[2];
  } else {
    const double obj[] = {1.0, 0.0};
    const lp::Outcome o = lp::solve(hs, obj, lp::Sense::kMinimize, opts);
    if (o.status != lp::Status::kFeasible) throw NumericalError("lexmin sandwich program failed");
    alpha = o.point[0];
    beta = o.point[1];
  }

  r.status = SelectionStatus::kFound;
  r.map = model::AffineMap{{beta}, {alpha}};
  r.spread = {coordinate_spread(hs, 0, 2, nullptr), coordinate_spread(hs, 1, 2, nullptr)};
  r.unique = std::all_of(r.spread.begin(), r.spread.end(), [&](const Spread& s) { return s.width() <= tol.eps_unique; });

  for (double x : sample_points({lower.xs.front(), lower.xs.back()}, tol.n_verify)) {
    const double h = alpha * x + beta;
    const double res = std::max({0.0, lower(x) - h, h - upper(x)});
    r.verified_residual = std::max(r.verified_residual, res);
    if (res > tol.eps_sel) throw Error("sandwich verification failed at x = " + fmt(x));
  }
  return r;
}

SelectionResult affine_selection_convex(const model::GraphPolytope& graph, const Tolerances& tol) {
  const model::DomainInterval dom = graph.domain();
  SelectionResult r;
  auto [ya, yb] = induct(graph.hull(), dom.a, dom.b, tol.eps_slice);
  r.map = interpolate(dom.a, ya, dom.b, yb);
  verify_or_throw(model::SvFunction{graph}, *r.map, tol, r);
  r.status = SelectionStatus::kFound;
  return r;
}

SelectionResult affine_selection_endpoint(const model::GraphPolytope& graph, const Tolerances& tol) {
  const model::DomainInterval dom = graph.domain();
  const geom::Polytope& hull = graph.hull();
  auto center_at = [&](double x) {
    if (graph.n() == 1) {
      const double w[] = {x};
      const auto s = geom::slice_interval(hull, w, 0.0);
      if (!s) throw EvaluationError("empty end fiber at x = " + fmt(x), x);
      return geom::Point{s->mid()};
    }
    // The fiber at an end of the domain is the hull of the vertices lying there.
    geom::Point c(graph.n(), 0.0);
    std::size_t count = 0;
    for (const geom::Point& v : hull.vertices()) {
      if (std::abs(v[0] - x) > tol.eps * hull.scale()) continue;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i + 1];
      ++count;
    }
    if (count == 0) throw EvaluationError("no graph vertex at the end abscissa " + fmt(x), x);
    for (double& ci : c) ci /= static_cast<double>(count);
    return c;
  };
  SelectionResult r;
  r.map = interpolate(dom.a, center_at(dom.a), dom.b, center_at(dom.b));
  verify_or_throw(model::SvFunction{graph}, *r.map, tol, r);
  r.status = SelectionStatus::kFound;
  return r;
}

FixedPointResult fixed_point(const model::SvFunction& f, Objective objective, const Tolerances& tol) {
  const auto [lower, upper] = model::inf_sup(f);
  const model::DomainInterval dom = model::domain(f);
  for (std::size_t i = 0; i < lower.xs.size(); ++i) {
    if (lower.ys[i] < dom.a - tol.eps || upper.ys[i] > dom.b + tol.eps)
      throw InvalidArgument("values escape the domain at x = " + fmt(lower.xs[i]));
  }

  FixedPointResult out;
  const auto triples = check::combos_grid(lower.xs).triples();
  const check::CheckOutcome cond2 = check::check_condition2(f, triples, tol.eps);
  if (!cond2.pass) {
    out.witness = cond2.witness;
    return out;
  }
  const SelectionResult sel = sandwich_affine(lower, upper, objective, tol);
  if (sel.status == SelectionStatus::kInfeasible) {
    const check::Triple& tr = sel.witness->triple;
    const auto [first, second] = check::condition1_margins(lower, upper, tr);
    out.witness = check::Witness{tr, std::max(first, second), check::to_string(sel.witness->kind)};
    return out;
  }

  const double alpha = sel.map->d[0];
  const double beta = sel.map->c[0];
  double x = dom.a;
  if (std::abs(alpha - 1.0) > tol.eps) {
    x = beta / (1.0 - alpha);
    if (x < dom.a - tol.eps || x > dom.b + tol.eps) throw Error("fixed point " + fmt(x) + " left the domain");
    x = std::clamp(x, dom.a, dom.b);
  }
  const double v[] = {x};
  if (!model::contains_value(f, x, v, tol.eps_sel)) throw Error("fixed point verification failed at x = " + fmt(x));
  out.status = SelectionStatus::kFound;
  out.x = x;
  out.map = sel.map;
  out.slack = std::min(x - lower(x), upper(x) - x);
  return out;
}

std::vector<lp::Halfspace> transversal_halfspaces(std::span<const model::ListedFiber> fibers) {
  if (fibers.empty()) throw InvalidArgument("transversal needs at least one fiber");
  const std::size_t n = fibers.front().set.dim();
  std::size_t total = 2 * n;
  for (const model::ListedFiber& fb : fibers) {
    if (fb.set.dim() != n) throw InvalidArgument("fiber dimension mismatch");
    total += fb.set.size();
  }
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(fibers[i].x - fibers[j].x) <= model::kFiberMatchEps)
        throw InvalidArgument("transversal fibers must have distinct abscissae");
    }
  }

  // Variables: c (n), d (n), then the barycentric weights of each fiber.
  std::vector<lp::Halfspace> hs;
  std::size_t base = 2 * n;
  for (const model::ListedFiber& fb : fibers) {
    const auto& verts = fb.set.vertices();
    for (std::size_t k = 0; k < n; ++k) {
      lp::Halfspace row;
      row.normal.assign(total, 0.0);
      row.normal[k] = 1.0;
      row.normal[n + k] = fb.x;
      for (std::size_t j = 0; j < verts.size(); ++j) row.normal[base + j] = -verts[j][k];
      lp::Halfspace neg{row.normal, 0.0};
      for (double& a : neg.normal) a = -a;
      hs.push_back(std::move(row));
      hs.push_back(std::move(neg));
    }
    lp::Halfspace sum;
    sum.normal.assign(total, 0.0);
    for (std::size_t j = 0; j < verts.size(); ++j) sum.normal[base + j] = 1.0;
    sum.offset = 1.0;
    lp::Halfspace neg_sum{sum.normal, -1.0};
    for (double& a : neg_sum.normal) a = -a;
    hs.push_back(std::move(sum));
    hs.push_back(std::move(neg_sum));
    for (std::size_t j = 0; j < verts.size(); ++j) {
      lp::Halfspace nonneg;
      nonneg.normal.assign(total, 0.0);
      nonneg.normal[base + j] = -1.0;
      hs.push_back(std::move(nonneg));
    }
    base += verts.size();
  }
  return hs;
}

SelectionResult transversal_solve(std::span<const model::ListedFiber> fibers, const Tolerances& tol) {
  const std::vector<lp::Halfspace> hs = transversal_halfspaces(fibers);
  const std::size_t n = fibers.front().set.dim();
  const std::size_t total = hs.front().normal.size();
  lp::Options opts;
  opts.eps_feas_rel = tol.eps;

  SelectionResult r;
  const lp::Outcome feas = lp::solve(hs, {}, lp::Sense::kMinimize, opts);
  if (feas.status != lp::Status::kFeasible) {
    r.status = SelectionStatus::kInfeasible;
    r.certificate = feas.certificate;
    return r;
  }

  // Per-coordinate extremes; their average is feasible and central.
  std::vector<std::vector<double>> extremes;
  for (std::size_t k = 0; k < 2 * n; ++k) r.spread.push_back(coordinate_spread(hs, k, total, &extremes));
  if (extremes.empty()) extremes.push_back(feas.point);
  std::vector<double> avg(total, 0.0);
  for (const auto& e : extremes) {
    for (std::size_t j = 0; j < total; ++j) avg[j] += e[j] / static_cast<double>(extremes.size());
  }
  r.map = model::AffineMap{{avg.begin(), avg.begin() + static_cast<std::ptrdiff_t>(n)},
                           {avg.begin() + static_cast<std::ptrdiff_t>(n), avg.begin() + static_cast<std::ptrdiff_t>(2 * n)}};
  r.unique = std::all_of(r.spread.begin(), r.spread.end(), [&](const Spread& s) { return s.width() <= tol.eps_unique; });
  r.status = *r.unique ? SelectionStatus::kFound : SelectionStatus::kMultiple;

  for (const model::ListedFiber& fb : fibers) {
    const double res = geom::residual(fb.set, (*r.map)(fb.x));
    r.verified_residual = std::max(r.verified_residual, res);
    if (res > tol.eps_sel) throw Error("transversal verification failed at x = " + fmt(fb.x));
  }
  return r;
}

}  // namespace svf::select
