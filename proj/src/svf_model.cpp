#include "svf/svf_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "svf/error.hpp"

namespace svf::model {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string at_index(const char* what, std::size_t i) {
  std::ostringstream os;
  os << what << " at index " << i;
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void validate_pl(const IntervalPL& f, std::vector<Violation>& out) {
  if (f.breakpoints.empty()) {
    out.push_back({"breakpoints", "at least one breakpoint is required"});
    return;
  }
  if (f.lower.size() != f.breakpoints.size()) out.push_back({"lower", "length differs from breakpoints"});
  if (f.upper.size() != f.breakpoints.size()) out.push_back({"upper", "length differs from breakpoints"});
  if (!all_finite(f.breakpoints)) out.push_back({"breakpoints", "domain must be a compact interval"});
  if (!all_finite(f.lower) || !all_finite(f.upper)) out.push_back({"lower/upper", "fibers must be compact"});
  for (std::size_t i = 1; i < f.breakpoints.size(); ++i) {
    if (!(f.breakpoints[i] > f.breakpoints[i - 1])) {
      out.push_back({"breakpoints", "breakpoints not strictly increasing"});
      break;
    }
  }
  const std::size_t n = std::min(f.lower.size(), f.upper.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (f.lower[i] > f.upper[i]) out.push_back({"lower", at_index("lower exceeds upper", i)});
  }
}

void validate_family(const FiberFamily& f, std::vector<Violation>& out) {
  if (f.n == 0) out.push_back({"dim", "dimension must be positive"});
  if (!std::isfinite(f.domain.a) || !std::isfinite(f.domain.b)) {
    out.push_back({"domain", "domain must be a compact interval"});
  } else if (f.domain.a > f.domain.b) {
    out.push_back({"domain", "domain endpoints out of order"});
  }
  for (std::size_t i = 0; i < f.fibers.size(); ++i) {
    const ListedFiber& fb = f.fibers[i];
    if (fb.set.dim() != f.n) out.push_back({"fibers", at_index("fiber dimension mismatch", i)});
    if (!std::isfinite(fb.x) || !f.domain.contains(fb.x, kFiberMatchEps))
      out.push_back({"fibers", at_index("fiber abscissa outside the domain", i)});
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(f.fibers[j].x - fb.x) <= kFiberMatchEps)
        out.push_back({"fibers", at_index("fiber abscissae not distinct", i)});
    }
  }
  if (f.fallback && f.fallback->dim() != f.n) out.push_back({"default", "default fiber dimension mismatch"});
  if (f.fibers.empty() && !f.fallback) out.push_back({"fibers", "no fiber is defined anywhere"});
}

const ListedFiber* find_listed(const FiberFamily& f, double x) {
  for (const ListedFiber& fb : f.fibers) {
    if (std::abs(fb.x - x) <= kFiberMatchEps) return &fb;
  }
  return nullptr;
}

void require_in_domain(const SvFunction& f, double x, double eps) {
  if (!std::isfinite(x) || !domain(f).contains(x, eps)) throw EvaluationError("x outside the domain: " + fmt(x), x);
}

}  // namespace

double PiecewiseLinear::operator()(double x) const {
  if (xs.empty()) throw InvalidArgument("empty piecewise-linear function");
  if (xs.size() == 1 || x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double s = (x - x0) / (x1 - x0);
  return ys[i - 1] + s * (ys[i] - ys[i - 1]);
}

GraphPolytope::GraphPolytope(std::size_t n, Polytope graph)
    : n_(n), graph_(std::move(graph)), hull_(geom::reduce(graph_)) {
  if (n == 0) throw InvalidArgument("graph polytope needs fiber dimension >= 1");
  if (graph_.dim() != n + 1) throw InvalidArgument("graph polytope vertices must have 1 + n coordinates");
}

DomainInterval GraphPolytope::domain() const {
  // Vertices are lexicographically sorted, so the abscissa range is at the ends.
  return {graph_.vertices().front()[0], graph_.vertices().back()[0]};
}

std::vector<double> GraphPolytope::abscissae() const {
  std::vector<double> xs;
  for (const Point& v : graph_.vertices()) {
    if (xs.empty() || std::abs(v[0] - xs.back()) > kFiberMatchEps) xs.push_back(v[0]);
  }
  return xs;
}

Point AffineMap::operator()(double x) const {
  Point y(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) y[i] = c[i] + x * d[i];
  return y;
}

std::vector<Violation> validate(const SvFunction& f) {
  std::vector<Violation> out;
  std::visit(overloaded{
                 [&](const IntervalPL& pl) { validate_pl(pl, out); },
                 [&](const GraphPolytope&) {},
                 [&](const FiberFamily& fam) { validate_family(fam, out); },
             },
             f);
  return out;
}

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;
  if (instance.domain_open[0] || instance.domain_open[1])
    out.push_back({"domain_open", "domain must be a compact interval"});
  if (instance.fiber_open[0] || instance.fiber_open[1]) out.push_back({"fiber_open", "fibers must be compact"});
  for (Violation& v : validate(instance.function)) out.push_back(std::move(v));
  return out;
}

const char* kind_name(const SvFunction& f) {
  return std::visit(overloaded{
                        [](const IntervalPL&) { return "interval_pl"; },
                        [](const GraphPolytope&) { return "graph_polytope"; },
                        [](const FiberFamily&) { return "fibers"; },
                    },
                    f);
}

std::size_t dimension(const SvFunction& f) {
  return std::visit(overloaded{
                        [](const IntervalPL&) -> std::size_t { return 1; },
                        [](const GraphPolytope& g) { return g.n(); },
                        [](const FiberFamily& fam) { return fam.n; },
                    },
                    f);
}

DomainInterval domain(const SvFunction& f) {
  return std::visit(overloaded{
                        [](const IntervalPL& pl) {
                          return DomainInterval{pl.breakpoints.front(), pl.breakpoints.back()};
                        },
                        [](const GraphPolytope& g) { return g.domain(); },
                        [](const FiberFamily& fam) { return fam.domain; },
                    },
                    f);
}

std::vector<double> abscissae(const SvFunction& f) {
  std::vector<double> xs = std::visit(overloaded{
                                          [](const IntervalPL& pl) { return pl.breakpoints; },
                                          [](const GraphPolytope& g) { return g.abscissae(); },
                                          [](const FiberFamily& fam) {
                                            std::vector<double> out{fam.domain.a, fam.domain.b};
                                            for (const ListedFiber& fb : fam.fibers) out.push_back(fb.x);
                                            return out;
                                          },
                                      },
                                      f);
  std::sort(xs.begin(), xs.end());
  std::vector<double> unique;
  for (double x : xs) {
    if (unique.empty() || x - unique.back() > kFiberMatchEps) unique.push_back(x);
  }
  return unique;
}

Fiber evaluate(const SvFunction& f, double x, double eps) {
  require_in_domain(f, x, eps);
  return std::visit(overloaded{
                        [&](const IntervalPL& pl) -> Fiber {
                          return IntervalSet{pl.lower_pl()(x), pl.upper_pl()(x)};
                        },
                        [&](const GraphPolytope& g) -> Fiber {
                          if (g.n() == 1) {
                            const DomainInterval dom = g.domain();
                            const double w[] = {std::clamp(x, dom.a, dom.b)};
                            const auto s = geom::slice_interval(g.hull(), w, 0.0);
                            if (!s) throw EvaluationError("empty graph fiber at x = " + fmt(x), x);
                            return *s;
                          }
                          auto p = geom::graph_fiber(g.hull(), x, eps);
                          if (!p) throw EvaluationError("empty graph fiber at x = " + fmt(x), x);
                          return *std::move(p);
                        },
                        [&](const FiberFamily& fam) -> Fiber {
                          if (const ListedFiber* fb = find_listed(fam, x)) return fb->set;
                          if (fam.fallback) return *fam.fallback;
                          throw EvaluationError("no fiber defined at x = " + fmt(x), x);
                        },
                    },
                    f);
}

Polytope evaluate_polytope(const SvFunction& f, double x, double eps) {
  Fiber fb = evaluate(f, x, eps);
  if (const auto* iv = std::get_if<IntervalSet>(&fb)) return iv->to_polytope();
  return std::get<Polytope>(std::move(fb));
}

double value_residual(const SvFunction& f, double x, std::span<const double> y, double eps) {
  if (y.size() != dimension(f)) throw InvalidArgument("value dimension mismatch");
  if (const auto* g = std::get_if<GraphPolytope>(&f)) {
    require_in_domain(f, x, eps);
    Point xy{x};
    xy.insert(xy.end(), y.begin(), y.end());
    return geom::residual(g->hull(), xy);
  }
  const Fiber fb = evaluate(f, x, eps);
  if (const auto* iv = std::get_if<IntervalSet>(&fb)) return std::max({0.0, iv->lo - y[0], y[0] - iv->hi});
  return geom::residual(std::get<Polytope>(fb), y);
}

bool contains_value(const SvFunction& f, double x, std::span<const double> y, double eps) {
  return value_residual(f, x, y, eps) <= eps;
}

std::pair<PiecewiseLinear, PiecewiseLinear> inf_sup(const SvFunction& f) {
  if (const auto* pl = std::get_if<IntervalPL>(&f)) return {pl->lower_pl(), pl->upper_pl()};
  const auto* g = std::get_if<GraphPolytope>(&f);
  if (g == nullptr || g->n() != 1) throw InvalidArgument("inf/sup extraction needs a scalar interval or graph encoding");
  PiecewiseLinear lo, hi;
  for (double x : g->abscissae()) {
    const double w[] = {x};
    const auto s = geom::slice_interval(g->hull(), w, 0.0);
    if (!s) throw NumericalError("graph slice at a vertex abscissa is empty");
    lo.xs.push_back(x);
    lo.ys.push_back(s->lo);
    hi.xs.push_back(x);
    hi.ys.push_back(s->hi);
  }
  return {lo, hi};
}

}  // namespace svf::model
