#include "svf/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "svf/error.hpp"

namespace svf::check {

namespace {

// Fibers are requested at the same abscissae many times over a grid.
class FiberCache {
 public:
  FiberCache(const model::SvFunction& f, double eps) : f_(f), eps_(eps) {}

  const geom::Polytope& at(double x) {
    auto it = cache_.find(x);
    if (it == cache_.end()) {
      geom::Polytope p = model::evaluate_polytope(f_, x, eps_);
      if (p.dim() <= 2) p = geom::reduce(p);
      it = cache_.emplace(x, std::move(p)).first;
    }
    return it->second;
  }

 private:
  const model::SvFunction& f_;
  double eps_;
  std::map<double, geom::Polytope> cache_;
};

geom::Polytope combination(const geom::Polytope& px, const geom::Polytope& py, double t) {
  geom::Polytope sum = geom::minkowski_sum(geom::scale(t, px), geom::scale(1.0 - t, py));
  return sum.dim() <= 2 ? geom::reduce(sum) : sum;
}

void check_triple_ranges(std::span<const Triple> triples) {
  for (const Triple& tr : triples) {
    if (!(tr.t >= 0.0 && tr.t <= 1.0)) throw InvalidArgument("grid t outside [0, 1]");
  }
}

// Largest residual of a vertex of `inner` with respect to `outer`.
double inclusion_defect(const geom::Polytope& inner, const geom::Polytope& outer) {
  double worst = 0.0;
  for (const geom::Point& v : inner.vertices()) worst = std::max(worst, geom::residual(outer, v));
  return worst;
}

template <class Defect>
CheckOutcome run(const model::SvFunction& f, std::span<const Triple> triples, double eps, const char* detail,
                 Defect defect) {
  check_triple_ranges(triples);
  FiberCache cache(f, eps);
  CheckOutcome out;
  for (const Triple& tr : triples) {
    ++out.checked;
    const geom::Polytope& fx = cache.at(tr.x);
    const geom::Polytope& fy = cache.at(tr.y);
    const geom::Polytope& fm = cache.at(tr.mid);
    const double d = defect(combination(fx, fy, tr.t), fm);
    if (d > eps) {
      out.pass = false;
      out.witness = Witness{tr, d, detail};
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<Triple> TripleGrid::triples() const {
  std::vector<Triple> out;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (policy == GridPolicy::kAllPairs) {
        for (double t : ts) out.push_back({xs[i], xs[k], t, t * xs[i] + (1.0 - t) * xs[k]});
      } else {
        for (std::size_t j = i + 1; j < k; ++j) {
          const double t = (xs[k] - xs[j]) / (xs[k] - xs[i]);
          out.push_back({xs[i], xs[k], t, xs[j]});
        }
      }
    }
  }
  return out;
}

std::string TripleGrid::describe() const {
  std::ostringstream os;
  os << (policy == GridPolicy::kAllPairs ? "all-pairs" : "breakpoint-combos") << " xs=[";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "]";
  if (policy == GridPolicy::kAllPairs) {
    os << " ts=[";
    for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? "," : "") << ts[i];
    os << "]";
  }
  return os.str();
}

TripleGrid dense_grid(const model::DomainInterval& domain, std::size_t resolution) {
  if (resolution == 0) throw InvalidArgument("grid resolution must be positive");
  TripleGrid g;
  const double n = static_cast<double>(resolution);
  for (std::size_t k = 0; k <= resolution; ++k) {
    g.xs.push_back(k == resolution ? domain.b : domain.a + static_cast<double>(k) * domain.width() / n);
    g.ts.push_back(static_cast<double>(k) / n);
  }
  if (domain.width() == 0.0) g.xs.resize(1);
  return g;
}

TripleGrid combos_grid(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return {std::move(xs), {}, GridPolicy::kBreakpointCombos};
}

TripleGrid default_grid(const model::SvFunction& f) {
  return {model::abscissae(f), {0.0, 0.25, 0.5, 0.75, 1.0}, GridPolicy::kAllPairs};
}

std::vector<Triple> triples_of(std::span<const TripleGrid> grids) {
  std::vector<Triple> out;
  for (const TripleGrid& g : grids) {
    auto t = g.triples();
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

CheckOutcome check_convex(const model::SvFunction& f, std::span<const Triple> triples, double eps) {
  return run(f, triples, eps, "t*F(x) + (1-t)*F(y) is not contained in F(mid)",
             [](const geom::Polytope& combo, const geom::Polytope& fm) { return inclusion_defect(combo, fm); });
}

CheckOutcome check_concave(const model::SvFunction& f, std::span<const Triple> triples, double eps) {
  return run(f, triples, eps, "F(mid) is not contained in t*F(x) + (1-t)*F(y)",
             [](const geom::Polytope& combo, const geom::Polytope& fm) { return inclusion_defect(fm, combo); });
}

CheckOutcome check_condition2(const model::SvFunction& f, std::span<const Triple> triples, double eps) {
  return run(f, triples, eps, "F(mid) does not meet t*F(x) + (1-t)*F(y)",
             [](const geom::Polytope& combo, const geom::Polytope& fm) { return geom::gap(fm, combo); });
}

std::pair<double, double> condition1_margins(const model::PiecewiseLinear& lower,
                                             const model::PiecewiseLinear& upper, const Triple& tr) {
  const double first = lower(tr.mid) - (tr.t * upper(tr.x) + (1.0 - tr.t) * upper(tr.y));
  const double second = (tr.t * lower(tr.x) + (1.0 - tr.t) * lower(tr.y)) - upper(tr.mid);
  return {first, second};
}

CheckOutcome check_condition1(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper,
                              std::span<const Triple> triples, double eps) {
  if (lower.xs != upper.xs) throw InvalidArgument("lower and upper envelopes have different breakpoints");
  check_triple_ranges(triples);
  CheckOutcome out;
  for (const Triple& tr : triples) {
    ++out.checked;
    const auto [first, second] = condition1_margins(lower, upper, tr);
    if (first > eps || second > eps) {
      out.pass = false;
      out.witness = first >= second ? Witness{tr, first, "f(mid) > t*g(x) + (1-t)*g(y)"}
                                    : Witness{tr, second, "g(mid) < t*f(x) + (1-t)*f(y)"};
      return out;
    }
  }
  return out;
}

std::vector<lp::Halfspace> sandwich_halfspaces(const model::PiecewiseLinear& lower,
                                               const model::PiecewiseLinear& upper) {
  if (lower.xs != upper.xs || lower.ys.size() != lower.xs.size() || upper.ys.size() != upper.xs.size())
    throw InvalidArgument("lower and upper envelopes have different breakpoints");
  std::vector<lp::Halfspace> hs;
  hs.reserve(2 * lower.xs.size());
  for (std::size_t i = 0; i < lower.xs.size(); ++i) {
    const double x = lower.xs[i];
    hs.push_back({{-x, -1.0}, -lower.ys[i]});
    hs.push_back({{x, 1.0}, upper.ys[i]});
  }
  return hs;
}

const char* to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kFirstInequality:
      return "first";
    case WitnessKind::kSecondInequality:
      return "second";
    case WitnessKind::kEmptyFiber:
      return "empty-fiber";
  }
  return "unknown";
}

CertificateWitness witness_from_certificate(std::span<const lp::Multiplier> certificate,
                                            std::span<const double> breakpoints) {
  double wmax = 0.0;
  for (const lp::Multiplier& m : certificate) wmax = std::max(wmax, m.weight);
  struct Entry {
    std::size_t point;
    bool lower;
  };
  std::vector<Entry> support;
  for (const lp::Multiplier& m : certificate) {
    if (m.weight <= 1e-12 * wmax) continue;
    if (m.index / 2 >= breakpoints.size()) throw Error("certificate refers to an unknown constraint");
    support.push_back({m.index / 2, m.index % 2 == 0});
  }
  std::sort(support.begin(), support.end(),
            [](const Entry& a, const Entry& b) { return a.point < b.point || (a.point == b.point && a.lower > b.lower); });

  for (std::size_t i = 0; i + 1 < support.size(); ++i) {
    if (support[i].point == support[i + 1].point) {
      const double x = breakpoints[support[i].point];
      return {{x, x, 1.0, x}, WitnessKind::kEmptyFiber};
    }
  }
  if (support.size() != 3) throw Error("malformed sandwich certificate: expected three constraints");
  const Entry& left = support[0];
  const Entry& middle = support[1];
  const Entry& right = support[2];
  if (left.lower != right.lower || middle.lower == left.lower)
    throw Error("malformed sandwich certificate: middle constraint is not bracketed");
  const double x = breakpoints[left.point];
  const double y = breakpoints[right.point];
  const double m = breakpoints[middle.point];
  const double t = (y - m) / (y - x);
  return {{x, y, t, m}, middle.lower ? WitnessKind::kFirstInequality : WitnessKind::kSecondInequality};
}

}  // namespace svf::check
