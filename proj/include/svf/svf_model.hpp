#pragma once

// Set-valued functions F : [a, b] -> compact convex subsets of R^n.
//
// Three encodings are supported:
//   IntervalPL     scalar fibers [f(x), g(x)] with piecewise-linear f and g
//   GraphPolytope  F(x) = {y : (x, y) in conv(graph)}; convex by construction
//   FiberFamily    finitely many listed fibers plus an optional default fiber

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svf/convex_geometry.hpp"

namespace svf::model {

using geom::IntervalSet;
using geom::Point;
using geom::Polytope;

/// Matching tolerance for listed fiber abscissae.
inline constexpr double kFiberMatchEps = 1e-9;

struct DomainInterval {
  double a = 0.0;
  double b = 0.0;

  double width() const noexcept { return b - a; }
  bool contains(double x, double eps) const noexcept { return x >= a - eps && x <= b + eps; }
  bool operator==(const DomainInterval&) const = default;
};

/// Piecewise-linear interpolant through (xs[i], ys[i]).
struct PiecewiseLinear {
  std::vector<double> xs;
  std::vector<double> ys;

  /// Linear interpolation; x is clamped to [xs.front(), xs.back()].
  double operator()(double x) const;
};

struct IntervalPL {
  std::vector<double> breakpoints;
  std::vector<double> lower;
  std::vector<double> upper;

  PiecewiseLinear lower_pl() const { return {breakpoints, lower}; }
  PiecewiseLinear upper_pl() const { return {breakpoints, upper}; }
};

/// Graph of a convex set-valued function. The first coordinate of every
/// vertex is the abscissa; the remaining n coordinates span the fiber.
class GraphPolytope {
 public:
  GraphPolytope(std::size_t n, Polytope graph);

  std::size_t n() const noexcept { return n_; }
  const Polytope& graph() const noexcept { return graph_; }
  /// Extreme points of the graph (redundant vertices removed).
  const Polytope& hull() const noexcept { return hull_; }
  DomainInterval domain() const;
  /// Distinct abscissae of the graph vertices, ascending.
  std::vector<double> abscissae() const;

 private:
  std::size_t n_;
  Polytope graph_;
  Polytope hull_;
};

struct ListedFiber {
  double x = 0.0;
  Polytope set;
};

struct FiberFamily {
  std::size_t n = 1;
  DomainInterval domain;
  std::vector<ListedFiber> fibers;
  std::optional<Polytope> fallback;  // the "default" fiber
};

using SvFunction = std::variant<IntervalPL, GraphPolytope, FiberFamily>;

/// A parsed instance. The open-endpoint flags exist only so that textual
/// instances with non-compact data can be represented and rejected.
struct Instance {
  SvFunction function;
  std::array<bool, 2> domain_open{false, false};
  std::array<bool, 2> fiber_open{false, false};
};

/// x -> c + x * d
struct AffineMap {
  Point c;
  Point d;

  std::size_t n() const noexcept { return c.size(); }
  Point operator()(double x) const;
};

struct Violation {
  std::string field;
  std::string rule;
};

std::vector<Violation> validate(const Instance& instance);
std::vector<Violation> validate(const SvFunction& f);

const char* kind_name(const SvFunction& f);
std::size_t dimension(const SvFunction& f);
DomainInterval domain(const SvFunction& f);

/// Abscissae whose fibers are determined by the encoding: breakpoints, graph
/// vertex abscissae, or listed fiber positions (plus the domain endpoints).
std::vector<double> abscissae(const SvFunction& f);

using Fiber = std::variant<IntervalSet, Polytope>;

/// F(x). GraphPolytope fibers with n >= 2 are materialized from vertex-pair
/// crossings of the graph.
Fiber evaluate(const SvFunction& f, double x, double eps = geom::kDefaultEps);

/// F(x) as a vertex list (intervals become segments in R^1).
Polytope evaluate_polytope(const SvFunction& f, double x, double eps = geom::kDefaultEps);

/// y in F(x) within eps. For graphs this is a single membership LP in the graph.
bool contains_value(const SvFunction& f, double x, std::span<const double> y, double eps = geom::kDefaultEps);

/// Membership residual of y in F(x) (0 when inside).
double value_residual(const SvFunction& f, double x, std::span<const double> y, double eps = geom::kDefaultEps);

/// Lower and upper envelopes of a scalar function at its breakpoints.
std::pair<PiecewiseLinear, PiecewiseLinear> inf_sup(const SvFunction& f);

// ---------------------------------------------------------------------------
// Instance files (UTF-8 JSON)

struct ParseResult {
  std::optional<Instance> instance;
  std::vector<Violation> violations;
};

ParseResult parse_instance(const std::string& text);
ParseResult parse_instance_file(const std::string& path);

/// Canonical text form; parse followed by serialize is the identity on it.
std::string serialize(const Instance& instance);

}  // namespace svf::model
