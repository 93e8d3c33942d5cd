#pragma once

// Constructions of affine selections h(x) = c + x*d.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "svf/checkers.hpp"
#include "svf/lp_core.hpp"
#include "svf/svf_model.hpp"

namespace svf::select {

enum class Objective { kChebyshev, kLexmin };
enum class SelectionStatus { kFound, kInfeasible, kMultiple };

const char* to_string(Objective objective);
const char* to_string(SelectionStatus status);

struct Tolerances {
  double eps = 1e-9;         // feasibility / comparison tolerance
  double eps_slice = 1e-7;   // relaxation when slicing at a lower-dimensional selection
  double eps_sel = 1e-7;     // membership tolerance when verifying a selection
  double eps_unique = 1e-7;  // spread below which a transversal is declared unique
  std::size_t n_verify = 101;
};

struct Spread {
  double min = 0.0;
  double max = 0.0;
  double width() const noexcept { return max - min; }
};

struct SelectionResult {
  SelectionStatus status = SelectionStatus::kInfeasible;
  std::optional<model::AffineMap> map;
  std::optional<check::CertificateWitness> witness;
  std::vector<lp::Multiplier> certificate;
  std::optional<bool> unique;
  /// Feasible range of each map coordinate: (alpha, beta) for the sandwich,
  /// (c_1..c_n, d_1..d_n) for transversals.
  std::vector<Spread> spread;
  std::optional<double> slack;   // minimal vertical slack (Chebyshev objective)
  double verified_residual = 0.0;  // worst membership residual over the verification samples
};

/// Affine h with lower <= h <= upper at every breakpoint (hence everywhere,
/// both envelopes being piecewise linear). For scalar maps c = {beta} and
/// d = {alpha}.
SelectionResult sandwich_affine(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper,
                                Objective objective = Objective::kChebyshev, const Tolerances& tol = {});

/// Induction on the fiber dimension: select in the projection that drops the
/// last coordinate, then pick the midpoint of the remaining one-dimensional
/// slice at both ends of the domain and interpolate.
SelectionResult affine_selection_convex(const model::GraphPolytope& graph, const Tolerances& tol = {});

/// Interpolates between central points of the two end fibers, which stays in
/// the graph because the graph is convex.
SelectionResult affine_selection_endpoint(const model::GraphPolytope& graph, const Tolerances& tol = {});

struct FixedPointResult {
  SelectionStatus status = SelectionStatus::kInfeasible;
  std::optional<double> x;
  std::optional<model::AffineMap> map;
  std::optional<check::Witness> witness;  // violated triple when no affine selection exists
  double slack = 0.0;                     // distance of x from the ends of F(x)
};

/// x with x in F(x), read off an affine selection h: the solution of h(x) = x,
/// or the left end of the domain when h has slope one.
FixedPointResult fixed_point(const model::SvFunction& f, Objective objective = Objective::kChebyshev,
                             const Tolerances& tol = {});

/// Constraint system of transversal_solve over (c, d, barycentric weights);
/// the certificate of an infeasible result indexes into it.
std::vector<lp::Halfspace> transversal_halfspaces(std::span<const model::ListedFiber> fibers);

/// Affine maps whose value at every listed x_i lies in the fiber P_i.
SelectionResult transversal_solve(std::span<const model::ListedFiber> fibers, const Tolerances& tol = {});

/// Worst membership residual of h(x) in F(x) over `samples` equally spaced points.
double selection_residual(const model::SvFunction& f, const model::AffineMap& h, std::size_t samples,
                          double eps = geom::kDefaultEps);

}  // namespace svf::select
