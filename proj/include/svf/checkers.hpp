#pragma once

// Finite-sample checks of convexity, concavity and the two selection
// conditions on a set-valued function. Verdicts only cover the sampled
// triples (x, y, t); the combined abscissa is t*x + (1-t)*y.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svf/lp_core.hpp"
#include "svf/svf_model.hpp"

namespace svf::check {

enum class GridPolicy { kAllPairs, kBreakpointCombos };

struct Triple {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double mid = 0.0;  // t*x + (1-t)*y, snapped to the breakpoint for combos
};

struct TripleGrid {
  std::vector<double> xs;
  std::vector<double> ts;  // unused by the combos policy
  GridPolicy policy = GridPolicy::kAllPairs;

  /// Triples in deterministic order: pairs i < k lexicographically, then t
  /// (all-pairs) or the intermediate index j (combos).
  std::vector<Triple> triples() const;
  std::string describe() const;
};

/// xs = a + k(b-a)/N and ts = j/N for k, j = 0..N.
TripleGrid dense_grid(const model::DomainInterval& domain, std::size_t resolution);
/// Every (x_i, x_k, t) whose combination lands exactly on an intermediate x_j.
TripleGrid combos_grid(std::vector<double> xs);
/// The function's own abscissae with ts = {0, 1/4, 1/2, 3/4, 1}.
TripleGrid default_grid(const model::SvFunction& f);

/// Concatenated triples of several grids, in order.
std::vector<Triple> triples_of(std::span<const TripleGrid> grids);

struct Witness {
  Triple triple;
  double margin = 0.0;
  std::string detail;
};

struct CheckOutcome {
  bool pass = true;
  std::optional<Witness> witness;
  std::size_t checked = 0;
};

CheckOutcome check_convex(const model::SvFunction& f, std::span<const Triple> triples,
                          double eps = geom::kDefaultEps);
CheckOutcome check_concave(const model::SvFunction& f, std::span<const Triple> triples,
                           double eps = geom::kDefaultEps);
CheckOutcome check_condition2(const model::SvFunction& f, std::span<const Triple> triples,
                              double eps = geom::kDefaultEps);
CheckOutcome check_condition1(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper,
                              std::span<const Triple> triples, double eps = geom::kDefaultEps);

/// Amount by which the two inequalities of the scalar pair condition fail at
/// a triple (positive means violated); returns {first, second}.
std::pair<double, double> condition1_margins(const model::PiecewiseLinear& lower,
                                             const model::PiecewiseLinear& upper, const Triple& tr);

// ---------------------------------------------------------------------------
// Sandwich constraints over (alpha, beta): h(x) = alpha*x + beta.
// Constraint 2i is h(x_i) >= lower_i, constraint 2i+1 is h(x_i) <= upper_i.

std::vector<lp::Halfspace> sandwich_halfspaces(const model::PiecewiseLinear& lower,
                                               const model::PiecewiseLinear& upper);

enum class WitnessKind { kFirstInequality, kSecondInequality, kEmptyFiber };

struct CertificateWitness {
  Triple triple;
  WitnessKind kind = WitnessKind::kFirstInequality;
};

const char* to_string(WitnessKind kind);

/// Reads a violated triple of the scalar pair condition off a Farkas
/// certificate of the sandwich system. Throws svf::Error on a certificate
/// that does not have the bracketing shape.
CertificateWitness witness_from_certificate(std::span<const lp::Multiplier> certificate,
                                            std::span<const double> breakpoints);

}  // namespace svf::check
