#pragma once

// Builtin instances, seeded random generators, and brute-force oracles that
// the test suites compare the solvers against.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svf/checkers.hpp"
#include "svf/selectors.hpp"
#include "svf/svf_model.hpp"

namespace svf::inst {

struct Expectations {
  bool valid = true;
  std::optional<bool> selection_exists;
  std::optional<bool> unique_transversal;
  std::optional<bool> condition2_on_grid;
};

struct NamedInstance {
  std::string name;
  model::Instance instance;
  Expectations expected;
};

/// Known names: sadowska, triangle_sandwich, halfstrip_fixed, tetra_convex,
/// reject_unbounded, reject_open_interval, singleton_violation,
/// identity_fixed, constant_unit.
NamedInstance builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Integer points in [-8, 8]^(1+n); at least two distinct abscissae.
model::GraphPolytope random_convex_graph(std::size_t n, std::size_t num_points, std::uint64_t seed);

/// 2..max_breakpoints distinct integer breakpoints in [-8, 8] with integer
/// envelopes in [-8, 8]. About half the instances are built around a line,
/// so feasible and infeasible sandwiches both occur.
model::IntervalPL random_interval_pl(std::size_t max_breakpoints, std::uint64_t seed);

struct OracleSandwich {
  select::SelectionResult result;
  /// Vertices of the feasible (alpha, beta) polygon, lexicographically sorted.
  std::vector<std::array<double, 2>> vertices;
};

/// Enumerates lines through pairs of envelope points at distinct abscissae
/// (plus horizontal lines) and keeps those satisfying every constraint.
OracleSandwich oracle_sandwich(const model::PiecewiseLinear& lower, const model::PiecewiseLinear& upper,
                               double eps = 1e-9);

/// Condition check on the dense lattice with naive set arithmetic: interval
/// endpoints for n = 1, unreduced vertex clouds otherwise. Triples touching an
/// abscissa where a fiber family has no fiber are skipped.
check::CheckOutcome oracle_condition2_dense(const model::SvFunction& f, std::size_t resolution,
                                            double eps = geom::kDefaultEps);

}  // namespace svf::inst
