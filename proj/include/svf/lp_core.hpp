#pragma once

// Small dense linear programming engine.
//
// Two entry points: `solve_program` works on a general program (rows with
// <=, =, >= senses over nonnegative or free variables) and is what the
// geometry layer uses for barycentric LPs; `solve` works on a list of
// halfspaces over free variables and additionally produces Farkas
// certificates of infeasibility whose support respects the Helly bound.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "svf/error.hpp"

namespace svf::lp {

/// normal . v <= offset
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;

  /// True when every normal entry is zero (the constraint is void or
  /// trivially infeasible depending on the sign of the offset).
  bool trivial() const;
};

enum class Status { kFeasible, kInfeasible, kUnbounded };
enum class Sense { kMinimize, kMaximize };

const char* to_string(Status status);

struct Multiplier {
  std::size_t index = 0;  // position in the constraint list
  double weight = 0.0;    // nonnegative
};

struct Outcome {
  Status status = Status::kInfeasible;
  std::vector<double> point;             // present when feasible
  std::optional<double> value;           // present when an objective was optimized
  std::vector<Multiplier> certificate;   // present when infeasible
};

struct Options {
  /// Feasibility tolerance relative to max(1, largest |input coordinate|).
  double eps_feas_rel = 1e-9;
  double eps_opt = 1e-9;
  /// Break ties among optimal points by lexicographic minimization.
  bool lex_tie_break = true;
};

/// Absolute feasibility tolerance for a constraint list.
double feasibility_tolerance(std::span<const Halfspace> constraints, const Options& options = {});

/// Feasibility (objective empty) or optimization over {v : normal_i . v <= offset_i}.
/// Dimension comes from the constraints, or from the objective when there are none.
Outcome solve(std::span<const Halfspace> constraints, std::span<const double> objective = {},
              Sense sense = Sense::kMinimize, const Options& options = {});

/// Checks y >= 0, ||sum y_i normal_i||_inf <= eps and sum y_i offset_i < -eps.
bool verify_certificate(std::span<const Halfspace> constraints, std::span<const Multiplier> certificate,
                        double eps);

/// Largest violation max_i(normal_i . v - offset_i), clamped below at 0.
double max_violation(std::span<const Halfspace> constraints, std::span<const double> point);

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

/// Thrown by chebyshev_center on an empty region; carries the certificate.
class InfeasibleRegion : public Error {
 public:
  InfeasibleRegion(std::vector<Multiplier> certificate)
      : Error("region is infeasible"), certificate_(std::move(certificate)) {}
  const std::vector<Multiplier>& certificate() const noexcept { return certificate_; }

 private:
  std::vector<Multiplier> certificate_;
};

class UnboundedRegion : public Error {
 public:
  UnboundedRegion() : Error("region is unbounded") {}
};

/// Largest Euclidean ball inside the region (normals are unit-normalized).
Ball chebyshev_center(std::span<const Halfspace> constraints, const Options& options = {});

// ---------------------------------------------------------------------------
// General programs

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Row {
  std::vector<double> coeffs;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

/// minimize cost . x subject to rows, x_j >= 0 unless free_vars[j].
struct Program {
  std::size_t num_vars = 0;
  std::vector<bool> free_vars;  // empty means all nonnegative
  std::vector<Row> rows;
  std::vector<double> cost;     // empty means pure feasibility
};

struct ProgramResult {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
  double infeasibility = 0.0;  // phase-one residual
};

/// Two-phase dense simplex. A program is declared feasible when the phase-one
/// residual (sum of artificial variables) is at most feas_tol.
ProgramResult solve_program(const Program& program, double feas_tol);

}  // namespace svf::lp
