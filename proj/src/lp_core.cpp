#include "svf/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace svf::lp {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;
constexpr std::size_t kDegenerateBeforeBland = 32;

// Dense simplex tableau. Row m_ is the objective row holding reduced costs;
// its rhs entry holds -z for the current basis.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Installs cost as the objective row, reduced against the current basis.
  void set_cost(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= n_; ++c) at(m_, c) = c < n_ ? cost[c] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(m_, c) -= cb * at(r, c);
    }
  }

  double objective() const { return -rhs(m_); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (rhs(r) < 0.0 && rhs(r) > -1e-13) rhs(r) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Returns false when the objective is unbounded below.
  bool optimize(const std::vector<char>& allowed) {
    std::vector<char> in_basis(n_, 0);
    for (std::size_t b : basis_) in_basis[b] = 1;
    bool bland = false;
    std::size_t degenerate = 0;
    const std::size_t max_iter = 200 * (m_ + n_) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = n_;
      double best = -kCostTol;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!allowed[c] || in_basis[c]) continue;
        const double d = at(m_, c);
        if (bland) {
          if (d < -kCostTol) {
            enter = c;
            break;
          }
        } else if (d < best) {
          best = d;
          enter = c;
        }
      }
      if (enter == n_) return true;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave != m_ && basis_[r] < basis_[leave])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
      if (leave == m_) return false;

      if (best_ratio <= 1e-12) {
        if (++degenerate > kDegenerateBeforeBland) bland = true;
      } else {
        degenerate = 0;
      }
      in_basis[basis_[leave]] = 0;
      in_basis[enter] = 1;
      pivot(leave, enter);
    }
    throw NumericalError("simplex iteration limit exceeded");
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string("non-finite value in ") + what);
}

std::size_t infer_dimension(std::span<const Halfspace> constraints, std::span<const double> objective) {
  std::size_t dim = 0;
  if (!constraints.empty()) {
    dim = constraints.front().normal.size();
  } else {
    dim = objective.size();
  }
  if (dim == 0) throw InvalidArgument("linear program needs dimension >= 1");
  for (const Halfspace& h : constraints) {
    if (h.normal.size() != dim) throw InvalidArgument("constraint dimension mismatch");
    for (double a : h.normal) require_finite(a, "constraint normal");
    require_finite(h.offset, "constraint offset");
  }
  if (!objective.empty() && objective.size() != dim) throw InvalidArgument("objective dimension mismatch");
  for (double c : objective) require_finite(c, "objective");
  return dim;
}

// Farkas multipliers: y >= 0, sum y_i a_i = 0, sum y_i b_i = -1, minimizing sum y.
// A basic solution has at most dim + 1 nonzeros.
std::vector<Multiplier> farkas_certificate(std::span<const Halfspace> constraints,
                                           const std::vector<std::size_t>& active, std::size_t dim,
                                           double feas_tol) {
  Program p;
  p.num_vars = active.size();
  p.rows.resize(dim + 1);
  for (std::size_t j = 0; j <= dim; ++j) {
    Row& row = p.rows[j];
    row.sense = RowSense::kEqual;
    row.rhs = j < dim ? 0.0 : -1.0;
    row.coeffs.resize(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Halfspace& h = constraints[active[k]];
      row.coeffs[k] = j < dim ? h.normal[j] : h.offset;
    }
  }
  p.cost.assign(active.size(), 1.0);
  const ProgramResult r = solve_program(p, feas_tol);
  if (r.status != Status::kFeasible) throw NumericalError("infeasible system without a Farkas certificate");
  std::vector<Multiplier> cert;
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (r.x[k] > 1e-14) cert.push_back({active[k], r.x[k]});
  }
  return cert;
}

}  // namespace

bool Halfspace::trivial() const {
  return std::all_of(normal.begin(), normal.end(), [](double a) { return a == 0.0; });
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kFeasible:
      return "feasible";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

ProgramResult solve_program(const Program& program, double feas_tol) {
  const std::size_t nv = program.num_vars;
  if (!program.free_vars.empty() && program.free_vars.size() != nv)
    throw InvalidArgument("free-variable mask size mismatch");
  if (!program.cost.empty() && program.cost.size() != nv) throw InvalidArgument("cost size mismatch");
  for (const Row& row : program.rows) {
    if (row.coeffs.size() != nv) throw InvalidArgument("row size mismatch");
  }

  // Column layout: structural (with a negative twin for free variables),
  // then one slack/surplus per inequality row, then artificials.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (!program.free_vars.empty() && program.free_vars[j]) neg_col[j] = ncols++;
  }
  const std::size_t m = program.rows.size();
  std::vector<double> sign(m, 1.0);
  std::vector<RowSense> sense(m);
  std::size_t num_slack = 0, num_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    sense[r] = program.rows[r].sense;
    if (program.rows[r].rhs < 0.0) {
      sign[r] = -1.0;
      if (sense[r] == RowSense::kLessEqual)
        sense[r] = RowSense::kGreaterEqual;
      else if (sense[r] == RowSense::kGreaterEqual)
        sense[r] = RowSense::kLessEqual;
    }
    if (sense[r] != RowSense::kEqual) ++num_slack;
    if (sense[r] != RowSense::kLessEqual) ++num_art;
  }
  const std::size_t first_slack = ncols;
  const std::size_t first_art = first_slack + num_slack;
  const std::size_t total = first_art + num_art;

  Tableau t(m, total);
  std::size_t slack = first_slack, art = first_art;
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = program.rows[r];
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = sign[r] * row.coeffs[j];
      t.at(r, pos_col[j]) = a;
      if (neg_col[j] != SIZE_MAX) t.at(r, neg_col[j]) = -a;
    }
    t.rhs(r) = sign[r] * row.rhs;
    switch (sense[r]) {
      case RowSense::kLessEqual:
        t.at(r, slack) = 1.0;
        t.basis()[r] = slack++;
        break;
      case RowSense::kGreaterEqual:
        t.at(r, slack++) = -1.0;
        t.at(r, art) = 1.0;
        t.basis()[r] = art++;
        break;
      case RowSense::kEqual:
        t.at(r, art) = 1.0;
        t.basis()[r] = art++;
        break;
    }
  }

  ProgramResult result;
  std::vector<char> allowed(total, 1);
  if (num_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t c = first_art; c < total; ++c) phase1[c] = 1.0;
    t.set_cost(phase1);
    t.optimize(allowed);
    result.infeasibility = std::max(0.0, t.objective());
    if (result.infeasibility > feas_tol) {
      result.status = Status::kInfeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible; rows where
    // that is impossible are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < first_art) continue;
      std::size_t best = total;
      double best_abs = 1e-9;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (std::abs(t.at(r, c)) > best_abs) {
          best_abs = std::abs(t.at(r, c));
          best = c;
        }
      }
      if (best != total) {
        t.rhs(r) = 0.0;
        t.pivot(r, best);
      }
    }
    for (std::size_t c = first_art; c < total; ++c) allowed[c] = 0;
  }

  std::vector<double> cost(total, 0.0);
  if (!program.cost.empty()) {
    for (std::size_t j = 0; j < nv; ++j) {
      cost[pos_col[j]] = program.cost[j];
      if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -program.cost[j];
    }
    t.set_cost(cost);
    if (!t.optimize(allowed)) {
      result.status = Status::kUnbounded;
      return result;
    }
  }

  std::vector<double> col_value(total, 0.0);
  for (std::size_t r = 0; r < m; ++r) col_value[t.basis()[r]] = std::max(0.0, t.rhs(r));
  result.x.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    result.x[j] = col_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) result.x[j] -= col_value[neg_col[j]];
  }
  result.value = 0.0;
  for (std::size_t j = 0; j < program.cost.size(); ++j) result.value += program.cost[j] * result.x[j];
  result.status = Status::kFeasible;
  return result;
}

double feasibility_tolerance(std::span<const Halfspace> constraints, const Options& options) {
  double scale = 1.0;
  for (const Halfspace& h : constraints) {
    for (double a : h.normal) scale = std::max(scale, std::abs(a));
    scale = std::max(scale, std::abs(h.offset));
  }
  return options.eps_feas_rel * scale;
}

double max_violation(std::span<const Halfspace> constraints, std::span<const double> point) {
  double worst = 0.0;
  for (const Halfspace& h : constraints) {
    double s = -h.offset;
    for (std::size_t j = 0; j < h.normal.size(); ++j) s += h.normal[j] * point[j];
    worst = std::max(worst, s);
  }
  return worst;
}

bool verify_certificate(std::span<const Halfspace> constraints, std::span<const Multiplier> certificate,
                        double eps) {
  if (certificate.empty() || constraints.empty()) return false;
  const std::size_t dim = constraints.front().normal.size();
  std::vector<double> combo(dim, 0.0);
  double offset = 0.0;
  for (const Multiplier& m : certificate) {
    if (m.index >= constraints.size() || !(m.weight >= 0.0)) return false;
    const Halfspace& h = constraints[m.index];
    for (std::size_t j = 0; j < dim; ++j) combo[j] += m.weight * h.normal[j];
    offset += m.weight * h.offset;
  }
  for (double c : combo) {
    if (std::abs(c) > eps) return false;
  }
  return offset < -eps;
}

Outcome solve(std::span<const Halfspace> constraints, std::span<const double> objective, Sense sense,
              const Options& options) {
  const std::size_t dim = infer_dimension(constraints, objective);
  const double tol = feasibility_tolerance(constraints, options);

  Outcome out;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Halfspace& h = constraints[i];
    if (!h.trivial()) {
      active.push_back(i);
    } else if (h.offset < -tol) {
      out.status = Status::kInfeasible;
      out.certificate = {{i, 1.0}};
      return out;
    }
  }

  Program p;
  p.num_vars = dim;
  p.free_vars.assign(dim, true);
  for (std::size_t i : active) p.rows.push_back({constraints[i].normal, RowSense::kLessEqual, constraints[i].offset});

  std::vector<double> cost(objective.begin(), objective.end());
  if (sense == Sense::kMaximize) {
    for (double& c : cost) c = -c;
  }
  p.cost = cost;

  ProgramResult r = solve_program(p, tol);
  if (r.status == Status::kInfeasible) {
    out.status = Status::kInfeasible;
    out.certificate = farkas_certificate(constraints, active, dim, tol);
    return out;
  }
  if (r.status == Status::kUnbounded) {
    out.status = Status::kUnbounded;
    return out;
  }

  if (!cost.empty() && options.lex_tie_break) {
    // Restrict to the optimal face, then minimize coordinates in order.
    Program face = p;
    face.rows.push_back({cost, RowSense::kLessEqual, r.value});
    std::vector<double> point = r.x;
    for (std::size_t k = 0; k < dim; ++k) {
      face.cost.assign(dim, 0.0);
      face.cost[k] = 1.0;
      const ProgramResult step = solve_program(face, tol);
      if (step.status != Status::kFeasible) continue;
      point = step.x;
      std::vector<double> unit(dim, 0.0);
      unit[k] = 1.0;
      face.rows.push_back({unit, RowSense::kLessEqual, step.x[k]});
    }
    r.x = point;
  }

  out.status = Status::kFeasible;
  out.point = r.x;
  if (!objective.empty()) {
    double v = 0.0;
    for (std::size_t j = 0; j < dim; ++j) v += objective[j] * r.x[j];
    out.value = v;
  }
  return out;
}

Ball chebyshev_center(std::span<const Halfspace> constraints, const Options& options) {
  const std::size_t dim = infer_dimension(constraints, {});
  std::vector<Halfspace> lifted;
  lifted.reserve(constraints.size() + 1);
  for (const Halfspace& h : constraints) {
    double norm = 0.0;
    for (double a : h.normal) norm += a * a;
    Halfspace l;
    l.normal = h.normal;
    l.normal.push_back(std::sqrt(norm));
    l.offset = h.offset;
    lifted.push_back(std::move(l));
  }
  Halfspace nonneg;
  nonneg.normal.assign(dim + 1, 0.0);
  nonneg.normal[dim] = -1.0;
  lifted.push_back(nonneg);

  std::vector<double> objective(dim + 1, 0.0);
  objective[dim] = 1.0;
  const Outcome o = solve(lifted, objective, Sense::kMaximize, options);
  if (o.status == Status::kInfeasible) {
    const Outcome plain = solve(constraints, {}, Sense::kMinimize, options);
    throw InfeasibleRegion(plain.certificate);
  }
  if (o.status == Status::kUnbounded) throw UnboundedRegion();
  // A finite radius does not imply a bounded region (strips, wedges).
  Options probe = options;
  probe.lex_tie_break = false;
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> unit(dim, 0.0);
    unit[k] = 1.0;
    for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
      if (solve(constraints, unit, s, probe).status == Status::kUnbounded) throw UnboundedRegion();
    }
  }
  Ball ball;
  ball.center.assign(o.point.begin(), o.point.begin() + static_cast<std::ptrdiff_t>(dim));
  ball.radius = o.point[dim];
  return ball;
}

}  // namespace svf::lp
