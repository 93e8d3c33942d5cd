#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lp_oracle.hpp"
#include "svf/lp_core.hpp"

namespace {

using svf::lp::Halfspace;
using svf::lp::Outcome;
using svf::testing::brute_force_min;
using svf::testing::random_case;
using svf::testing::RandomCase;
using svf::lp::Sense;
using svf::lp::Status;

TEST(LpSolve, OneVariableBoxMaximize) {
  const std::vector<Halfspace> cs = {{{1.0}, 1.0}, {{-1.0}, 0.0}};
  const std::vector<double> obj = {1.0};
  const Outcome o = svf::lp::solve(cs, obj, Sense::kMaximize);
  ASSERT_EQ(o.status, Status::kFeasible);
  EXPECT_NEAR(o.point[0], 1.0, 1e-12);
  EXPECT_NEAR(*o.value, 1.0, 1e-12);
}

TEST(LpSolve, EmptyIntervalCertificate) {
  const std::vector<Halfspace> cs = {{{1.0}, 0.0}, {{-1.0}, -1.0}};
  const Outcome o = svf::lp::solve(cs);
  ASSERT_EQ(o.status, Status::kInfeasible);
  ASSERT_EQ(o.certificate.size(), 2u);
  EXPECT_NEAR(o.certificate[0].weight, o.certificate[1].weight, 1e-12);
  EXPECT_TRUE(svf::lp::verify_certificate(cs, o.certificate, 1e-9));
}

TEST(LpSolve, BarycentricMembership) {
  // lambda >= 0, sum = 1, sum lambda_i p_i = (0, 0) for p = (-1,0), (1,0), (0,1).
  std::vector<Halfspace> cs;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> n(3, 0.0);
    n[i] = -1.0;
    cs.push_back({n, 0.0});
  }
  auto eq = [&](std::vector<double> row, double rhs) {
    cs.push_back({row, rhs});
    for (double& v : row) v = -v;
    cs.push_back({row, -rhs});
  };
  eq({1, 1, 1}, 1.0);
  eq({-1, 1, 0}, 0.0);
  eq({0, 0, 1}, 0.0);
  const Outcome o = svf::lp::solve(cs);
  ASSERT_EQ(o.status, Status::kFeasible);
  EXPECT_NEAR(o.point[0], 0.5, 1e-9);
  EXPECT_NEAR(o.point[1], 0.5, 1e-9);
  EXPECT_NEAR(o.point[2], 0.0, 1e-9);
  EXPECT_LE(svf::lp::max_violation(cs, o.point), 1e-9);
}

TEST(LpSolve, UnboundedDirection) {
  const std::vector<Halfspace> cs = {{{-1.0}, 0.0}};
  const std::vector<double> obj = {1.0};
  EXPECT_EQ(svf::lp::solve(cs, obj, Sense::kMaximize).status, Status::kUnbounded);
}

TEST(LpSolve, RejectsBadInput) {
  const std::vector<Halfspace> mismatch = {{{1.0, 0.0}, 1.0}, {{1.0}, 1.0}};
  EXPECT_THROW(svf::lp::solve(mismatch), svf::InvalidArgument);
  const std::vector<Halfspace> nan = {{{std::numeric_limits<double>::quiet_NaN()}, 1.0}};
  EXPECT_THROW(svf::lp::solve(nan), svf::InvalidArgument);
}

TEST(LpSolve, LexTieBreakPicksSmallestOptimum) {
  // Minimize v2 over the unit square: optimal face is v2 = 0, lexmin picks v1 = 0.
  const std::vector<Halfspace> cs = {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}};
  const std::vector<double> obj = {0.0, 1.0};
  const Outcome o = svf::lp::solve(cs, obj);
  ASSERT_EQ(o.status, Status::kFeasible);
  EXPECT_EQ(o.point[0], 0.0);
  EXPECT_EQ(o.point[1], 0.0);
}

TEST(ChebyshevCenter, UnitSquare) {
  const std::vector<Halfspace> cs = {{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}};
  const auto ball = svf::lp::chebyshev_center(cs);
  EXPECT_NEAR(ball.center[0], 0.5, 1e-9);
  EXPECT_NEAR(ball.center[1], 0.5, 1e-9);
  EXPECT_NEAR(ball.radius, 0.5, 1e-9);
}

TEST(ChebyshevCenter, Triangle) {
  const std::vector<Halfspace> cs = {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 2}};
  const auto ball = svf::lp::chebyshev_center(cs);
  const double r = 2.0 - std::sqrt(2.0);
  EXPECT_NEAR(ball.center[0], r, 1e-9);
  EXPECT_NEAR(ball.center[1], r, 1e-9);
  EXPECT_NEAR(ball.radius, r, 1e-9);
}

TEST(ChebyshevCenter, Segment) {
  const std::vector<Halfspace> cs = {{{1.0}, 1.0}, {{-1.0}, 1.0}};
  const auto ball = svf::lp::chebyshev_center(cs);
  EXPECT_NEAR(ball.center[0], 0.0, 1e-9);
  EXPECT_NEAR(ball.radius, 1.0, 1e-9);
}

TEST(ChebyshevCenter, Errors) {
  const std::vector<Halfspace> empty = {{{1.0}, 0.0}, {{-1.0}, -1.0}};
  EXPECT_THROW(svf::lp::chebyshev_center(empty), svf::lp::InfeasibleRegion);
  const std::vector<Halfspace> halfline = {{{-1.0}, 0.0}};
  EXPECT_THROW(svf::lp::chebyshev_center(halfline), svf::lp::UnboundedRegion);
}

TEST(LpProperty, OptimaMatchBasicSolutionEnumeration) {
  int feasible = 0, infeasible = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const RandomCase rc = random_case(seed);
    const auto oracle = brute_force_min(rc.cs, rc.obj);
    const Outcome o = svf::lp::solve(rc.cs, rc.obj);
    const double tol = svf::lp::feasibility_tolerance(rc.cs);
    if (oracle) {
      ++feasible;
      ASSERT_EQ(o.status, Status::kFeasible) << "seed " << seed;
      EXPECT_NEAR(*o.value, *oracle, 1e-9) << "seed " << seed;
      EXPECT_LE(svf::lp::max_violation(rc.cs, o.point), tol) << "seed " << seed;
    } else {
      ++infeasible;
      ASSERT_EQ(o.status, Status::kInfeasible) << "seed " << seed;
      EXPECT_TRUE(svf::lp::verify_certificate(rc.cs, o.certificate, tol)) << "seed " << seed;
      EXPECT_LE(o.certificate.size(), rc.obj.size() + 1) << "seed " << seed;
    }
  }
  EXPECT_GT(feasible, 0);
  EXPECT_GT(infeasible, 0);
}

TEST(LpProperty, Deterministic) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const RandomCase rc = random_case(seed);
    const Outcome a = svf::lp::solve(rc.cs, rc.obj);
    const Outcome b = svf::lp::solve(rc.cs, rc.obj);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.point, b.point);
    ASSERT_EQ(a.certificate.size(), b.certificate.size());
    for (std::size_t i = 0; i < a.certificate.size(); ++i) {
      EXPECT_EQ(a.certificate[i].index, b.certificate[i].index);
      EXPECT_EQ(a.certificate[i].weight, b.certificate[i].weight);
    }
  }
}

TEST(SolveProgram, EqualityAndFreeVariables) {
  svf::lp::Program p;
  p.num_vars = 2;
  p.free_vars = {true, false};
  p.rows.push_back({{1.0, 1.0}, svf::lp::RowSense::kEqual, -1.0});
  p.rows.push_back({{0.0, 1.0}, svf::lp::RowSense::kGreaterEqual, 2.0});
  p.cost = {0.0, 1.0};
  const auto r = svf::lp::solve_program(p, 1e-9);
  ASSERT_EQ(r.status, Status::kFeasible);
  EXPECT_NEAR(r.x[0], -3.0, 1e-12);
  EXPECT_NEAR(r.x[1], 2.0, 1e-12);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

}  // namespace
