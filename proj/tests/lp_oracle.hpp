#pragma once

// Brute-force reference for small linear programs, shared by the unit and
// acceptance suites.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "svf/lp_core.hpp"

namespace svf::testing {

using svf::lp::Halfspace;

// Solves the square system A v = b by Gaussian elimination with partial
// pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-10) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / a[i][i];
  return v;
}

// Minimum of the objective over every feasible intersection of d constraint
// boundaries. Valid for bounded, nonempty regions (which always have a vertex).
inline std::optional<double> brute_force_min(const std::vector<Halfspace>& cs, const std::vector<double>& obj) {
  const std::size_t d = obj.size();
  std::optional<double> best;
  std::vector<std::size_t> idx(d);
  auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == d) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (std::size_t i : idx) {
        a.push_back(cs[i].normal);
        b.push_back(cs[i].offset);
      }
      const auto v = solve_square(a, b);
      if (!v) return;
      for (const Halfspace& h : cs) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += h.normal[j] * (*v)[j];
        if (s > h.offset + 1e-9) return;
      }
      double val = 0.0;
      for (std::size_t j = 0; j < d; ++j) val += obj[j] * (*v)[j];
      if (!best || val < *best) best = val;
      return;
    }
    for (std::size_t i = from; i < cs.size(); ++i) {
      idx[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Box |v_j| <= 10 plus up to 12 constraints in total, d in 1..3, integer data.
struct RandomCase {
  std::vector<Halfspace> cs;
  std::vector<double> obj;
};

inline RandomCase random_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  RandomCase rc;
  const std::size_t d = 1 + rng() % 3;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1.0;
    rc.cs.push_back({e, 10.0});
    e[j] = -1.0;
    rc.cs.push_back({e, 10.0});
  }
  const std::size_t extra = rng() % (12 - 2 * d + 1);
  for (std::size_t k = 0; k < extra; ++k) {
    Halfspace h;
    for (std::size_t j = 0; j < d; ++j) h.normal.push_back(draw(-5, 5));
    h.offset = draw(-6, 10);
    rc.cs.push_back(h);
  }
  for (std::size_t j = 0; j < d; ++j) rc.obj.push_back(draw(-4, 4));
  return rc;
}

}  // namespace svf::testing
