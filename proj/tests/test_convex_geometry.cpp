#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "svf/convex_geometry.hpp"
#include "svf/error.hpp"

namespace {

using svf::geom::IntervalSet;
using svf::geom::Point;
using svf::geom::Polytope;
namespace geom = svf::geom;

Polytope tetra() { return Polytope(3, {{0, -1, 0}, {0, 1, 0}, {1, 0, -1}, {1, 0, 1}}); }

Polytope random_cloud(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) {
    Point p;
    for (std::size_t j = 0; j < dim; ++j) p.push_back(static_cast<double>(static_cast<int>(rng() % 13) - 6));
    pts.push_back(p);
  }
  return Polytope(dim, pts);
}

TEST(Polytope, ConstructionNormalizes) {
  const Polytope p(2, {{1, 0}, {0, 0}, {1, 0}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.vertices()[0], (Point{0, 0}));
  EXPECT_THROW(Polytope(2, {}), svf::InvalidArgument);
  EXPECT_THROW(Polytope(2, {{0, 0, 0}}), svf::InvalidArgument);
  EXPECT_THROW(Polytope(1, {{INFINITY}}), svf::InvalidArgument);
}

TEST(Scale, Examples) {
  EXPECT_EQ(geom::scale(0.5, Polytope::segment({-4, 1}, {4, 1})), Polytope::segment({-2, 0.5}, {2, 0.5}));
  EXPECT_EQ(geom::scale(0.0, Polytope::box({-1, -1}, {1, 1})), Polytope::point({0, 0}));
  EXPECT_EQ(geom::scale(1.0, tetra()), tetra());
}

TEST(MinkowskiSum, Examples) {
  const Polytope unit = Polytope::box({0, 0}, {1, 1});
  EXPECT_EQ(geom::reduce(geom::minkowski_sum(unit, unit)), Polytope::box({0, 0}, {2, 2}));

  const Polytope f0 = Polytope::segment({-4, 1}, {4, 1});
  const Polytope f4 = Polytope::segment({-4, -4}, {4, 4});
  const Polytope sum = geom::reduce(geom::minkowski_sum(geom::scale(0.5, f0), geom::scale(0.5, f4)));
  EXPECT_EQ(sum, Polytope(2, {{-4, -1.5}, {0, -1.5}, {0, 2.5}, {4, 2.5}}));

  EXPECT_EQ(geom::minkowski_sum(tetra(), Polytope::point({0, 0, 0})), tetra());
  EXPECT_THROW(geom::minkowski_sum(unit, tetra()), svf::InvalidArgument);
}

TEST(ContainsPoint, Examples) {
  const Polytope para(2, {{-4, -1.5}, {0, -1.5}, {0, 2.5}, {4, 2.5}});
  const Point inside = {0, -1};
  EXPECT_TRUE(geom::contains_point(para, inside));
  for (const Point& v : para.vertices()) EXPECT_TRUE(geom::contains_point(para, v));
  const Polytope f4 = Polytope::segment({-4, -4}, {4, 4});
  const Point miss = {2, -3};
  EXPECT_FALSE(geom::contains_point(f4, miss));
  EXPECT_NEAR(geom::separate(f4, miss).margin, 5.0 / std::sqrt(2.0), 1e-9);
}

TEST(Intersects, Examples) {
  EXPECT_TRUE(geom::intersects(Polytope::segment({-4, -1}, {4, -1}), Polytope::segment({0, -4}, {0, 4})));
  EXPECT_FALSE(geom::intersects(Polytope::segment({0, 0}, {0, 1}), Polytope::segment({1, 0}, {1, 1})));
  EXPECT_TRUE(geom::intersects(tetra(), tetra()));
}

TEST(Subset, Examples) {
  EXPECT_TRUE(geom::subset(Polytope::box({0, 0}, {1, 1}), Polytope::box({0, 0}, {2, 2})));
  EXPECT_FALSE(geom::subset(Polytope::box({0, 0}, {2, 2}), Polytope::box({0, 0}, {1, 1})));
  EXPECT_TRUE(geom::subset(Polytope::segment({0, -4}, {0, 4}), Polytope::box({-4, -4}, {4, 4})));
}

TEST(ProjectDropLast, Examples) {
  EXPECT_EQ(geom::project_drop_last(tetra()), Polytope(2, {{0, -1}, {0, 1}, {1, 0}}));
  EXPECT_EQ(geom::project_drop_last(Polytope::segment({3, -1}, {3, 1})), Polytope::point({3}));
  EXPECT_EQ(geom::project_drop_last(Polytope::box({0, 0, 0}, {1, 1, 1})), Polytope::box({0, 0}, {1, 1}));
  EXPECT_THROW(geom::project_drop_last(Polytope::point({1})), svf::InvalidArgument);
}

TEST(SliceInterval, Examples) {
  const Point w1 = {0.5, 0};
  const auto s1 = geom::slice_interval(tetra(), w1);
  ASSERT_TRUE(s1);
  EXPECT_NEAR(s1->lo, -0.5, 1e-9);
  EXPECT_NEAR(s1->hi, 0.5, 1e-9);

  const Point w2 = {0, 0.5};
  const auto s2 = geom::slice_interval(tetra(), w2);
  ASSERT_TRUE(s2);
  EXPECT_NEAR(s2->lo, 0.0, 1e-9);
  EXPECT_NEAR(s2->hi, 0.0, 1e-9);

  const Point w3 = {0, 2};
  EXPECT_FALSE(geom::slice_interval(tetra(), w3));
}

TEST(Reduce, Examples) {
  EXPECT_EQ(geom::reduce(Polytope(2, {{0, 0}, {1, 0}, {0.5, 0}})), Polytope(2, {{0, 0}, {1, 0}}));
  EXPECT_EQ(geom::reduce(Polytope(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}})), Polytope::box({0, 0}, {1, 1}));
  const Polytope tri(2, {{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(geom::reduce(tri), tri);
}

TEST(GraphFiber, TetraSlices) {
  const auto mid = geom::graph_fiber(tetra(), 0.5);
  ASSERT_TRUE(mid);
  EXPECT_EQ(geom::reduce(*mid), Polytope::box({-0.5, -0.5}, {0.5, 0.5}));
  EXPECT_EQ(*geom::graph_fiber(tetra(), 0.0), Polytope::segment({-1, 0}, {1, 0}));
  EXPECT_FALSE(geom::graph_fiber(tetra(), 1.5));
}

TEST(GeometryProperty, MinkowskiSumCommutes) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 60; ++k) {
    const std::size_t dim = 1 + rng() % 3;
    const Polytope p = random_cloud(rng, dim, 1 + rng() % 6);
    const Polytope q = random_cloud(rng, dim, 1 + rng() % 6);
    EXPECT_EQ(geom::minkowski_sum(p, q), geom::minkowski_sum(q, p));
    EXPECT_EQ(geom::reduce(geom::minkowski_sum(p, q)), geom::reduce(geom::minkowski_sum(q, p)));
  }
}

TEST(GeometryProperty, ReducePreservesHull) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 60; ++k) {
    const std::size_t dim = 1 + rng() % 3;
    const Polytope p = random_cloud(rng, dim, 2 + rng() % 10);
    const Polytope r = geom::reduce(p);
    EXPECT_TRUE(geom::subset(p, r));
    EXPECT_TRUE(geom::subset(r, p));
    EXPECT_EQ(geom::reduce(r), r);
    EXPECT_EQ(r, geom::reduce_by_lp(p));
    // Every kept vertex is extreme.
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::vector<Point> others;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (j != i) others.push_back(r.vertices()[j]);
      if (others.empty()) continue;
      EXPECT_FALSE(geom::contains_point(Polytope(dim, others), r.vertices()[i]));
    }
  }
}

TEST(GeometryProperty, SliceMonotoneInEps) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 60; ++k) {
    const std::size_t dim = 2 + rng() % 2;
    const Polytope p = random_cloud(rng, dim, 3 + rng() % 6);
    Point w;
    for (std::size_t j = 0; j + 1 < dim; ++j) w.push_back(static_cast<double>(static_cast<int>(rng() % 9) - 4) / 2.0);
    const auto tight = geom::slice_interval(p, w, 1e-9);
    const auto loose = geom::slice_interval(p, w, 1e-3);
    if (tight) {
      ASSERT_TRUE(loose);
      EXPECT_LE(loose->lo, tight->lo + 1e-12);
      EXPECT_GE(loose->hi, tight->hi - 1e-12);
    }
  }
}

TEST(GeometryProperty, ScaledSumContainsScaledVertices) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 40; ++k) {
    const std::size_t dim = 1 + rng() % 3;
    const Polytope p = random_cloud(rng, dim, 1 + rng() % 5);
    const Polytope q = random_cloud(rng, dim, 1 + rng() % 5);
    const double t = static_cast<double>(rng() % 5) / 4.0;
    const Polytope s = geom::minkowski_sum(geom::scale(t, p), geom::scale(1 - t, q));
    for (const Point& a : p.vertices()) {
      for (const Point& b : q.vertices()) {
        Point v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = t * a[j] + (1 - t) * b[j];
        EXPECT_TRUE(geom::contains_point(s, v));
      }
    }
  }
}

TEST(GeometryProperty, SeparationCertifiesDistance) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 60; ++k) {
    const Polytope p = random_cloud(rng, 2, 1 + rng() % 6);
    const Point v = {static_cast<double>(static_cast<int>(rng() % 21) - 10),
                     static_cast<double>(static_cast<int>(rng() % 21) - 10)};
    const auto sep = geom::separate(p, v);
    if (geom::contains_point(p, v)) {
      EXPECT_NEAR(sep.margin, 0.0, 1e-9);
      continue;
    }
    ASSERT_GT(sep.margin, 0.0);
    // The hyperplane separates: every vertex is at least margin behind v.
    double uv = 0.0;
    for (std::size_t j = 0; j < 2; ++j) uv += sep.normal[j] * v[j];
    for (const Point& q : p.vertices()) {
      double uq = 0.0;
      for (std::size_t j = 0; j < 2; ++j) uq += sep.normal[j] * q[j];
      EXPECT_GE(uv - uq, sep.margin - 1e-9);
    }
  }
}

}  // namespace
