#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "abnorm/errors.hpp"
#include "abnorm/seminorm.hpp"
#include "oracles.hpp"

using namespace abnorm;

namespace {

struct Pair {
  std::string name;
  SeminormBody body;
  oracle::Region region;
};

std::vector<Pair> bodies() {
  Matrix2 s;
  s << 2.0, 0.3, 0.3, 0.5;
  oracle::Region ell;
  ell.c = Vector2(0.2, -0.1);
  ell.S = s;
  return {
      {"centered disk", SeminormBody::disk({0, 0}, 1), oracle::disk({0, 0}, 1)},
      {"shifted disk", SeminormBody::disk({0.5, 0}, 1), oracle::disk({0.5, 0}, 1)},
      {"ellipse", SeminormBody::ellipse({0.2, -0.1}, s), ell},
      {"square", SeminormBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}),
       oracle::polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}})},
      {"quadrilateral", SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}}),
       oracle::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}})},
  };
}

Vector2 direction(double th) { return {std::cos(th), std::sin(th)}; }

}  // namespace

TEST(Seminorm, GaugeMatchesBisection) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> len(0.1, 3.0);
  for (const auto& [name, body, region] : bodies()) {
    for (int n = 0; n < 300; ++n) {
      const Vector2 v = len(rng) * direction(angle(rng));
      EXPECT_NEAR(body.gauge(v), region.gauge(v), 1e-9 * std::max(1.0, region.gauge(v))) << name;
    }
  }
}

TEST(Seminorm, SupportMatchesBoundarySampling) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (const auto& [name, body, region] : bodies()) {
    for (int n = 0; n < 50; ++n) {
      const Vector2 w = direction(angle(rng));
      const double want = region.support(w);
      // Dense sampling undershoots smooth maxima by O(step^2).
      EXPECT_NEAR(body.support(w), want, 1e-6) << name;
      EXPECT_GE(body.support(w), want - 1e-12) << name;
    }
  }
}

TEST(Seminorm, GaugeSupportInequalityAndEquality) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& [name, body, region] : bodies()) {
    for (int n = 0; n < 2000; ++n) {
      const Vector2 v(u(rng), u(rng)), w(u(rng), u(rng));
      EXPECT_LE(w.dot(v), body.gauge(v) * body.support(w) + 1e-12 * (1 + v.norm() * w.norm())) << name;
    }
    for (int n = 0; n < 50; ++n) {
      const Vector2 v(u(rng), u(rng));
      const Vector2 w = body.supporting_covector(v);
      const Vector2 p = body.boundary_point(v);
      EXPECT_NEAR(w.dot(p), 1.0, 1e-12) << name;
      EXPECT_NEAR(body.support(w), 1.0, 1e-9) << name;
    }
  }
}

TEST(Seminorm, AxisCondition) {
  const SeminormBody shifted = SeminormBody::disk({0.5, 0}, 1);
  EXPECT_DOUBLE_EQ(shifted.support({0, 1}), 1.0);
  EXPECT_NEAR(1.0 / shifted.gauge({0, 1}), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_FALSE(axis_condition(shifted, 1));
  EXPECT_FALSE(axis_condition(shifted, -1));
  EXPECT_TRUE(axis_condition(SeminormBody::disk({0, 0}, 1), 1));
  // (0, +-1) are vertices, so the axis condition holds even though U is not symmetric.
  const SeminormBody quad = SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}});
  EXPECT_TRUE(axis_condition(quad, 1));
  EXPECT_TRUE(axis_condition(quad, -1));
  // A disk shifted along the axis keeps the condition.
  EXPECT_TRUE(axis_condition(SeminormBody::disk({0, 0.4}, 1), 1));
}

TEST(Seminorm, PolarOfSquareIsDiamond) {
  const SeminormBody sq = SeminormBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  const SeminormBody d = polar(sq);
  ASSERT_EQ(d.vertices().size(), 4u);
  for (const Vector2& v : d.vertices()) EXPECT_NEAR(v.cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(Seminorm, PolarIsInvolutive) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  for (int n = 0; n < 100; ++n) {
    std::vector<Vector2> pts;
    for (int k = 0; k < 12; ++k) pts.push_back(radius(rng) * direction(angle(rng)));
    pts.push_back({1.0, 0.0});
    pts.push_back({-1.0, 0.0});
    pts.push_back({0.0, 1.0});
    pts.push_back({0.0, -1.0});
    const SeminormBody p = SeminormBody::polygon(convex_hull(pts));
    const SeminormBody pp = polar(polar(p));
    ASSERT_EQ(pp.vertices().size(), p.vertices().size());
    for (const Vector2& v : p.vertices()) {
      double best = 1e300;
      for (const Vector2& u : pp.vertices()) best = std::min(best, (u - v).norm());
      EXPECT_LE(best, 1e-9);
    }
  }
}

TEST(Seminorm, InvalidBodies) {
  EXPECT_THROW(SeminormBody::polygon({{1, 1}, {2, 1}, {1, 2}}), InvalidBody);  // origin outside
  EXPECT_THROW(SeminormBody::polygon({{1, 0}, {0, 1}}), InvalidBody);
  EXPECT_THROW(SeminormBody::polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.1, 0.1}}), InvalidBody);  // not convex position
  EXPECT_THROW(SeminormBody::disk({1.5, 0}, 1), InvalidBody);
  EXPECT_THROW(SeminormBody::disk({0, 0}, -1), InvalidBody);
  Matrix2 bad;
  bad << 1, 0, 0, -1;
  EXPECT_THROW(SeminormBody::ellipse({0, 0}, bad), InvalidBody);
  EXPECT_THROW(polar(SeminormBody::disk({0, 0}, 1)), InvalidBody);
}

TEST(Seminorm, LinearImagesAndScaling) {
  Matrix2 a;
  a << 1.0, 0.5, -0.2, 2.0;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& [name, body, region] : bodies()) {
    const SeminormBody moved = body.transformed(a);
    const SeminormBody big = body.scaled(2.0);
    for (int n = 0; n < 100; ++n) {
      const Vector2 v(u(rng), u(rng));
      EXPECT_NEAR(moved.gauge(a * v), body.gauge(v), 1e-12 * (1 + body.gauge(v))) << name;
      EXPECT_NEAR(big.gauge(v), 0.5 * body.gauge(v), 1e-12 * (1 + body.gauge(v))) << name;
    }
  }
  EXPECT_TRUE(SeminormBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}).centrally_symmetric());
  EXPECT_FALSE(SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}}).centrally_symmetric());
  EXPECT_FALSE(SeminormBody::disk({0.5, 0}, 1).centrally_symmetric());
}
