#pragma once

// Reference computations for tests. Each one avoids the library routine it checks.

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>

namespace oracle {

using V4 = Eigen::Vector4d;
using V2 = Eigen::Vector2d;

/// Bracket table keyed by one-based (i, j) with i < j.
using Table = std::map<std::pair<int, int>, V4>;

inline V4 e(int one_based) {
  V4 v = V4::Zero();
  v[one_based - 1] = 1.0;
  return v;
}

inline V4 bracket(const Table& t, const V4& x, const V4& y) {
  V4 out = V4::Zero();
  for (const auto& [ij, value] : t) {
    const int i = ij.first - 1, j = ij.second - 1;
    out += (x[i] * y[j] - x[j] * y[i]) * value;
  }
  return out;
}

/// Convex region given only through a membership test.
struct Region {
  enum class Kind { Polygon, Ellipse } kind = Kind::Ellipse;
  std::vector<V2> ccw;  // polygon vertices, counterclockwise
  V2 c = V2::Zero();
  Eigen::Matrix2d S = Eigen::Matrix2d::Identity();

  bool contains(const V2& u) const {
    if (kind == Kind::Polygon) {
      for (std::size_t i = 0; i < ccw.size(); ++i) {
        const V2 a = ccw[i], b = ccw[(i + 1) % ccw.size()];
        const double cross = (b - a).x() * (u - a).y() - (b - a).y() * (u - a).x();
        if (cross < 0.0) return false;
      }
      return true;
    }
    const V2 d = u - c;
    return d.dot(S.inverse() * d) <= 1.0;
  }

  /// inf{l > 0 : v / l in U} by bisection.
  double gauge(const V2& v) const {
    double lo = 0.0, hi = 1.0;
    while (!contains(v / hi)) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= 0.0) break;
      (contains(v / mid) ? hi : lo) = mid;
    }
    return hi;
  }

  /// max <w, u> over a dense boundary sample (exact at polygon vertices).
  double support(const V2& w, int samples = 20000) const {
    double best = -1e300;
    if (kind == Kind::Polygon) {
      for (std::size_t i = 0; i < ccw.size(); ++i) {
        const V2 a = ccw[i], b = ccw[(i + 1) % ccw.size()];
        for (int k = 0; k <= 16; ++k) best = std::max(best, w.dot(a + (b - a) * (k / 16.0)));
      }
      return best;
    }
    const Eigen::Matrix2d L = S.llt().matrixL();
    for (int k = 0; k < samples; ++k) {
      const double th = 2.0 * std::numbers::pi * k / samples;
      best = std::max(best, w.dot(c + L * V2(std::cos(th), std::sin(th))));
    }
    return best;
  }
};

inline Region disk(V2 c, double r) {
  Region g;
  g.c = c;
  g.S = r * r * Eigen::Matrix2d::Identity();
  return g;
}

inline Region polygon(std::vector<V2> ccw) {
  Region g;
  g.kind = Region::Kind::Polygon;
  g.ccw = std::move(ccw);
  return g;
}

/// Second-order equation psi1'' - u2 c3 psi1' + u2^2 c1 psi1 = -u2^2 c2 psi2, integrated with
/// a tiny explicit midpoint step; independent of the 4x4 system.
inline double psi1_midpoint(double c1, double c2, double c3, double u2, double psi2, double y0, double v0, double T,
                            int steps) {
  const double h = T / steps;
  double y = y0, v = v0;
  auto acc = [&](double yy, double vv) { return u2 * c3 * vv - u2 * u2 * c1 * yy - u2 * u2 * c2 * psi2; };
  for (int i = 0; i < steps; ++i) {
    const double ym = y + 0.5 * h * v, vm = v + 0.5 * h * acc(y, v);
    y += h * vm;
    v += h * acc(ym, vm);
  }
  return y;
}

/// exp(M) by scaling and squaring with a 30-term Taylor series.
inline Eigen::Matrix4d expm(const Eigen::Matrix4d& m) {
  int squarings = 0;
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const Eigen::Matrix4d a = m / std::pow(2.0, squarings);
  Eigen::Matrix4d term = Eigen::Matrix4d::Identity(), sum = Eigen::Matrix4d::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * a / k;
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

}  // namespace oracle
