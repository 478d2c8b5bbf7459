#include "abnorm/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "abnorm/errors.hpp"

namespace abnorm {

namespace {

double cross(const Vector2& o, const Vector2& a, const Vector2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double scale_of(const std::vector<Vector2>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

}  // namespace

std::vector<Vector2> convex_hull(std::vector<Vector2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector2& a, const Vector2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const double tol = 1e-12 * scale_of(pts) * scale_of(pts);
  std::vector<Vector2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

SeminormBody SeminormBody::polygon(std::vector<Vector2> vertices) {
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw InvalidBody("non-finite vertex");
  }
  SeminormBody b;
  b.kind_ = Kind::Polygon;
  b.vertices_ = convex_hull(vertices);
  if (b.vertices_.size() < 3) throw InvalidBody("polygon needs three extreme points");
  b.validate_polygon();
  const double tol = 1e-9 * scale_of(vertices);
  for (const auto& v : vertices) {
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.normals_.size(); ++i) slack = std::min(slack, b.offsets_[i] - b.normals_[i].dot(v));
    if (slack > tol) throw InvalidBody("vertices are not in convex position");
  }
  return b;
}

void SeminormBody::validate_polygon() {
  const std::size_t n = vertices_.size();
  normals_.resize(n);
  offsets_.resize(n);
  const double tol = 1e-12 * scale_of(vertices_);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2 edge = vertices_[(i + 1) % n] - vertices_[i];
    normals_[i] = Vector2(edge.y(), -edge.x()).normalized();
    offsets_[i] = normals_[i].dot(vertices_[i]);
    if (!(offsets_[i] > tol)) throw InvalidBody("origin is not strictly inside the polygon");
  }
}

SeminormBody SeminormBody::ellipse(const Vector2& center, const Matrix2& shape) {
  if (!center.allFinite() || !shape.allFinite()) throw InvalidBody("non-finite ellipse data");
  if (std::abs(shape(0, 1) - shape(1, 0)) > 1e-12 * std::max(1.0, shape.cwiseAbs().maxCoeff())) {
    throw InvalidBody("ellipse matrix must be symmetric");
  }
  const Matrix2 s = 0.5 * (shape + shape.transpose());
  if (!(s(0, 0) > 0.0) || !(s.determinant() > 0.0)) throw InvalidBody("ellipse matrix must be positive definite");
  SeminormBody b;
  b.kind_ = Kind::Ellipse;
  b.center_ = center;
  b.shape_ = s;
  b.shape_inv_ = s.inverse();
  if (!(center.dot(b.shape_inv_ * center) < 1.0 - 1e-12)) {
    throw InvalidBody("origin is not strictly inside the ellipse");
  }
  return b;
}

SeminormBody SeminormBody::disk(const Vector2& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidBody("radius must be positive");
  SeminormBody b = ellipse(center, radius * radius * Matrix2::Identity());
  b.kind_ = Kind::Disk;
  b.radius_ = radius;
  return b;
}

double SeminormBody::gauge(const Vector2& v) const {
  if (v.isZero(0.0)) return 0.0;
  if (kind_ == Kind::Polygon) {
    double g = 0.0;
    for (std::size_t i = 0; i < normals_.size(); ++i) g = std::max(g, normals_[i].dot(v) / offsets_[i]);
    return g;
  }
  // (v - l c)^T A (v - l c) = l^2  =>  (1 - q) l^2 + 2 p l - r = 0 with q < 1.
  const double q = center_.dot(shape_inv_ * center_);
  const double p = center_.dot(shape_inv_ * v);
  const double r = v.dot(shape_inv_ * v);
  const double disc = std::sqrt(p * p + (1.0 - q) * r);
  return p > 0.0 ? r / (p + disc) : (disc - p) / (1.0 - q);
}

double SeminormBody::support(const Vector2& w) const {
  if (kind_ == Kind::Polygon) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices_) best = std::max(best, w.dot(v));
    return best;
  }
  return center_.dot(w) + std::sqrt(std::max(0.0, w.dot(shape_ * w)));
}

Vector2 SeminormBody::boundary_point(const Vector2& v) const {
  const double g = gauge(v);
  if (!(g > 0.0)) throw InvalidBody("boundary point of the zero direction");
  return v / g;
}

Vector2 SeminormBody::supporting_covector(const Vector2& point) const {
  const Vector2 p = boundary_point(point);
  if (kind_ == Kind::Polygon) {
    const double tol = 1e-9 * std::max(1.0, p.norm());
    Vector2 sum = Vector2::Zero();
    int count = 0;
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      if (std::abs(normals_[i].dot(p) - offsets_[i]) <= tol) {
        sum += normals_[i] / offsets_[i];
        ++count;
      }
    }
    if (count == 0) throw InvalidBody("point is not on the boundary");
    const Vector2 w = sum / count;
    return w / w.dot(p);
  }
  const Vector2 grad = shape_inv_ * (p - center_);
  return grad / grad.dot(p);
}

SeminormBody SeminormBody::transformed(const Matrix2& a) const {
  if (std::abs(a.determinant()) < 1e-14) throw InvalidBody("singular frame change");
  if (kind_ == Kind::Polygon) {
    std::vector<Vector2> vs;
    vs.reserve(vertices_.size());
    for (const auto& v : vertices_) vs.push_back(a * v);
    return polygon(std::move(vs));
  }
  const Matrix2 s = a * shape_ * a.transpose();
  return ellipse(a * center_, 0.5 * (s + s.transpose()));
}

SeminormBody SeminormBody::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidBody("scale must be positive");
  if (kind_ == Kind::Disk) return disk(lambda * center_, lambda * radius_);
  return transformed(lambda * Matrix2::Identity());
}

bool SeminormBody::centrally_symmetric(double tol) const {
  if (kind_ != Kind::Polygon) return center_.norm() <= tol;
  for (const auto& v : vertices_) {
    const bool has_opposite = std::any_of(vertices_.begin(), vertices_.end(),
                                          [&](const Vector2& u) { return (u + v).norm() <= tol; });
    if (!has_opposite) return false;
  }
  return true;
}

std::string SeminormBody::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case Kind::Polygon:
      os << "polygon[";
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        os << (i ? " " : "") << "(" << vertices_[i].x() << "," << vertices_[i].y() << ")";
      }
      os << "]";
      break;
    case Kind::Ellipse:
      os << "ellipse(center=(" << center_.x() << "," << center_.y() << "), S=[[" << shape_(0, 0) << ","
         << shape_(0, 1) << "],[" << shape_(1, 0) << "," << shape_(1, 1) << "]])";
      break;
    case Kind::Disk:
      os << "disk(center=(" << center_.x() << "," << center_.y() << "), r=" << radius_ << ")";
      break;
  }
  return os.str();
}

double gauge(const SeminormBody& b, const Vector2& v) { return b.gauge(v); }
double support(const SeminormBody& b, const Vector2& w) { return b.support(w); }

bool axis_condition(const SeminormBody& b, int s) {
  const Vector2 axis(0.0, s >= 0 ? 1.0 : -1.0);
  const double sup = b.support(axis);
  const double inv_gauge = 1.0 / b.gauge(axis);
  return std::abs(sup - inv_gauge) <= 1e-9 * std::max(1.0, std::abs(sup));
}

SeminormBody polar(const SeminormBody& b) {
  if (b.kind() != SeminormBody::Kind::Polygon) throw InvalidBody("polar is implemented for polygons");
  const auto& vs = b.vertices();
  const std::size_t n = vs.size();
  std::vector<Vector2> dual;
  dual.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2 edge = vs[(i + 1) % n] - vs[i];
    const Vector2 normal(edge.y(), -edge.x());
    dual.push_back(normal / normal.dot(vs[i]));
  }
  return SeminormBody::polygon(std::move(dual));
}

}  // namespace abnorm
