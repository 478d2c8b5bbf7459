#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace abnorm {

using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

/// Convex control region U in a plane, with the origin strictly inside.
///
/// Coordinates are taken in whatever frame of the plane the caller chooses; classification
/// expects the canonical (e1, e2) frame. No central symmetry is assumed anywhere.
class SeminormBody {
 public:
  enum class Kind { Polygon, Ellipse, Disk };

  /// Vertices in convex position, counterclockwise or clockwise; collinear vertices are
  /// dropped. Throws InvalidBody for fewer than three extreme points, non-convex input, or
  /// an origin that is not strictly inside.
  static SeminormBody polygon(std::vector<Vector2> vertices);
  /// {u : (u - c)^T S^{-1} (u - c) <= 1} with S symmetric positive definite.
  static SeminormBody ellipse(const Vector2& center, const Matrix2& shape);
  static SeminormBody disk(const Vector2& center, double radius);

  Kind kind() const { return kind_; }
  /// Counterclockwise extreme points (polygons only).
  const std::vector<Vector2>& vertices() const { return vertices_; }
  const Vector2& center() const { return center_; }
  const Matrix2& shape() const { return shape_; }
  double radius() const { return radius_; }

  /// Minkowski functional inf{l > 0 : v/l in U}; 0 at v = 0.
  double gauge(const Vector2& v) const;
  /// max over u in U of <w, u>.
  double support(const Vector2& w) const;

  /// The point of the boundary on the ray through v (v != 0).
  Vector2 boundary_point(const Vector2& v) const;
  /// A covector w with <w, point> = 1 and support(w) = 1 at a boundary point.
  Vector2 supporting_covector(const Vector2& point) const;

  /// Image of U under the invertible linear map a.
  SeminormBody transformed(const Matrix2& a) const;
  SeminormBody scaled(double lambda) const;
  bool centrally_symmetric(double tol = 1e-12) const;

  std::string describe() const;

 private:
  SeminormBody() = default;
  void validate_polygon();

  Kind kind_ = Kind::Disk;
  std::vector<Vector2> vertices_;
  std::vector<Vector2> normals_;  // outward unit normal of edge (v_i, v_{i+1})
  std::vector<double> offsets_;   // n_i . v_i > 0
  Vector2 center_ = Vector2::Zero();
  Matrix2 shape_ = Matrix2::Identity();
  Matrix2 shape_inv_ = Matrix2::Identity();
  double radius_ = 1.0;
};

double gauge(const SeminormBody& b, const Vector2& v);
double support(const SeminormBody& b, const Vector2& w);

/// True iff support(0, s) equals 1/gauge(0, s) within 1e-9 * max(1, support).
bool axis_condition(const SeminormBody& b, int s);

/// {w : <w, u> <= 1 for all u in U} of a polygon. Throws InvalidBody for other shapes.
SeminormBody polar(const SeminormBody& b);

/// Counterclockwise convex hull (monotone chain) without collinear points.
std::vector<Vector2> convex_hull(std::vector<Vector2> points);

}  // namespace abnorm
