#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "abnorm/lie_core.hpp"

namespace abnorm {

/// Result of the bracket-flag test V0 = p, V(i+1) = V(i) + [V(i), V(i)].
struct GenerationResult {
  bool generates = false;
  std::vector<int> dims;  // dimension of every flag member until it stalls or reaches 4

  explicit operator bool() const { return generates; }
};

/// Throws DependentSpan unless the 2 or 3 spanning vectors are independent.
GenerationResult generates(const StructureConstants& alg, std::span<const Vector4> p);

/// Adapted basis (e1, e2, e3 = [e1,e2], e4 = [e1,e3]) of a generating plane with
/// [e2,e3] free of e4 and, when it has an e1 component, free of e2 as well.
struct CanonicalBasis {
  Vector4 e1, e2, e3, e4;
  Vector4 c23;  // coordinates of [e2,e3] in (e1..e4)
  Vector4 c14;  // coordinates of [e1,e4]
  Vector4 c24;  // coordinates of [e2,e4]
  /// Columns are e1, e2 in the coordinates of the spanners the caller passed in.
  Eigen::Matrix2d in_spanners = Eigen::Matrix2d::Identity();
  bool swapped = false;  // the spanners were used in reverse order
  bool shifted = false;  // e1 was replaced by e1 + (C2/C1) e2

  /// Columns e1..e4.
  Matrix4 frame() const;
};

enum class SeedChoice {
  GivenOrder,    // try (f1, f2) first, then (f2, f1)
  ReverseOrder,  // try (f2, f1) first, then (f1, f2)
};

/// Throws DependentSpan, NotGenerating, or CanonicalizationFailed when neither order of
/// the spanners gives a rank-4 frame.
CanonicalBasis canonical_basis(const StructureConstants& alg, std::span<const Vector4> p,
                               SeedChoice seed = SeedChoice::GivenOrder);

/// Max violation of C24^1 = C24^2 = 0, C24^3 = C23^2, C24^4 = C23^3.
double check_prop2(const CanonicalBasis& b);

/// Orthonormal bases (columns) of {X : [X,p] in p} and {X : [X,p] = 0}.
Eigen::MatrixXd normalizer(const StructureConstants& alg, std::span<const Vector4> p);
Eigen::MatrixXd centralizer(const StructureConstants& alg, std::span<const Vector4> p);

enum class SL2Tag { TypeI, TypeIIa, TypeIIb, TypeIIc, Degenerate };

std::string to_string(SL2Tag tag);

/// Typing of a plane in g3 + R (g3 simple, spanned by E1..E3, E4 central).
struct SL2SubspaceType {
  SL2Tag tag = SL2Tag::Degenerate;
  bool leaves_g3 = false;        // p is not contained in g3
  bool projection_is_plane = false;
  bool q_nondegenerate = false;  // typing form restricted to the projection
  int q_positive = 0;            // signature of the typing form on the projection
  int q_negative = 0;
  double q_on_s = 0.0;           // typing form on the unit vector spanning p ∩ g3
  std::string detail;
};

/// Typing form on span(E1,E2,E3): +k/2 when k has signature (2,1), -k/2 when k is
/// negative definite, so that E1 and E2 are unit spacelike in both cases.
/// Throws WrongFamily unless alg splits as simple g3 (E1..E3) plus central E4.
Eigen::Matrix3d typing_form(const StructureConstants& alg);

SL2SubspaceType classify_sl2(const StructureConstants& alg, std::span<const Vector4> p);

}  // namespace abnorm
