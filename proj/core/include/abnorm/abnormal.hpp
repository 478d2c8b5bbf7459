#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

#include "abnorm/adjoint_ode.hpp"
#include "abnorm/catalog.hpp"
#include "abnorm/lie_core.hpp"
#include "abnorm/seminorm.hpp"
#include "abnorm/subspace.hpp"

namespace abnorm {

/// g(t) = exp(t * velocity) with velocity = s e2 / F(s e2).
struct ExtremalDescriptor {
  int s = 1;
  double u2 = 1.0;                // s / F(s e2)
  Vector2 velocity_canonical;     // (0, u2) in the (e1, e2) frame
  Vector4 velocity;               // catalog frame
  std::string label;
};

/// Descriptors for s = +1 and s = -1. The body is given in the canonical (e1, e2) frame.
/// Throws NotGenerating when p does not generate.
std::array<ExtremalDescriptor, 2> abnormal_extremals(const StructureConstants& alg, std::span<const Vector4> p,
                                                     const SeminormBody& canonical_body);
std::array<ExtremalDescriptor, 2> abnormal_extremals(const CanonicalBasis& basis, const SeminormBody& canonical_body);

enum class Verdict { NonStrict, Strict };
enum class Reason { C1C2Zero, AxisConditionHolds, AxisConditionFails, C1ZeroC2Nonzero };
enum class Combined { NonStrict, Strict, Mixed };

std::string to_string(Verdict v);
std::string to_string(Reason r);
std::string to_string(Combined c);

/// Normal covector along an abnormal extremal:
/// psi1 = k, psi2 = 1/u2, psi3 = 0, psi4 = phi4 exp(c3 u2 t).
struct Witness {
  double k = 0.0;
  double psi2 = 1.0;
  double phi4 = 1.0;
  double c3 = 0.0;
  double u2 = 1.0;

  Vector4 psi(double t) const;
  Vector4 psi_dot(double t) const;
};

struct DirectionVerdict {
  int s = 1;
  double u2 = 1.0;
  Verdict verdict = Verdict::Strict;
  Reason reason = Reason::AxisConditionFails;
  std::optional<Witness> witness;
  double pmp_max = 0.0;        // 1 for the normal witness, 0 for the abnormal certificate
  double support_axis = 0.0;   // F_U(0, s)
  double inverse_gauge = 0.0;  // 1 / F(0, s)
};

struct StrictnessReport {
  CanonicalBasis basis;
  std::array<DirectionVerdict, 2> directions;  // s = +1, s = -1

  Combined combined() const;
};

/// Coefficients with |c| <= 1e-9 * max(1, |c23|) count as zero.
bool c23_is_zero(const Vector4& c23, int index);

StrictnessReport classify(const CanonicalBasis& basis, const SeminormBody& canonical_body);
StrictnessReport classify(const StructureConstants& alg, std::span<const Vector4> p,
                          const SeminormBody& canonical_body);

enum class Dim3Verdict { NonStrictForAllMetrics, StrictForAllMetrics, MetricDependent };

std::string to_string(Dim3Verdict v);

struct Dim3Report {
  bool exists = false;
  Eigen::MatrixXd p1;  // columns span p ∩ N(p)
  std::optional<Dim3Verdict> verdict;
  std::optional<Vector4> direction;  // unit spanning vector of p1
  /// With a metric: whether its abnormal extremal is non-strict for that metric.
  std::optional<bool> metric_nonstrict;
  std::string detail;
};

/// metric_gram is the Gram matrix of an inner product in the coordinates of the three spanners.
/// Throws NotGenerating, and std::logic_error when dim p1 > 1.
Dim3Report classify_dim3(const StructureConstants& alg, std::span<const Vector4> p,
                         const std::optional<Eigen::Matrix3d>& metric_gram = std::nullopt);

struct Theorem3Summary {
  std::string case_label;          // "1.1" ... "1.4", "2", "3", or "none"
  /// Per-s verdict (s = +1, s = -1) implied by the case list; none when it is silent.
  std::array<std::optional<Verdict>, 2> implied;
  StrictnessReport computed;
  bool consistent = true;
  bool tension = false;  // sl(2) types IIa/IIb where the case list and classify() disagree
  std::optional<SL2Tag> sl2_type;
  std::string note;
};

Theorem3Summary theorem3_dispatch(const Catalog& catalog, const AlgebraId& id, std::span<const Vector4> p,
                                  const SeminormBody& canonical_body);

}  // namespace abnorm
