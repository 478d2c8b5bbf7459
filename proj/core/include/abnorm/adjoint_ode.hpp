#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abnorm/lie_core.hpp"
#include "abnorm/seminorm.hpp"
#include "abnorm/subspace.hpp"

namespace abnorm {

/// Covector coordinates (psi1..psi4) against the canonical frame (e1..e4) at time t.
struct AdjointState {
  Vector4 psi = Vector4::Zero();
  double t = 0.0;
};

/// u1 = 0 along abnormal extremals; u2 = s / F(s e2).
struct ControlSpec {
  int s = 1;
  double u2 = 1.0;
};

/// psi' = M psi for the constant-control adjoint system:
///   psi1' = -u2 psi3,  psi2' = 0,  psi3' = u2 sum_k c23[k] psi_k,  psi4' = u2 (c2 psi3 + c3 psi4).
Matrix4 adjoint_system(const Vector4& c23, double u2);

struct Trajectory {
  std::vector<double> t;
  std::vector<Vector4> rk4;    // classical fixed-step Runge-Kutta
  std::vector<Vector4> exact;  // exp(M t) psi0
  double max_abs_deviation = 0.0;
  /// max over samples of |rk4 - exact|_inf / max(1, |exact|_inf)
  double max_rel_deviation = 0.0;
};

/// Integrates on [psi0.t, psi0.t + T] with step T / ceil(T / dt). Throws InvalidParameters
/// unless T > 0 and dt > 0.
Trajectory integrate(const Vector4& c23, double u2, const AdjointState& psi0, double T, double dt);

Vector4 exact_solution(const Vector4& c23, double u2, const Vector4& psi0, double t);

enum class Psi1Case { B_pos, B_zero, B_neg, C1_zero };

std::string to_string(Psi1Case c);

/// General solution of psi1'' - u2 c3 psi1' + u2^2 c1 psi1 = -u2^2 c2 psi2 (requires c23[3] = 0).
///
///   B > 0:   A1 e^{l1 t} + A2 e^{l2 t} + p,      l1,2 = u2 (c3 +- sqrt B) / 2
///   B = 0:   (A1 t + A2) e^{l t} + p,             l = u2 c3 / 2
///   B < 0:   e^{mu t} (A1 cos wt + A2 sin wt) + p, mu = u2 c3 / 2, w = u2 sqrt(-B) / 2
///   c1 = 0:  A1 e^{u2 c3 t} + (u2 c2 psi2 / c3) t + A2      when c3 != 0
///            -u2^2 c2 psi2 t^2 / 2 + A1 t + A2               when c3 = 0
/// with B = c3^2 - 4 c1 and p = -c2 psi2 / c1.
struct ClosedFormPsi1 {
  Psi1Case kind = Psi1Case::C1_zero;
  double B = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double omega = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double u2 = 1.0;
  double psi2 = 1.0;
  double particular = 0.0;  // p when c1 != 0

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  /// Left side minus right side of the second-order equation.
  double residual(double t) const;
  /// Zero-mode only (constants and pure oscillations).
  bool bounded() const;
};

/// psi2 defaults to 1/u2. Coefficients with |x| <= 1e-12 * max(1, |c|) count as zero.
ClosedFormPsi1 closed_form_psi1(const Vector4& c23, double u2, double A1, double A2,
                                std::optional<double> psi2 = std::nullopt);

/// Chooses A1, A2 so that psi1(0) = psi0[0] and psi1'(0) = -u2 psi0[2]; psi2 = psi0[1].
ClosedFormPsi1 fit_closed_form(const Vector4& c23, double u2, const Vector4& psi0);

enum class WitnessFamily { ArbitraryConstant, FixedConstant, Oscillation };

std::string to_string(WitnessFamily f);

/// psi1(t) = k + A1 cos(omega t) + A2 sin(omega t), psi2 = 1/u2, psi4(0) = phi4.
struct OracleWitness {
  WitnessFamily family = WitnessFamily::FixedConstant;
  double k = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double omega = 0.0;
  double phi4 = 1.0;
  double horizon = 0.0;
  int grid_points = 0;
  double max_violation = 0.0;  // max over the grid of |F_U(psi1, psi2) - 1|
};

struct OracleResult {
  int s = 1;
  double u2 = 1.0;
  double k_low = 0.0;  // K = {k : F_U(k, 1/u2) = 1} = [k_low, k_high]
  double k_high = 0.0;
  std::optional<OracleWitness> constant;
  std::optional<OracleWitness> oscillation;
  std::vector<std::string> notes;

  bool found() const { return constant.has_value() || oscillation.has_value(); }
  const OracleWitness* witness() const {
    return constant ? &*constant : (oscillation ? &*oscillation : nullptr);
  }
};

inline constexpr int kOracleGridPoints = 2000;
inline constexpr double kOracleTolerance = 1e-7;

/// Looks for a bounded covector with psi2 = 1/u2 and F_U(psi1(t), psi2) = 1 on a grid over
/// [0, max(T, one period)]. Uses only the support function of b, the constants of basis,
/// and the root structure of the psi1 equation. tol bounds |F_U - 1| on the grid.
OracleResult witness_search(const CanonicalBasis& basis, const SeminormBody& b, int s, double T = 5.0,
                            double tol = kOracleTolerance);

}  // namespace abnorm
