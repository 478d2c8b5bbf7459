#include "abnorm/adjoint_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "abnorm/errors.hpp"

namespace abnorm {

Matrix4 adjoint_system(const Vector4& c23, double u2) {
  Matrix4 m = Matrix4::Zero();
  m(0, 2) = -u2;
  m.row(2) = u2 * c23.transpose();
  m(3, 2) = u2 * c23[1];
  m(3, 3) = u2 * c23[2];
  return m;
}

Vector4 exact_solution(const Vector4& c23, double u2, const Vector4& psi0, double t) {
  const Matrix4 mt = adjoint_system(c23, u2) * t;
  return mt.exp() * psi0;
}

Trajectory integrate(const Vector4& c23, double u2, const AdjointState& psi0, double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw InvalidParameters("integration needs T > 0 and dt > 0");
  const Matrix4 m = adjoint_system(c23, u2);
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  const double h = T / static_cast<double>(steps);

  Trajectory out;
  out.t.reserve(steps + 1);
  out.rk4.reserve(steps + 1);
  out.exact.reserve(steps + 1);
  Vector4 y = psi0.psi;
  for (std::size_t n = 0; n <= steps; ++n) {
    const double elapsed = h * static_cast<double>(n);
    if (n > 0) {
      const Vector4 k1 = m * y;
      const Vector4 k2 = m * (y + 0.5 * h * k1);
      const Vector4 k3 = m * (y + 0.5 * h * k2);
      const Vector4 k4 = m * (y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const Vector4 exact = (m * elapsed).exp() * psi0.psi;
    const double dev = (y - exact).cwiseAbs().maxCoeff();
    out.max_abs_deviation = std::max(out.max_abs_deviation, dev);
    out.max_rel_deviation = std::max(out.max_rel_deviation, dev / std::max(1.0, exact.cwiseAbs().maxCoeff()));
    out.t.push_back(psi0.t + elapsed);
    out.rk4.push_back(y);
    out.exact.push_back(exact);
  }
  return out;
}

std::string to_string(Psi1Case c) {
  switch (c) {
    case Psi1Case::B_pos:
      return "B_pos";
    case Psi1Case::B_zero:
      return "B_zero";
    case Psi1Case::B_neg:
      return "B_neg";
    case Psi1Case::C1_zero:
      return "C1_zero";
  }
  return "C1_zero";
}

namespace {

double zero_tol(const Vector4& c23) { return 1e-9 * std::max(1.0, c23.head<3>().cwiseAbs().maxCoeff()); }

bool negligible(double x) { return std::abs(x) <= 1e-12; }

}  // namespace

ClosedFormPsi1 closed_form_psi1(const Vector4& c23, double u2, double A1, double A2, std::optional<double> psi2) {
  if (u2 == 0.0 || !std::isfinite(u2)) throw InvalidParameters("u2 must be finite and nonzero");
  ClosedFormPsi1 f;
  f.c1 = c23[0];
  f.c2 = c23[1];
  f.c3 = c23[2];
  f.u2 = u2;
  f.psi2 = psi2.value_or(1.0 / u2);
  f.A1 = A1;
  f.A2 = A2;
  const double tol = zero_tol(c23);
  if (std::abs(f.c3) <= tol) f.c3 = 0.0;
  f.B = f.c3 * f.c3 - 4.0 * f.c1;

  if (std::abs(f.c1) <= tol) {
    f.c1 = 0.0;
    f.kind = Psi1Case::C1_zero;
    f.lambda1 = u2 * f.c3;
    return f;
  }
  f.particular = -f.c2 * f.psi2 / f.c1;
  const double btol = 1e-9 * std::max({1.0, f.c3 * f.c3, 4.0 * std::abs(f.c1)});
  if (f.B > btol) {
    f.kind = Psi1Case::B_pos;
    const double r = std::sqrt(f.B);
    f.lambda1 = u2 * (f.c3 + r) / 2.0;
    f.lambda2 = u2 * (f.c3 - r) / 2.0;
  } else if (f.B < -btol) {
    f.kind = Psi1Case::B_neg;
    f.lambda1 = f.lambda2 = u2 * f.c3 / 2.0;
    f.omega = std::abs(u2) * std::sqrt(-f.B) / 2.0;
  } else {
    f.kind = Psi1Case::B_zero;
    f.B = 0.0;
    f.lambda1 = f.lambda2 = u2 * f.c3 / 2.0;
  }
  return f;
}

double ClosedFormPsi1::value(double t) const {
  switch (kind) {
    case Psi1Case::B_pos:
      return A1 * std::exp(lambda1 * t) + A2 * std::exp(lambda2 * t) + particular;
    case Psi1Case::B_zero:
      return (A1 * t + A2) * std::exp(lambda1 * t) + particular;
    case Psi1Case::B_neg:
      return std::exp(lambda1 * t) * (A1 * std::cos(omega * t) + A2 * std::sin(omega * t)) + particular;
    case Psi1Case::C1_zero:
      if (c3 != 0.0) return A1 * std::exp(lambda1 * t) + (u2 * c2 * psi2 / c3) * t + A2;
      return -0.5 * u2 * u2 * c2 * psi2 * t * t + A1 * t + A2;
  }
  return 0.0;
}

double ClosedFormPsi1::derivative(double t) const {
  switch (kind) {
    case Psi1Case::B_pos:
      return A1 * lambda1 * std::exp(lambda1 * t) + A2 * lambda2 * std::exp(lambda2 * t);
    case Psi1Case::B_zero:
      return (A1 + lambda1 * (A1 * t + A2)) * std::exp(lambda1 * t);
    case Psi1Case::B_neg: {
      const double g = A1 * std::cos(omega * t) + A2 * std::sin(omega * t);
      const double dg = omega * (-A1 * std::sin(omega * t) + A2 * std::cos(omega * t));
      return std::exp(lambda1 * t) * (lambda1 * g + dg);
    }
    case Psi1Case::C1_zero:
      if (c3 != 0.0) return A1 * lambda1 * std::exp(lambda1 * t) + u2 * c2 * psi2 / c3;
      return -u2 * u2 * c2 * psi2 * t + A1;
  }
  return 0.0;
}

double ClosedFormPsi1::second_derivative(double t) const {
  switch (kind) {
    case Psi1Case::B_pos:
      return A1 * lambda1 * lambda1 * std::exp(lambda1 * t) + A2 * lambda2 * lambda2 * std::exp(lambda2 * t);
    case Psi1Case::B_zero:
      return (2.0 * A1 * lambda1 + lambda1 * lambda1 * (A1 * t + A2)) * std::exp(lambda1 * t);
    case Psi1Case::B_neg: {
      const double g = A1 * std::cos(omega * t) + A2 * std::sin(omega * t);
      const double dg = omega * (-A1 * std::sin(omega * t) + A2 * std::cos(omega * t));
      return std::exp(lambda1 * t) * ((lambda1 * lambda1 - omega * omega) * g + 2.0 * lambda1 * dg);
    }
    case Psi1Case::C1_zero:
      if (c3 != 0.0) return A1 * lambda1 * lambda1 * std::exp(lambda1 * t);
      return -u2 * u2 * c2 * psi2;
  }
  return 0.0;
}

double ClosedFormPsi1::residual(double t) const {
  return second_derivative(t) - u2 * c3 * derivative(t) + u2 * u2 * c1 * value(t) + u2 * u2 * c2 * psi2;
}

bool ClosedFormPsi1::bounded() const {
  const bool no_modes = negligible(A1) && negligible(A2);
  switch (kind) {
    case Psi1Case::B_pos:
    case Psi1Case::B_zero:
      return no_modes;
    case Psi1Case::B_neg:
      return lambda1 == 0.0 || no_modes;
    case Psi1Case::C1_zero:
      return negligible(A1) && negligible(c2 * psi2);
  }
  return false;
}

ClosedFormPsi1 fit_closed_form(const Vector4& c23, double u2, const Vector4& psi0) {
  ClosedFormPsi1 f = closed_form_psi1(c23, u2, 0.0, 0.0, psi0[1]);
  const double y0 = psi0[0];
  const double d0 = -u2 * psi0[2];
  switch (f.kind) {
    case Psi1Case::B_pos:
      f.A1 = (d0 - f.lambda2 * (y0 - f.particular)) / (f.lambda1 - f.lambda2);
      f.A2 = y0 - f.particular - f.A1;
      break;
    case Psi1Case::B_zero:
      f.A2 = y0 - f.particular;
      f.A1 = d0 - f.lambda1 * f.A2;
      break;
    case Psi1Case::B_neg:
      f.A1 = y0 - f.particular;
      f.A2 = (d0 - f.lambda1 * f.A1) / f.omega;
      break;
    case Psi1Case::C1_zero:
      if (f.c3 != 0.0) {
        f.A1 = (d0 - u2 * f.c2 * f.psi2 / f.c3) / f.lambda1;
        f.A2 = y0 - f.A1;
      } else {
        f.A1 = d0;
        f.A2 = y0;
      }
      break;
  }
  return f;
}

std::string to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::ArbitraryConstant:
      return "arbitrary_constant";
    case WitnessFamily::FixedConstant:
      return "fixed_constant";
    case WitnessFamily::Oscillation:
      return "oscillation";
  }
  return "fixed_constant";
}

namespace {

struct SupportSlice {
  const SeminormBody& body;
  double psi2;
  double operator()(double k) const { return body.support(Vector2(k, psi2)); }
};

double golden_minimum(const SupportSlice& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Boundary of {f <= level} between inside (f <= level) and outside (f > level).
double bisect_level(const SupportSlice& f, double inside, double outside, double level) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    (f(mid) <= level ? inside : outside) = mid;
  }
  return inside;
}

OracleWitness check_on_grid(const SupportSlice& f, WitnessFamily family, double k, double A1, double omega,
                            double horizon) {
  OracleWitness w;
  w.family = family;
  w.k = k;
  w.A1 = A1;
  w.omega = omega;
  w.horizon = horizon;
  w.grid_points = kOracleGridPoints;
  for (int i = 0; i < kOracleGridPoints; ++i) {
    const double t = horizon * i / (kOracleGridPoints - 1);
    const double psi1 = k + A1 * std::cos(omega * t);
    w.max_violation = std::max(w.max_violation, std::abs(f(psi1) - 1.0));
  }
  return w;
}

}  // namespace

OracleResult witness_search(const CanonicalBasis& basis, const SeminormBody& b, int s, double T, double tol) {
  if (!(tol > 0.0)) throw InvalidParameters("oracle tolerance must be positive");
  OracleResult out;
  out.s = s >= 0 ? 1 : -1;
  const double gauge_axis = b.gauge(Vector2(0.0, out.s));
  out.u2 = out.s / gauge_axis;
  const double psi2 = 1.0 / out.u2;
  const SupportSlice f{b, psi2};

  // K is an interval containing the first coordinate of any covector supporting U at (0, u2).
  double reach = 1.0;
  while ((f(reach) <= 1.0 + 1e-9 || f(-reach) <= 1.0 + 1e-9) && reach < 1e12) reach *= 2.0;
  const double k_min = golden_minimum(f, -reach, reach);
  const double f_min = f(k_min);
  const double level = f_min + 1e-12 * std::max(1.0, std::abs(f_min));
  out.k_low = bisect_level(f, k_min, -reach, level);
  out.k_high = bisect_level(f, k_min, reach, level);
  if (std::abs(f_min - 1.0) > tol) {
    out.notes.push_back("min of F_U(k, 1/u2) is not 1; the body does not contain (0, u2) on its boundary");
    return out;
  }
  const double width = out.k_high - out.k_low;
  const bool segment = width > 1e-4 * std::max(1.0, std::abs(k_min));

  const Vector4& c = basis.c23;
  const double ztol = zero_tol(c);
  const double c1 = c[0], c2 = c[1], c3 = c[2];
  if (std::abs(c[3]) > ztol) out.notes.push_back("C23^4 is not zero; the constants are not canonical");

  if (std::abs(c1) <= ztol) {
    if (std::abs(c2) > ztol) {
      out.notes.push_back(std::abs(c3) > ztol ? "particular solution grows linearly in t"
                                             : "particular solution grows quadratically in t");
      return out;
    }
    out.notes.push_back("psi1 may be any constant; nonconstant modes grow");
    const double k = segment ? 0.5 * (out.k_low + out.k_high) : k_min;
    const OracleWitness w = check_on_grid(f, WitnessFamily::ArbitraryConstant, k, 0.0, 0.0, T);
    if (w.max_violation <= tol) out.constant = w;
    return out;
  }

  const double p_star = -c2 * psi2 / c1;
  const double B = c3 * c3 - 4.0 * c1;
  const bool oscillatory = B < 0.0 && std::abs(c3) <= ztol;
  double horizon = T;
  double omega = 0.0;
  if (oscillatory) {
    omega = std::abs(out.u2) * std::sqrt(-B) / 2.0;
    horizon = std::max(T, 2.0 * std::numbers::pi * std::max(1.0, 1.0 / std::abs(out.u2 * std::sqrt(-B))));
  }

  const OracleWitness constant = check_on_grid(f, WitnessFamily::FixedConstant, p_star, 0.0, 0.0, horizon);
  if (constant.max_violation <= tol) {
    out.constant = constant;
  } else {
    out.notes.push_back("the only constant solution leaves the level set F_U = 1");
  }

  if (!oscillatory) {
    out.notes.push_back("homogeneous modes have nonzero real part");
    return out;
  }
  if (!segment) {
    out.notes.push_back("level set F_U = 1 is a single point; no oscillation fits");
    return out;
  }
  const double room = std::min(p_star - out.k_low, out.k_high - p_star);
  if (!(room > 0.0)) {
    out.notes.push_back("constant solution is not interior to the level set; no oscillation fits");
    return out;
  }
  const OracleWitness osc = check_on_grid(f, WitnessFamily::Oscillation, p_star, 0.5 * room, omega, horizon);
  if (osc.max_violation <= tol) out.oscillation = osc;
  return out;
}

}  // namespace abnorm
