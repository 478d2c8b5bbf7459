#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "abnorm/adjoint_ode.hpp"
#include "abnorm/errors.hpp"
#include "oracles.hpp"

using namespace abnorm;

namespace {

// psi1' = -u2 psi3, psi2' = 0, psi3' = u2 <c23, psi>, psi4' = u2 (c2 psi3 + c3 psi4).
Matrix4 hand_system(const Vector4& c, double u2) {
  Matrix4 m = Matrix4::Zero();
  m(0, 2) = -u2;
  m.row(2) = u2 * c.transpose();
  m(3, 2) = u2 * c[1];
  m(3, 3) = u2 * c[2];
  return m;
}

CanonicalBasis with_constants(const Vector4& c23) {
  CanonicalBasis b;
  b.e1 = Vector4(1, 0, 0, 0);
  b.e2 = Vector4(0, 1, 0, 0);
  b.e3 = Vector4(0, 0, 1, 0);
  b.e4 = Vector4(0, 0, 0, 1);
  b.c23 = c23;
  return b;
}

}  // namespace

TEST(AdjointOde, SystemMatrix) {
  const Vector4 c(0.3, -1.2, 0.7, 0.0);
  EXPECT_EQ(adjoint_system(c, 1.7), hand_system(c, 1.7));
  EXPECT_TRUE(adjoint_system(c, 1.7).row(1).isZero(0.0));
}

TEST(AdjointOde, Rk4AgainstTaylorExponential) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 20; ++n) {
    const Vector4 c(u(rng), u(rng), u(rng), 0.0);
    const double u2 = u(rng);
    const Vector4 psi0(u(rng), u(rng), u(rng), u(rng));
    const Trajectory tr = integrate(c, u2, {psi0, 0.0}, 2.0, 1e-3);
    ASSERT_EQ(tr.t.size(), 2001u);
    EXPECT_DOUBLE_EQ(tr.t.back(), 2.0);
    for (std::size_t i = 0; i < tr.t.size(); i += 250) {
      const Vector4 want = oracle::expm(hand_system(c, u2) * tr.t[i]) * psi0;
      const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
      EXPECT_LE((tr.rk4[i] - want).cwiseAbs().maxCoeff() / scale, 1e-9);
      EXPECT_LE((tr.exact[i] - want).cwiseAbs().maxCoeff() / scale, 1e-11);
      EXPECT_EQ(tr.rk4[i][1], psi0[1]);
    }
  }
}

TEST(AdjointOde, Psi4Exponential) {
  const Vector4 c(0, 0, -1.3, 0);
  const double u2 = 0.8;
  const Trajectory tr = integrate(c, u2, {Vector4(0.4, 1.0 / u2, 0.0, 2.0), 0.0}, 5.0, 1e-3);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    EXPECT_NEAR(tr.rk4[i][3], 2.0 * std::exp(-1.3 * u2 * tr.t[i]), 1e-10);
    EXPECT_DOUBLE_EQ(tr.rk4[i][0], 0.4);
  }
}

TEST(AdjointOde, InvalidHorizon) {
  EXPECT_THROW(integrate(Vector4::Zero(), 1.0, {}, 0.0, 1e-3), InvalidParameters);
  EXPECT_THROW(integrate(Vector4::Zero(), 1.0, {}, 1.0, -1.0), InvalidParameters);
}

TEST(AdjointOde, ClosedFormCases) {
  struct Case {
    Vector4 c;
    Psi1Case kind;
  };
  const std::vector<Case> cases = {
      {{-1.0, 0.5, 0.3, 0}, Psi1Case::B_pos},  {{1.0, 0.5, 2.0, 0}, Psi1Case::B_zero},
      {{1.0, 0.5, 0.3, 0}, Psi1Case::B_neg},   {{0.0, 0.5, 0.3, 0}, Psi1Case::C1_zero},
      {{0.0, 0.5, 0.0, 0}, Psi1Case::C1_zero}, {{0.0, 0.0, 0.0, 0}, Psi1Case::C1_zero},
  };
  for (const Case& cs : cases) {
    const double u2 = -0.7;
    const Vector4 psi0(0.3, 1.0 / u2, -0.4, 1.0);
    const ClosedFormPsi1 cf = fit_closed_form(cs.c, u2, psi0);
    EXPECT_EQ(cf.kind, cs.kind);
    EXPECT_NEAR(cf.value(0.0), psi0[0], 1e-12);
    EXPECT_NEAR(cf.derivative(0.0), -u2 * psi0[2], 1e-12);
    for (double t : {0.0, 0.7, 2.5}) {
      EXPECT_LE(std::abs(cf.residual(t)), 1e-9);
      const double reference = oracle::psi1_midpoint(cs.c[0], cs.c[1], cs.c[2], u2, psi0[1], psi0[0], -u2 * psi0[2], t,
                                                     200000);
      EXPECT_NEAR(cf.value(t), reference, 1e-6);
    }
  }
}

TEST(AdjointOde, Boundedness) {
  EXPECT_TRUE(closed_form_psi1({1, 0, 0, 0}, 1.0, 0.3, 0.2).bounded());
  EXPECT_FALSE(closed_form_psi1({1, 0, 0.2, 0}, 1.0, 0.3, 0.2).bounded());
  EXPECT_TRUE(closed_form_psi1({1, 0, 0.2, 0}, 1.0, 0.0, 0.0).bounded());
  EXPECT_FALSE(closed_form_psi1({0, 1, 0, 0}, 1.0, 0.0, 0.0).bounded());
  EXPECT_TRUE(closed_form_psi1({0, 0, 0, 0}, 1.0, 0.0, 0.5).bounded());
}

TEST(Oracle, EngelAnyBody) {
  const CanonicalBasis b = with_constants(Vector4::Zero());
  for (const SeminormBody& body : {SeminormBody::disk({0.5, 0}, 1), SeminormBody::disk({0, 0}, 1),
                                   SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}})}) {
    for (int s : {1, -1}) {
      const OracleResult r = witness_search(b, body, s);
      ASSERT_TRUE(r.constant.has_value());
      EXPECT_EQ(r.constant->family, WitnessFamily::ArbitraryConstant);
      EXPECT_NEAR(body.support(Vector2(r.constant->k, 1.0 / r.u2)), 1.0, 1e-9);
    }
  }
}

TEST(Oracle, G47Disks) {
  const CanonicalBasis b = with_constants({1, 0, -2, 0});
  for (int s : {1, -1}) {
    EXPECT_FALSE(witness_search(b, SeminormBody::disk({0.5, 0}, 1), s).found());
    const OracleResult r = witness_search(b, SeminormBody::disk({0, 0}, 1), s);
    ASSERT_TRUE(r.found());
    EXPECT_NEAR(r.witness()->k, 0.0, 1e-12);
  }
}

TEST(Oracle, OscillationOnQuadrilateral) {
  // F_U(k, 1) = max(k, 1, -2k) equals 1 exactly on [-1/2, 1].
  const SeminormBody quad = SeminormBody::polygon({{1, 0}, {0, 1}, {-2, 0}, {0, -1}});
  const OracleResult r = witness_search(with_constants({1, 0, 0, 0}), quad, 1);
  EXPECT_NEAR(r.k_low, -0.5, 1e-9);
  EXPECT_NEAR(r.k_high, 1.0, 1e-9);
  ASSERT_TRUE(r.oscillation.has_value());
  EXPECT_NEAR(r.oscillation->A1, 0.25, 1e-9);
  EXPECT_NEAR(r.oscillation->omega, 1.0, 1e-12);
  EXPECT_GE(r.oscillation->horizon, 2.0 * std::numbers::pi);
  EXPECT_GE(r.oscillation->grid_points, 1000);
}

TEST(Oracle, StrictCases) {
  // C1 = 0, C2 != 0: the particular solution grows.
  EXPECT_FALSE(witness_search(with_constants({0, 1, 0.5, 0}), SeminormBody::disk({0, 0}, 1), 1).found());
  // Axis condition fails for the shifted disk; the only constant is psi1 = 0.
  EXPECT_FALSE(witness_search(with_constants({1, 0, 0, 0}), SeminormBody::disk({0.5, 0}, 1), 1).found());
  EXPECT_THROW(witness_search(with_constants({1, 0, 0, 0}), SeminormBody::disk({0, 0}, 1), 1, 5.0, 0.0),
               InvalidParameters);
}
