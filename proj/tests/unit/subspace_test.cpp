#include <random>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "abnorm/catalog.hpp"
#include "abnorm/errors.hpp"
#include "abnorm/subspace.hpp"
#include "oracles.hpp"

using namespace abnorm;
using oracle::e;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

StructureConstants alg(const std::string& f, std::vector<double> p = {}) { return cat().instantiate({f, p}); }

// Independent reconstruction: brackets from the instantiated table via basis coordinates,
// constants by a QR solve against the frame.
void expect_canonical(const StructureConstants& a, const std::vector<Vector4>& p, const CanonicalBasis& b,
                      const std::string& what) {
  oracle::Table t;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) t[{i + 1, j + 1}] = a.basis_bracket(i, j);
  }
  EXPECT_LE((b.e3 - oracle::bracket(t, b.e1, b.e2)).norm(), 1e-12) << what;
  EXPECT_LE((b.e4 - oracle::bracket(t, b.e1, b.e3)).norm(), 1e-12) << what;
  Eigen::Matrix4d frame;
  frame << b.e1, b.e2, b.e3, b.e4;
  const Vector4 c23 = frame.colPivHouseholderQr().solve(oracle::bracket(t, b.e2, b.e3));
  EXPECT_LE((c23 - b.c23).norm(), 1e-9) << what;
  EXPECT_LE(std::abs(c23[3]), 1e-9) << what;
  if (std::abs(c23[0]) > 1e-9) EXPECT_LE(std::abs(c23[1]), 1e-9) << what;
  Eigen::Matrix<double, 4, 2> span;
  span << p[0], p[1];
  for (const Vector4& v : {b.e1, b.e2}) {
    const Eigen::Vector2d x = span.colPivHouseholderQr().solve(v);
    EXPECT_LE((span * x - v).norm(), 1e-10) << what;
  }
  EXPECT_LE((span * b.in_spanners.col(0) - b.e1).norm(), 1e-12) << what;
  EXPECT_LE((span * b.in_spanners.col(1) - b.e2).norm(), 1e-12) << what;
}

}  // namespace

TEST(Subspace, GenerationFlag) {
  const StructureConstants eng = alg("g4.1");
  const std::vector<Vector4> good = {e(4), e(3)};
  const GenerationResult r = generates(eng, good);
  EXPECT_TRUE(r.generates);
  EXPECT_EQ(r.dims, (std::vector<int>{2, 3, 4}));
  const std::vector<Vector4> abelian = {e(1), e(2)};
  EXPECT_FALSE(generates(eng, abelian).generates);
  const std::vector<Vector4> dependent = {e(1), 2.0 * e(1)};
  EXPECT_THROW(generates(eng, dependent), DependentSpan);
}

TEST(Subspace, G47HandComputedConstants) {
  // e1 = E3, e2 = E4, e3 = E2 + E3, e4 = -E1, [e2,e3] = -2E2 - E3 = e1 - 2e3.
  const std::vector<Vector4> p = {e(3), e(4)};
  const CanonicalBasis b = canonical_basis(alg("g4.7"), p);
  EXPECT_LE((b.c23 - Vector4(1, 0, -2, 0)).norm(), 1e-12);
  EXPECT_LE((b.e4 + e(1)).norm(), 1e-12);
  EXPECT_FALSE(b.shifted);
}

TEST(Subspace, LiuSussmannShift) {
  const std::vector<Vector4> p = {e(1) + e(4), e(1) + e(2) + 2.0 * e(4)};
  const CanonicalBasis b = canonical_basis(alg("g3.7+g1"), p);
  EXPECT_TRUE(b.shifted);
  EXPECT_LE((b.e1 - 0.5 * (e(1) - e(2))).norm(), 1e-12);
  EXPECT_LE((b.e2 - p[1]).norm(), 1e-12);
  EXPECT_LE((b.c23 - Vector4(2, 0, 0, 0)).norm(), 1e-12);
  expect_canonical(alg("g3.7+g1"), p, b, "liu-sussmann");
}

TEST(Subspace, EveryExhibitedPlaneCanonicalizes) {
  for (const FamilyInfo& f : cat().families()) {
    std::vector<std::vector<double>> samples = f.samples;
    if (f.params.empty()) samples = {{}};
    for (const auto& s : samples) {
      const AlgebraId id{f.id, s};
      const StructureConstants a = cat().instantiate(id);
      for (const KnownSubspace& k : cat().generating_subspaces(id)) {
        for (SeedChoice seed : {SeedChoice::GivenOrder, SeedChoice::ReverseOrder}) {
          const CanonicalBasis b = canonical_basis(a, k.span, seed);
          expect_canonical(a, k.span, b, id.to_string() + " " + k.tag);
          EXPECT_LE(check_prop2(b), 1e-9) << id.to_string();
        }
      }
    }
  }
}

TEST(Subspace, NonGeneratingPlaneThrows) {
  const std::vector<Vector4> p = {e(1), e(2)};
  EXPECT_THROW(canonical_basis(alg("g4.1"), p), NotGenerating);
}

TEST(Subspace, RandomPlanesCanonicalize) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* f : {"g4.7", "g4.10", "g3.7+g1", "g4.1", "g4.4"}) {
    const StructureConstants a = alg(f);
    int tested = 0;
    while (tested < 50) {
      std::vector<Vector4> p(2);
      for (auto& v : p) v = Vector4(u(rng), u(rng), u(rng), u(rng));
      if (!generates(a, p)) continue;
      const CanonicalBasis b = canonical_basis(a, p);
      expect_canonical(a, p, b, f);
      EXPECT_LE(check_prop2(b), 1e-8) << f;
      ++tested;
    }
  }
}

TEST(Subspace, NormalizerAndCentralizer) {
  const StructureConstants eng = alg("g4.1");
  const std::vector<Vector4> center = {e(1)};
  EXPECT_EQ(centralizer(eng, center).cols(), 4);
  const std::vector<Vector4> x4 = {e(4)};
  const Eigen::MatrixXd c = centralizer(eng, x4);
  EXPECT_EQ(c.cols(), 2);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    EXPECT_LE(std::abs(c(1, j)) + std::abs(c(2, j)), 1e-12);
  }
  // span(E1, E3, E4): [E4, E3] = -E2 leaves it, so only X in span(E1, E2) with no E3/E4 part normalizes.
  const std::vector<Vector4> p = {e(1), e(3), e(4)};
  const Eigen::MatrixXd n = normalizer(eng, p);
  for (Eigen::Index j = 0; j < n.cols(); ++j) {
    const Vector4 x = n.col(j);
    for (const Vector4& y : p) {
      const Vector4 b = bracket(eng, x, y);
      EXPECT_LE(std::abs(b[1]), 1e-12);
    }
  }
}

TEST(Subspace, TypingFormMatchesKillingForm) {
  for (const char* f : {"g3.6+g1", "g3.7+g1"}) {
    const StructureConstants a = alg(f);
    oracle::Table t;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) t[{i + 1, j + 1}] = a.basis_bracket(i, j);
    }
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Eigen::Matrix4d ai, aj;
        for (int c = 0; c < 4; ++c) {
          ai.col(c) = oracle::bracket(t, e(i + 1), e(c + 1));
          aj.col(c) = oracle::bracket(t, e(j + 1), e(c + 1));
        }
        k(i, j) = (ai * aj).trace();
      }
    }
    const Eigen::Matrix3d q = typing_form(a);
    const double sign = std::string(f) == "g3.6+g1" ? 0.5 : -0.5;
    EXPECT_LE((q - sign * k).cwiseAbs().maxCoeff(), 1e-12) << f;
    EXPECT_DOUBLE_EQ(q(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(q(1, 1), 1.0);
  }
  EXPECT_THROW(typing_form(alg("g4.1")), WrongFamily);
}

TEST(Subspace, Sl2Types) {
  const StructureConstants a = alg("g3.6+g1");
  for (const KnownSubspace& k : cat().generating_subspaces({"g3.6+g1", {}})) {
    EXPECT_EQ(to_string(classify_sl2(a, k.span).tag), k.tag);
  }
  // span(E1 + E4, E2 + E3) is a subalgebra: [E1+E4, E2+E3] = -E3 - E2.
  const std::vector<Vector4> sub = {e(1) + e(4), e(2) + e(3)};
  EXPECT_FALSE(generates(a, sub).generates);
  EXPECT_EQ(classify_sl2(a, sub).tag, SL2Tag::Degenerate);
}

TEST(Subspace, IIaAndIIbSigns) {
  const StructureConstants a = alg("g3.6+g1");
  const std::vector<Vector4> iia = {e(1), e(3) + e(4)};
  const std::vector<Vector4> iib = {e(3), e(1) + e(4)};
  EXPECT_NEAR(canonical_basis(a, iia).c23[0], 1.0, 1e-12);
  EXPECT_NEAR(canonical_basis(a, iib).c23[0], -1.0, 1e-12);
}
