#include "abnorm/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "abnorm/errors.hpp"
#include "abnorm/linalg.hpp"

namespace abnorm {

namespace {

Eigen::MatrixXd as_columns(std::span<const Vector4> p) {
  Eigen::MatrixXd m(kDim, static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = p[j];
  return m;
}

void require_independent(std::span<const Vector4> p) {
  if (p.empty() || numerical_rank(as_columns(p)) != static_cast<int>(p.size())) throw DependentSpan();
}

}  // namespace

GenerationResult generates(const StructureConstants& alg, std::span<const Vector4> p) {
  if (p.size() < 2 || p.size() > 3) throw InvalidParameters("subspace must be 2- or 3-dimensional");
  require_independent(p);

  GenerationResult out;
  Eigen::MatrixXd v = column_space(as_columns(p));
  out.dims.push_back(static_cast<int>(v.cols()));
  while (v.cols() < kDim) {
    const Eigen::Index n = v.cols();
    Eigen::MatrixXd grown(kDim, n + n * (n - 1) / 2);
    grown.leftCols(n) = v;
    Eigen::Index col = n;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) grown.col(col++) = bracket(alg, v.col(i), v.col(j));
    }
    Eigen::MatrixXd next = column_space(grown);
    if (next.cols() == n) break;
    v = std::move(next);
    out.dims.push_back(static_cast<int>(v.cols()));
  }
  out.generates = v.cols() == kDim;
  return out;
}

Matrix4 CanonicalBasis::frame() const {
  Matrix4 m;
  m << e1, e2, e3, e4;
  return m;
}

namespace {

struct Frame {
  Vector4 e1, e2, e3, e4;
  Eigen::Matrix2d in_spanners;

  void rebuild(const StructureConstants& alg) {
    e3 = bracket(alg, e1, e2);
    e4 = bracket(alg, e1, e3);
  }
  Matrix4 matrix() const {
    Matrix4 m;
    m << e1, e2, e3, e4;
    return m;
  }
};

bool full_rank(const Frame& f) { return numerical_rank(f.matrix()) == kDim; }

Vector4 coords(const Frame& f, const Vector4& x) { return f.matrix().fullPivLu().solve(x); }

std::optional<CanonicalBasis> try_order(const StructureConstants& alg, const Vector4& a, const Vector4& b,
                                        bool swapped) {
  Frame f;
  f.e1 = a;
  f.e2 = b;
  f.in_spanners = swapped ? Eigen::Matrix2d{{0, 1}, {1, 0}} : Eigen::Matrix2d::Identity();
  f.rebuild(alg);
  if (!full_rank(f)) return std::nullopt;

  // Kill the e4 component of [e2,e3]; e3 and e4 do not change.
  Vector4 c = coords(f, bracket(alg, f.e2, f.e3));
  f.e2 -= c[3] * f.e1;
  f.in_spanners.col(1) -= c[3] * f.in_spanners.col(0);
  f.rebuild(alg);
  c = coords(f, bracket(alg, f.e2, f.e3));

  bool shifted = false;
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if (std::abs(c[0]) > kTolerance * scale && std::abs(c[1]) > kTolerance * scale) {
    const double lambda = c[1] / c[0];
    f.e1 += lambda * f.e2;
    f.in_spanners.col(0) += lambda * f.in_spanners.col(1);
    f.rebuild(alg);
    if (!full_rank(f)) return std::nullopt;
    shifted = true;
  }

  CanonicalBasis out;
  out.e1 = f.e1;
  out.e2 = f.e2;
  out.e3 = f.e3;
  out.e4 = f.e4;
  out.c23 = coords(f, bracket(alg, f.e2, f.e3));
  out.c14 = coords(f, bracket(alg, f.e1, f.e4));
  out.c24 = coords(f, bracket(alg, f.e2, f.e4));
  out.in_spanners = f.in_spanners;
  out.swapped = swapped;
  out.shifted = shifted;
  return out;
}

}  // namespace

CanonicalBasis canonical_basis(const StructureConstants& alg, std::span<const Vector4> p, SeedChoice seed) {
  if (p.size() != 2) throw InvalidParameters("canonical basis needs a plane");
  if (!generates(alg, p)) throw NotGenerating();
  const bool reverse_first = seed == SeedChoice::ReverseOrder;
  for (const bool swapped : {reverse_first, !reverse_first}) {
    auto b = swapped ? try_order(alg, p[1], p[0], true) : try_order(alg, p[0], p[1], false);
    if (b) return *b;
  }
  throw CanonicalizationFailed();
}

double check_prop2(const CanonicalBasis& b) {
  return std::max({std::abs(b.c24[0]), std::abs(b.c24[1]), std::abs(b.c24[2] - b.c23[1]),
                   std::abs(b.c24[3] - b.c23[2])});
}

Eigen::MatrixXd normalizer(const StructureConstants& alg, std::span<const Vector4> p) {
  const Eigen::MatrixXd q = column_space(as_columns(p));
  const Eigen::MatrixXd off_p = Eigen::MatrixXd::Identity(kDim, kDim) - q * q.transpose();
  Eigen::MatrixXd system(kDim * static_cast<Eigen::Index>(p.size()), kDim);
  for (std::size_t j = 0; j < p.size(); ++j) {
    system.middleRows(static_cast<Eigen::Index>(j) * kDim, kDim) = off_p * ad_matrix(alg, p[j]);
  }
  return null_space(system);
}

Eigen::MatrixXd centralizer(const StructureConstants& alg, std::span<const Vector4> p) {
  Eigen::MatrixXd system(kDim * static_cast<Eigen::Index>(p.size()), kDim);
  for (std::size_t j = 0; j < p.size(); ++j) {
    system.middleRows(static_cast<Eigen::Index>(j) * kDim, kDim) = ad_matrix(alg, p[j]);
  }
  return null_space(system);
}

std::string to_string(SL2Tag tag) {
  switch (tag) {
    case SL2Tag::TypeI:
      return "TypeI";
    case SL2Tag::TypeIIa:
      return "TypeIIa";
    case SL2Tag::TypeIIb:
      return "TypeIIb";
    case SL2Tag::TypeIIc:
      return "TypeIIc";
    case SL2Tag::Degenerate:
      return "Degenerate";
  }
  return "Degenerate";
}

Eigen::Matrix3d typing_form(const StructureConstants& alg) {
  const Vector4 e4 = basis_vector(3);
  if (!ad_matrix(alg, e4).isZero(kTolerance)) throw WrongFamily("E4 is not central");
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(alg(i, j, 3)) > kTolerance) throw WrongFamily("span(E1,E2,E3) is not a subalgebra");
    }
  }
  const Eigen::Matrix3d k = killing_matrix(alg).topLeftCorner<3, 3>();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(k);
  const Eigen::Vector3d ev = eig.eigenvalues();
  const double tol = kTolerance * std::max(1.0, ev.cwiseAbs().maxCoeff());
  const int pos = static_cast<int>((ev.array() > tol).count());
  const int neg = static_cast<int>((ev.array() < -tol).count());
  if (pos + neg != 3) throw WrongFamily("Killing form is degenerate on span(E1,E2,E3)");
  if (neg == 3) return -0.5 * k;
  if (pos == 2 && neg == 1) return 0.5 * k;
  throw WrongFamily("Killing form signature is neither (0,3) nor (2,1)");
}

SL2SubspaceType classify_sl2(const StructureConstants& alg, std::span<const Vector4> p) {
  if (p.size() != 2) throw InvalidParameters("typing needs a plane");
  require_independent(p);
  const Eigen::Matrix3d q = typing_form(alg);

  SL2SubspaceType out;
  const Eigen::MatrixXd f = column_space(as_columns(p));
  out.leaves_g3 = f.row(3).cwiseAbs().maxCoeff() > kTolerance;
  const Eigen::MatrixXd proj = f.topRows(3);
  out.projection_is_plane = numerical_rank(proj) == 2;
  if (!out.leaves_g3 || !out.projection_is_plane) {
    out.detail = !out.leaves_g3 ? "p lies in g3" : "projection of p onto g3 is a line";
    return out;
  }

  const Eigen::MatrixXd pq = column_space(proj);
  const Eigen::Matrix2d g = pq.transpose() * q * pq;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(g);
  const Eigen::Vector2d ev = eig.eigenvalues();
  out.q_positive = static_cast<int>((ev.array() > kTolerance).count());
  out.q_negative = static_cast<int>((ev.array() < -kTolerance).count());
  out.q_nondegenerate = out.q_positive + out.q_negative == 2;
  if (!out.q_nondegenerate) {
    out.detail = "typing form degenerate on the projection";
    return out;
  }
  if (out.q_positive == 2) {
    out.tag = SL2Tag::TypeI;
    out.detail = "typing form definite on the projection";
    return out;
  }
  if (out.q_negative == 2) {
    out.detail = "typing form negative definite on the projection";
    return out;
  }

  // s = p ∩ g3: combination of the columns of f with vanishing E4 coordinate.
  const Eigen::MatrixXd kernel = null_space(f.row(3));
  const Vector4 s = (f * kernel.col(0)).normalized();
  const Eigen::Vector3d s3 = s.head<3>();
  out.q_on_s = s3.dot(q * s3);
  if (out.q_on_s > kTolerance) {
    out.tag = SL2Tag::TypeIIa;
    out.detail = "indefinite projection, p ∩ g3 spacelike";
  } else if (out.q_on_s < -kTolerance) {
    out.tag = SL2Tag::TypeIIb;
    out.detail = "indefinite projection, p ∩ g3 timelike";
  } else {
    out.tag = SL2Tag::TypeIIc;
    out.detail = "indefinite projection, p ∩ g3 isotropic";
  }
  return out;
}

}  // namespace abnorm
