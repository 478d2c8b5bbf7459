#include "abnorm/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "abnorm/errors.hpp"

namespace abnorm {

Vector4 basis_vector(int i) {
  Vector4 v = Vector4::Zero();
  v[i] = 1.0;
  return v;
}

StructureConstants::StructureConstants(std::span<const BracketEntry> brackets, std::string label)
    : label_(std::move(label)) {
  for (const auto& b : brackets) {
    if (b.i < 0 || b.i >= kDim || b.j < 0 || b.j >= kDim) {
      throw InvalidParameters("bracket index out of range");
    }
    if (b.i == b.j) {
      if (!b.value.isZero(0.0)) throw InvalidParameters("[E_i,E_i] must vanish");
      continue;
    }
    set(b.i, b.j, b.value);
  }
}

StructureConstants::StructureConstants(std::initializer_list<BracketEntry> brackets,
                                       std::string label)
    : StructureConstants(std::span<const BracketEntry>(brackets.begin(), brackets.size()),
                         std::move(label)) {}

StructureConstants StructureConstants::from_tensor(const std::array<double, 64>& t,
                                                   std::string label) {
  StructureConstants out;
  out.label_ = std::move(label);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      for (int k = 0; k < kDim; ++k) {
        const double a = t[index(i, j, k)];
        const double b = t[index(j, i, k)];
        if (std::abs(a + b) > kTolerance) throw InvalidParameters("table is not antisymmetric");
        out.c_[index(i, j, k)] = a;
      }
    }
  }
  return out;
}

void StructureConstants::set(int i, int j, const Vector4& v) {
  for (int k = 0; k < kDim; ++k) {
    c_[index(i, j, k)] = v[k];
    c_[index(j, i, k)] = -v[k];
  }
}

Vector4 StructureConstants::basis_bracket(int i, int j) const {
  Vector4 v;
  for (int k = 0; k < kDim; ++k) v[k] = c_[index(i, j, k)];
  return v;
}

Vector4 bracket(const StructureConstants& alg, const Vector4& x, const Vector4& y) {
  Vector4 out = Vector4::Zero();
  for (int i = 0; i < kDim; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < kDim; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (int k = 0; k < kDim; ++k) out[k] += w * alg(i, j, k);
    }
  }
  return out;
}

double jacobi_defect(const StructureConstants& alg) {
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i + 1; j < kDim; ++j) {
      for (int k = j + 1; k < kDim; ++k) {
        const Vector4 ei = basis_vector(i), ej = basis_vector(j), ek = basis_vector(k);
        const Vector4 jac = bracket(alg, ei, bracket(alg, ej, ek)) +
                            bracket(alg, ej, bracket(alg, ek, ei)) +
                            bracket(alg, ek, bracket(alg, ei, ej));
        worst = std::max(worst, jac.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

Matrix4 ad_matrix(const StructureConstants& alg, const Vector4& x) {
  Matrix4 m;
  for (int j = 0; j < kDim; ++j) m.col(j) = bracket(alg, x, basis_vector(j));
  return m;
}

Matrix4 killing_matrix(const StructureConstants& alg) {
  std::array<Matrix4, kDim> ads;
  for (int i = 0; i < kDim; ++i) ads[i] = ad_matrix(alg, basis_vector(i));
  Matrix4 k;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      k(i, j) = k(j, i) = (ads[i] * ads[j]).trace();
    }
  }
  return k;
}

double automorphism_defect(const StructureConstants& alg, const Matrix4& m) {
  const Eigen::FullPivLU<Matrix4> lu(m);
  if (!lu.isInvertible() || std::abs(m.determinant()) < 1e-12) throw NotInvertible();
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i + 1; j < kDim; ++j) {
      const Vector4 lhs = m * alg.basis_bracket(i, j);
      const Vector4 rhs = bracket(alg, m.col(i), m.col(j));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double automorphism_defect(const StructureConstants& alg, const AutomorphismMatrix& m) {
  return automorphism_defect(alg, m.m);
}

StructureConstants change_basis(const StructureConstants& alg, const Matrix4& m) {
  const Eigen::FullPivLU<Matrix4> lu(m);
  if (!lu.isInvertible()) throw NotInvertible();
  std::array<double, 64> t{};
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      const Vector4 coeffs = lu.solve(bracket(alg, m.col(i), m.col(j)));
      for (int k = 0; k < kDim; ++k) t[static_cast<std::size_t>((i * kDim + j) * kDim + k)] = coeffs[k];
    }
  }
  return StructureConstants::from_tensor(t, alg.label());
}

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string format_vector(const Vector4& v, const std::string& symbol) {
  std::string out;
  for (int k = 0; k < kDim; ++k) {
    const double c = v[k];
    if (std::abs(c) < 1e-14) continue;
    const std::string name = symbol + std::to_string(k + 1);
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (std::abs(mag - 1.0) > 1e-14) out += format_number(mag) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace abnorm
