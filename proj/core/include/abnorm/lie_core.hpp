#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string>

#include <Eigen/Core>

namespace abnorm {

inline constexpr int kDim = 4;

/// Absolute tolerance for comparisons against catalog-sized quantities.
inline constexpr double kTolerance = 1e-9;

/// Coordinates in the basis (E1..E4), or in (e1..e4) when the caller says so.
using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

/// Basis vector E_{i+1}; indices are zero-based throughout the C++ API.
Vector4 basis_vector(int i);

/// One nonzero commutator [E_i, E_j] = value (zero-based i, j).
struct BracketEntry {
  int i;
  int j;
  Vector4 value;
};

/// Bracket table c(i,j,k) of a four-dimensional real algebra: [E_i,E_j] = sum_k c(i,j,k) E_k.
///
/// Antisymmetry in (i,j) is enforced at construction. Whether the table satisfies the Jacobi
/// identity is a separate question answered by jacobi_defect().
class StructureConstants {
 public:
  /// The abelian algebra.
  StructureConstants() = default;

  StructureConstants(std::span<const BracketEntry> brackets, std::string label = {});
  StructureConstants(std::initializer_list<BracketEntry> brackets, std::string label = {});

  /// Builds from a raw tensor laid out as t[(i*4 + j)*4 + k]; throws InvalidParameters unless
  /// the tensor is antisymmetric in (i,j) to within kTolerance.
  static StructureConstants from_tensor(const std::array<double, 64>& t, std::string label = {});

  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }
  Vector4 basis_bracket(int i, int j) const;

  const std::string& label() const { return label_; }
  const std::array<double, 64>& tensor() const { return c_; }

 private:
  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>((i * kDim + j) * kDim + k);
  }
  void set(int i, int j, const Vector4& v);

  std::array<double, 64> c_{};
  std::string label_;
};

/// Parameter tuple of the tabulated automorphism families (a1..a7 and sigma = +-1).
struct AutomorphismParams {
  std::array<double, 7> a{};
  int sigma = 1;
};

/// A linear map of the algebra acting on basis coordinates; column j is the image of E_j.
struct AutomorphismMatrix {
  Matrix4 m = Matrix4::Identity();
  std::string family;
  AutomorphismParams params;
};

Vector4 bracket(const StructureConstants& alg, const Vector4& x, const Vector4& y);

/// Max-abs-entry norm of the Jacobiator over basis triples i<j<k.
double jacobi_defect(const StructureConstants& alg);

/// Matrix of ad x = [x, .]; column j is [x, E_j].
Matrix4 ad_matrix(const StructureConstants& alg, const Vector4& x);

/// K(i,j) = tr(ad E_i ad E_j).
Matrix4 killing_matrix(const StructureConstants& alg);

/// max_{i<j} |m[E_i,E_j] - [mE_i, mE_j]|_inf. Throws NotInvertible for singular m.
double automorphism_defect(const StructureConstants& alg, const Matrix4& m);
double automorphism_defect(const StructureConstants& alg, const AutomorphismMatrix& m);

/// Image of the bracket table under the change of basis m (columns are the new basis vectors
/// in old coordinates): the constants of the same algebra written in the new basis.
StructureConstants change_basis(const StructureConstants& alg, const Matrix4& m);

/// Renders a vector as "E1 - 2*E3" (or with the given basis symbol).
std::string format_vector(const Vector4& v, const std::string& symbol = "E");

}  // namespace abnorm
