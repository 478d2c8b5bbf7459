#include "abnorm/linalg.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace abnorm {

namespace {

int rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0) return 0;
  const double top = sv[0];
  if (top <= 1e-300) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > rel_tol * top) ++r;
  }
  return r;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return Eigen::MatrixXd(a.rows(), 0);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd intersect(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_tol) {
  const Eigen::MatrixXd qa = column_space(a, rel_tol);
  const Eigen::MatrixXd qb = column_space(b, rel_tol);
  if (qa.cols() == 0 || qb.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  // x = qa*s = qb*t  <=>  [qa, -qb] (s; t) = 0
  Eigen::MatrixXd stacked(qa.rows(), qa.cols() + qb.cols());
  stacked << qa, -qb;
  const Eigen::MatrixXd kernel = null_space(stacked, rel_tol);
  if (kernel.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  return column_space(qa * kernel.topRows(qa.cols()), rel_tol);
}

bool in_span(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& x, double rel_tol) {
  const Eigen::MatrixXd q = column_space(basis, rel_tol);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Eigen::VectorXd v = x.col(j);
    const double scale = std::max(1.0, v.norm());
    const Eigen::VectorXd residual = q.cols() > 0 ? Eigen::VectorXd(v - q * (q.transpose() * v)) : v;
    if (residual.norm() > 1e3 * rel_tol * scale) return false;
  }
  return true;
}

}  // namespace abnorm
