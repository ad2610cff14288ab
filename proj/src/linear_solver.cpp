#include "arcipm/linear_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace arcipm {

Real KktRhs::norm() const {
  return sqrt(p.squaredNorm() + q.squaredNorm() + r.squaredNorm());
}

Real KktResidual::max() const { return std::max({primal, dual, complementary}); }

KktResidual kkt_residual(const Matrix& a, const Vector& x, const Vector& s, const KktRhs& rhs,
                         const KktSolution& sol) {
  KktResidual res;
  res.primal = (a * sol.dx - rhs.p).norm();
  res.dual = (a.transpose() * sol.dy + sol.ds - rhs.q).norm();
  res.complementary =
      (s.cwiseProduct(sol.dx) + x.cwiseProduct(sol.ds) - rhs.r).norm();
  return res;
}

ScalingFactorization::ScalingFactorization(const Matrix& a, const Vector& x, const Vector& s) {
  if (x.size() != a.cols() || s.size() != a.cols()) {
    throw std::invalid_argument("factor: x and s must have one entry per column of A");
  }
  if ((x.array() <= 0).any() || (s.array() <= 0).any()) {
    throw std::invalid_argument("factor: x and s must be strictly positive");
  }
  d2_ = x.cwiseQuotient(s);
  // Lower triangle only, as a sum of scaled column outer products.
  const Index m = a.rows();
  m_ = Matrix::Zero(m, m);
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index j = 0; j < m; ++j) {
      const Real w = d2_(k) * a(j, k);
      if (w == 0) continue;
      for (Index i = j; i < m; ++i) m_(i, j) += w * a(i, k);
    }
  }
  m_.triangularView<Eigen::StrictlyUpper>() = m_.transpose();

  const Real threshold = kPivotTolerance * m_.diagonal().maxCoeff();
  l_ = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    Real pivot = m_(j, j) - l_.row(j).head(j).squaredNorm();
    if (!(pivot > threshold)) {
      throw FactorizationError(
          fmt::format("rank-deficient or numerically singular normal matrix (pivot {} = {})",
                      j, static_cast<double>(pivot)),
          j);
    }
    const Real ljj = sqrt(pivot);
    l_(j, j) = ljj;
    for (Index i = j + 1; i < m; ++i) {
      l_(i, j) = (m_(i, j) - l_.row(i).head(j).dot(l_.row(j).head(j))) / ljj;
    }
  }
}

Vector ScalingFactorization::solve_normal(const Vector& rhs) const {
  Vector v = l_.triangularView<Eigen::Lower>().solve(rhs);
  l_.transpose().triangularView<Eigen::Upper>().solveInPlace(v);
  return v;
}

KktSolution solve_kkt(const ScalingFactorization& f, const Matrix& a, const Vector& /*x*/,
                      const Vector& s, const KktRhs& rhs) {
  const Vector r_over_s = rhs.r.cwiseQuotient(s);
  const Vector normal_rhs = rhs.p + a * f.d2().cwiseProduct(rhs.q) - a * r_over_s;
  KktSolution sol;
  sol.dy = f.solve_normal(normal_rhs);
  const Vector aty = a.transpose() * sol.dy;
  sol.dx = f.d2().cwiseProduct(aty - rhs.q) + r_over_s;
  sol.ds = rhs.q - aty;
  return sol;
}

KktSolution oracle_solve_dense(const Matrix& a, const Vector& x, const Vector& s,
                               const KktRhs& rhs) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index dim = 2 * n + m;
  Matrix k = Matrix::Zero(dim, dim);
  k.block(0, 0, m, n) = a;
  k.block(m, n, n, m) = a.transpose();
  k.block(m, n + m, n, n) = Matrix::Identity(n, n);
  k.block(m + n, 0, n, n) = s.asDiagonal();
  k.block(m + n, n + m, n, n) = x.asDiagonal();

  Vector rhs_full(dim);
  rhs_full << rhs.p, rhs.q, rhs.r;

  Eigen::PartialPivLU<Matrix> lu(k);
  const Real det_scale = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(det_scale > 0)) throw std::runtime_error("oracle_solve_dense: singular KKT matrix");
  const Vector sol = lu.solve(rhs_full);
  return {sol.head(n), sol.segment(n, m), sol.tail(n)};
}

}  // namespace arcipm
