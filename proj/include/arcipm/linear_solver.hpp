#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "arcipm/types.hpp"

namespace arcipm {

/// Cholesky breakdown of the normal matrix; carries the failing pivot.
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, Index pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  Index pivot() const { return pivot_; }

 private:
  Index pivot_;
};

/// Right-hand side of the block system
///
///   [ A  0  0 ] [dx]   [p]
///   [ 0  A' I ] [dy] = [q]
///   [ S  0  X ] [ds]   [r]
struct KktRhs {
  Vector p;
  Vector q;
  Vector r;

  Real norm() const;
};

struct KktSolution {
  Vector dx;
  Vector dy;
  Vector ds;
};

/// Block residual norms of a candidate solution.
struct KktResidual {
  Real primal = 0;        // ||A dx - p||
  Real dual = 0;          // ||A'dy + ds - q||
  Real complementary = 0; // ||S dx + X ds - r||

  Real max() const;
};

KktResidual kkt_residual(const Matrix& a, const Vector& x, const Vector& s, const KktRhs& rhs,
                         const KktSolution& sol);

/// Cholesky factor of M = A D^2 A' with D^2 = diag(x / s).
///
/// A pivot at or below kPivotTolerance times the largest diagonal entry of M
/// is treated as rank deficiency. The tolerance is the double-precision
/// figure 1e-13 carried over to the working precision in units of machine
/// epsilon, so ill-conditioning near a degenerate optimum is not mistaken for
/// a singular matrix.
class ScalingFactorization {
 public:
  static constexpr double kPivotToleranceDouble = 1e-13;
  static inline const Real kPivotTolerance =
      kPivotToleranceDouble * std::numeric_limits<Real>::epsilon() /
      std::numeric_limits<double>::epsilon();

  ScalingFactorization(const Matrix& a, const Vector& x, const Vector& s);

  const Vector& d2() const { return d2_; }
  /// Lower-triangular L with L L' = M.
  const Matrix& lower() const { return l_; }
  const Matrix& normal_matrix() const { return m_; }

  /// Solves M v = rhs.
  Vector solve_normal(const Vector& rhs) const;

 private:
  Vector d2_;
  Matrix m_;
  Matrix l_;
};

inline ScalingFactorization factor(const Matrix& a, const Vector& x, const Vector& s) {
  return ScalingFactorization(a, x, s);
}

/// Block elimination through the normal equations:
///   M dy = p + A D^2 q - A S^-1 r,  dx = D^2 (A'dy - q) + S^-1 r,  ds = q - A'dy.
KktSolution solve_kkt(const ScalingFactorization& f, const Matrix& a, const Vector& x,
                      const Vector& s, const KktRhs& rhs);

/// Assembles the full (2n+m)-square system and solves it with partial-pivot
/// LU. Test oracle for solve_kkt; throws std::runtime_error when singular.
KktSolution oracle_solve_dense(const Matrix& a, const Vector& x, const Vector& s,
                               const KktRhs& rhs);

}  // namespace arcipm

namespace arcipm {

/// Acceptance of a solve by its block residuals relative to 1 + ||rhs||:
/// pass at 1e-8, tolerated with a warning up to 1e-6, rejected beyond.
enum class ResidualGate { kPass, kWarn, kFail };

inline constexpr Real kGatePass = 1e-8;
inline constexpr Real kGateWarn = 1e-6;

inline Real relative_residual(const KktResidual& res, Real rhs_norm) {
  return res.max() / (1 + rhs_norm);
}

inline ResidualGate residual_gate(Real relative) {
  if (relative <= kGatePass) return ResidualGate::kPass;
  if (relative <= kGateWarn) return ResidualGate::kWarn;
  return ResidualGate::kFail;
}

}  // namespace arcipm
