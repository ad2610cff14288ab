#pragma once

#include <stdexcept>
#include <string>

#include "arcipm/linear_solver.hpp"
#include "arcipm/lp_model.hpp"

namespace arcipm {

/// First and second derivatives of the central-path curve at the current
/// iterate; they define the ellipse the predictor moves along.
struct ArcDerivatives {
  Vector xdot, ydot, sdot;
  Vector xddot, yddot, sddot;
  KktResidual first_residual;
  KktResidual second_residual;
  Real first_rhs_norm = 0;
  Real second_rhs_norm = 0;
};

/// Two solves with one factorization:
///   first order   rhs (rb, rc, x o s)
///   second order  rhs (0, 0, -2 xdot o sdot)
ArcDerivatives compute_derivatives(const StandardLP& p, const Iterate& z,
                                   const ScalingFactorization& f);

struct ArcPoint {
  Vector x, y, s;
};

/// Point on the ellipse at angle `alpha`:
///   v(alpha) = v - vdot sin(alpha) + vddot (1 - cos(alpha)).
ArcPoint ellipse_point(const Iterate& z, const ArcDerivatives& d, Real alpha);

/// Same point parameterized by sigma = sin(alpha), alpha in [0, pi/2].
ArcPoint ellipse_point_sin(const Iterate& z, const ArcDerivatives& d, Real sigma);

/// 1 - cos(asin(sigma)) without cancellation.
Real one_minus_cos_from_sin(Real sigma);

/// q(sigma) = a4 sigma^4 + a3 sigma^3 + a1 sigma + a0, a sufficient condition
/// for the arc to stay within twice the neighborhood radius: q(sigma) <= 0
/// implies ||x o s - (1 - sigma) mu e|| <= 2 theta (1 - sigma) mu.
struct QuarticCondition {
  Real a4 = 0;
  Real a3 = 0;
  Real a1 = 0;
  Real a0 = 0;

  Real operator()(Real sigma) const;
};

QuarticCondition build_quartic(const ArcDerivatives& d, Real theta, Real mu);

/// Largest sigma in (0, 1] with q <= 0 on [0, sigma]. Sixty halvings of
/// [0, 1] on the increasing quartic (far below 1e-12 absolute); returns 1 if
/// q(1) <= 0.
Real max_step(const QuarticCondition& q);

class StalledArcSearch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdmissibleStep {
  Real sin_alpha = 0;
  Real alpha = 0;
  ArcPoint trial;
  int backtracks = 0;
  /// sigma = 1 and the trial point is an exact complementary solution
  /// (x o s == 0 with x, s >= 0, after entries at rounding level are read
  /// as zero); the corrector is skipped.
  bool exact = false;
};

/// Arc condition at sigma, checked directly on the trial point.
bool satisfies_arc_condition(const ArcPoint& trial, Real sigma, Real theta, Real mu);

/// Takes the full step when the end of the arc is an exact solution.
/// Otherwise starts at sigma0 and multiplies sigma by 0.9 until the trial
/// point is strictly positive and satisfies the arc condition. Throws
/// StalledArcSearch after 50 failed backtracks.
AdmissibleStep admissible_step(const StandardLP& p, const Iterate& z, const ArcDerivatives& d,
                               Real theta, Real sigma0);

/// Lower bound theta / (2 C n) on the step, with C assembled from the
/// constants the current derivative products actually attain. max_step never
/// returns less than this.
Real observed_step_floor(const ArcDerivatives& d, Real theta, Real mu, Index n);

}  // namespace arcipm
