#include "arcipm/arc_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace arcipm {

namespace {

constexpr int kBisectionIterations = 60;
constexpr Real kBacktrackFactor = 0.9;
constexpr int kMaxBacktracks = 50;
// Entries of the sigma = 1 point within this many ulps of the terms that
// produced them are rounding noise and read as zero.
constexpr int kSnapUlps = 64;

void snap_to_zero(Vector& v, const Vector& base, const Vector& first, const Vector& second) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (Index i = 0; i < v.size(); ++i) {
    const Real scale = abs(base(i)) + abs(first(i)) + abs(second(i));
    if (abs(v(i)) <= kSnapUlps * eps * scale) v(i) = 0;
  }
}

}  // namespace

ArcDerivatives compute_derivatives(const StandardLP& p, const Iterate& z,
                                   const ScalingFactorization& f) {
  const Matrix& a = p.A();
  ArcDerivatives d;

  const KktRhs first{z.rb(), z.rc(), z.x().cwiseProduct(z.s())};
  auto v = solve_kkt(f, a, z.x(), z.s(), first);
  d.first_residual = kkt_residual(a, z.x(), z.s(), first, v);
  d.first_rhs_norm = first.norm();
  d.xdot = std::move(v.dx);
  d.ydot = std::move(v.dy);
  d.sdot = std::move(v.ds);

  const KktRhs second{Vector::Zero(p.rows()), Vector::Zero(p.cols()),
                      -2 * d.xdot.cwiseProduct(d.sdot)};
  auto w = solve_kkt(f, a, z.x(), z.s(), second);
  d.second_residual = kkt_residual(a, z.x(), z.s(), second, w);
  d.second_rhs_norm = second.norm();
  d.xddot = std::move(w.dx);
  d.yddot = std::move(w.dy);
  d.sddot = std::move(w.ds);
  return d;
}

Real one_minus_cos_from_sin(Real sigma) {
  const Real cosine = sqrt(std::max(Real{0}, (1 - sigma) * (1 + sigma)));
  return sigma * sigma / (1 + cosine);
}

ArcPoint ellipse_point_sin(const Iterate& z, const ArcDerivatives& d, Real sigma) {
  const Real omc = one_minus_cos_from_sin(sigma);
  return {z.x() - sigma * d.xdot + omc * d.xddot, z.y() - sigma * d.ydot + omc * d.yddot,
          z.s() - sigma * d.sdot + omc * d.sddot};
}

ArcPoint ellipse_point(const Iterate& z, const ArcDerivatives& d, Real alpha) {
  const Real sine = sin(alpha);
  const Real omc = 1 - cos(alpha);
  return {z.x() - sine * d.xdot + omc * d.xddot, z.y() - sine * d.ydot + omc * d.yddot,
          z.s() - sine * d.sdot + omc * d.sddot};
}

Real QuarticCondition::operator()(Real sigma) const {
  return ((a4 * sigma + a3) * sigma * sigma + a1) * sigma + a0;
}

QuarticCondition build_quartic(const ArcDerivatives& d, Real theta, Real mu) {
  QuarticCondition q;
  q.a4 = d.xddot.cwiseProduct(d.sddot).norm() + d.xdot.cwiseProduct(d.sdot).norm();
  q.a3 = d.xdot.cwiseProduct(d.sddot).norm() + d.xddot.cwiseProduct(d.sdot).norm();
  q.a1 = theta * mu;
  q.a0 = -theta * mu;
  return q;
}

Real max_step(const QuarticCondition& q) {
  if (q(1) <= 0) return 1;
  Real lo = 0;  // q(lo) < 0
  Real hi = 1;  // q(hi) > 0
  // Run to the resolution of Real (well under 1e-12) so that q(lo) is also
  // small relative to theta * mu when the quartic is steep.
  for (int it = 0; it < kBisectionIterations; ++it) {
    const Real mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (q(mid) <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool satisfies_arc_condition(const ArcPoint& trial, Real sigma, Real theta, Real mu) {
  const Real target = (1 - sigma) * mu;
  const Real spread = (trial.x.cwiseProduct(trial.s).array() - target).matrix().norm();
  return spread <= 2 * theta * target;
}

AdmissibleStep admissible_step(const StandardLP& /*p*/, const Iterate& z,
                               const ArcDerivatives& d, Real theta, Real sigma0) {
  AdmissibleStep step;

  // The end of the arc may already be an exact solution even when rounding
  // in the quartic coefficients keeps sigma0 just below 1.
  ArcPoint end = ellipse_point_sin(z, d, 1);
  snap_to_zero(end.x, z.x(), d.xdot, d.xddot);
  snap_to_zero(end.s, z.s(), d.sdot, d.sddot);
  if ((end.x.array() >= 0).all() && (end.s.array() >= 0).all() &&
      (end.x.cwiseProduct(end.s).array() == 0).all()) {
    step.sin_alpha = 1;
    step.alpha = asin(Real{1});
    step.trial = std::move(end);
    step.exact = true;
    return step;
  }

  Real sigma = sigma0;
  for (int backtracks = 0; backtracks <= kMaxBacktracks; ++backtracks) {
    ArcPoint trial = ellipse_point_sin(z, d, sigma);
    const bool positive = (trial.x.array() > 0).all() && (trial.s.array() > 0).all();
    if (positive && satisfies_arc_condition(trial, sigma, theta, z.mu())) {
      step.sin_alpha = sigma;
      step.alpha = asin(sigma);
      step.trial = std::move(trial);
      step.backtracks = backtracks;
      return step;
    }
    sigma *= kBacktrackFactor;
  }
  throw StalledArcSearch(fmt::format(
      "stalled arc search: no admissible step after {} backtracks from sin(alpha)={} (mu={})",
      kMaxBacktracks, static_cast<double>(sigma0), static_cast<double>(z.mu())));
}

Real observed_step_floor(const ArcDerivatives& d, Real theta, Real mu, Index n) {
  const Real nn = static_cast<Real>(n);
  const Real c1 = d.xdot.cwiseProduct(d.sdot).norm() / (nn * nn * mu);
  const Real c2 = d.xddot.cwiseProduct(d.sddot).norm() / (nn * nn * nn * nn * mu);
  const Real c4 = std::max(d.xddot.cwiseProduct(d.sdot).norm(),
                           d.xdot.cwiseProduct(d.sddot).norm()) /
                  (nn * nn * nn * mu);
  const Real c = std::max({Real{1}, cbrt(c4), pow(c1 + c2, Real{0.25})});
  return theta / (2 * c * nn);
}

}  // namespace arcipm
