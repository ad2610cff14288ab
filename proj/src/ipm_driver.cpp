#include "arcipm/ipm_driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace arcipm {

namespace {

constexpr Real kOrthogonalityRel = 1e-10;
constexpr Real kOrthogonalityAbs = 1e-14;

void log_iteration(const SolverOptions& opts, const IterationRecord& r) {
  if (opts.log_level != LogLevel::kIterations) return;
  fmt::print(stderr, "{:4d}  mu={:.3e}  |rb|={:.3e}  |rc|={:.3e}  sin={:.6f}  dist={:.4f}  bt={}\n",
             r.iter, r.mu, r.norm_rb, r.norm_rc, r.sin_alpha, r.neigh_dist, r.backtracks);
}

void log_warning(const SolverOptions& opts, const std::string& message) {
  if (opts.log_level == LogLevel::kSilent) return;
  fmt::print(stderr, "warning: {}\n", message);
}

Real gate(const SolverOptions& opts, const char* what, int k, const KktResidual& res,
          Real rhs_norm) {
  const Real rel = relative_residual(res, rhs_norm);
  switch (residual_gate(rel)) {
    case ResidualGate::kPass:
      break;
    case ResidualGate::kWarn:
      log_warning(opts, fmt::format("iteration {}: {} solve residual {:.3e} above {:.0e}", k, what,
                                    static_cast<double>(rel), static_cast<double>(kGatePass)));
      break;
    case ResidualGate::kFail:
      throw ResidualGateError(fmt::format(
          "iteration {}: {} solve residual {:.3e} (primal {:.3e}, dual {:.3e}, compl {:.3e})", k,
          what, static_cast<double>(rel), static_cast<double>(res.primal),
          static_cast<double>(res.dual), static_cast<double>(res.complementary)));
  }
  return rel;
}

}  // namespace

void SolverOptions::validate() const {
  if (!(theta > 0 && theta <= kMaxTheta)) {
    throw std::invalid_argument(
        fmt::format("theta must lie in (0, {}], got {}", static_cast<double>(kMaxTheta),
                    static_cast<double>(theta)));
  }
  if (!(epsilon > 0)) {
    throw std::invalid_argument(fmt::format("epsilon must be positive, got {}",
                                            static_cast<double>(epsilon)));
  }
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be nonnegative");
  if (init_scale && !(*init_scale > 0 && isfinite(*init_scale))) {
    throw std::invalid_argument("init_scale must be positive and finite");
  }
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
    case SolveStatus::kStalled:
      return "Stalled";
    case SolveStatus::kSingularSystem:
      return "SingularSystem";
  }
  return "Unknown";
}

Real resolve_init_scale(const StandardLP& p, const SolverOptions& opts) {
  if (opts.init_scale) return *opts.init_scale;
  return std::max({Real{1}, p.b().lpNorm<Eigen::Infinity>(), p.c().lpNorm<Eigen::Infinity>()});
}

Iterate initial_point(const StandardLP& p, const SolverOptions& opts) {
  const Real zeta = resolve_init_scale(p, opts);
  return Iterate(p, Vector::Constant(p.cols(), zeta), Vector::Zero(p.rows()),
                 Vector::Constant(p.cols(), zeta));
}

bool check_termination(const StandardLP& p, const Iterate& z, const SolverOptions& opts,
                       bool exact_step) {
  Real tol_mu = opts.epsilon;
  Real tol_rb = opts.epsilon;
  Real tol_rc = opts.epsilon;
  if (opts.relative_tolerance) {
    tol_mu *= 1 + abs(p.c().dot(z.x()));
    tol_rb *= 1 + p.b().norm();
    tol_rc *= 1 + p.c().norm();
  }
  const bool positive = exact_step ? z.nonnegative() : z.strictly_positive();
  return z.mu() <= tol_mu && z.rb().norm() <= tol_rb && z.rc().norm() <= tol_rc && positive;
}

CorrectorResult corrector(const StandardLP& p, const ArcPoint& trial, Real sin_alpha, Real mu_k,
                          const ScalingFactorization& f_alpha) {
  const KktRhs rhs{
      Vector::Zero(p.rows()), Vector::Zero(p.cols()),
      (Vector::Constant(p.cols(), (1 - sin_alpha) * mu_k) - trial.x.cwiseProduct(trial.s))};
  CorrectorResult out;
  out.step = solve_kkt(f_alpha, p.A(), trial.x, trial.s, rhs);
  out.residual = kkt_residual(p.A(), trial.x, trial.s, rhs, out.step);
  out.rhs_norm = rhs.norm();
  return out;
}

IterationRecord describe_iterate(const Iterate& z, int k) {
  IterationRecord r;
  r.iter = k;
  r.mu = static_cast<double>(z.mu());
  r.norm_rb = static_cast<double>(z.rb().norm());
  r.norm_rc = static_cast<double>(z.rc().norm());
  r.neigh_dist = static_cast<double>(neighborhood_distance(z).value_or(0));
  return r;
}

StepOutcome iterate_once(const StandardLP& p, const Iterate& z, const SolverOptions& opts, int k) {
  const ScalingFactorization f(p.A(), z.x(), z.s());
  const ArcDerivatives d = compute_derivatives(p, z, f);
  Real worst = gate(opts, "first-order", k, d.first_residual, d.first_rhs_norm);
  worst = std::max(worst, gate(opts, "second-order", k, d.second_residual, d.second_rhs_norm));

  const QuarticCondition q = build_quartic(d, opts.theta, z.mu());
  const Real sigma0 = max_step(q);
  const Real floor = observed_step_floor(d, opts.theta, z.mu(), p.cols());
  AdmissibleStep step = admissible_step(p, z, d, opts.theta, sigma0);
  if (step.sin_alpha < floor) {
    log_warning(opts, fmt::format("iteration {}: sin(alpha)={:.3e} below observed floor {:.3e}", k,
                                  static_cast<double>(step.sin_alpha),
                                  static_cast<double>(floor)));
  }

  StepOutcome out;
  out.exact = step.exact;
  out.trial = {k, step.sin_alpha, z.mu(), step.trial, step.exact};

  IterationRecord record;
  if (step.exact) {
    out.next = Iterate(p, step.trial.x, step.trial.y, step.trial.s);
    record = describe_iterate(out.next, k);
    record.status = "exact";
  } else {
    const ScalingFactorization f_alpha(p.A(), step.trial.x, step.trial.s);
    const CorrectorResult c = corrector(p, step.trial, step.sin_alpha, z.mu(), f_alpha);
    worst = std::max(worst, gate(opts, "corrector", k, c.residual, c.rhs_norm));
    out.next = Iterate(p, step.trial.x + c.step.dx, step.trial.y + c.step.dy,
                       step.trial.s + c.step.ds);
    record = describe_iterate(out.next, k);
    record.status = "step";
    record.corrector_dot = static_cast<double>(c.step.dx.dot(c.step.ds));
    record.corrector_norm_prod = static_cast<double>(c.step.dx.norm() * c.step.ds.norm());
    if (std::abs(record.corrector_dot) >
        kOrthogonalityRel * record.corrector_norm_prod + kOrthogonalityAbs) {
      log_warning(opts, fmt::format("iteration {}: corrector not orthogonal, dx's={:.3e}", k,
                                    record.corrector_dot));
    }
  }
  record.sin_alpha = static_cast<double>(step.sin_alpha);
  record.backtracks = step.backtracks;
  record.step_floor = static_cast<double>(floor);
  record.kkt_residual = static_cast<double>(worst);
  out.record = record;
  return out;
}

SolveResult solve(const StandardLP& p, const SolverOptions& opts) {
  opts.validate();
  SolveResult result;
  Iterate z = initial_point(p, opts);
  result.records.push_back(describe_iterate(z, 0));
  if (opts.keep_snapshots) result.iterates.push_back(z);
  log_iteration(opts, result.records.back());

  auto finish = [&](SolveStatus status, std::string note = {}) {
    result.status = status;
    result.objective = p.c().dot(z.x());
    result.note = std::move(note);
    result.iterate = std::move(z);
    if (opts.log_level != LogLevel::kSilent) {
      fmt::print(stderr, "{} after {} iterations{}{}\n", to_string(status), result.iterations(),
                 result.note.empty() ? "" : ": ", result.note);
    }
    return std::move(result);
  };

  for (int k = 1;; ++k) {
    if (check_termination(p, z, opts)) return finish(SolveStatus::kOptimal);
    if (k > opts.max_iterations) {
      std::string note = fmt::format("mu={:.3e}, ||rb||={:.3e}, ||rc||={:.3e}",
                                     static_cast<double>(z.mu()),
                                     static_cast<double>(z.rb().norm()),
                                     static_cast<double>(z.rc().norm()));
      if (result.records.size() > 1 && result.records.back().sin_alpha < 1e-3) {
        note += "; steps have collapsed while residuals persist (possibly infeasible or unbounded)";
      }
      return finish(SolveStatus::kIterationLimit, std::move(note));
    }

    StepOutcome step;
    try {
      step = iterate_once(p, z, opts, k);
    } catch (const FactorizationError& e) {
      return finish(SolveStatus::kSingularSystem, e.what());
    } catch (const ResidualGateError& e) {
      return finish(SolveStatus::kSingularSystem, e.what());
    } catch (const StalledArcSearch& e) {
      return finish(SolveStatus::kStalled, e.what());
    }

    z = std::move(step.next);
    result.records.push_back(step.record);
    log_iteration(opts, step.record);
    if (opts.keep_snapshots) {
      result.iterates.push_back(z);
      result.trials.push_back(std::move(step.trial));
    }
    if (step.exact) {
      if (check_termination(p, z, opts, /*exact_step=*/true)) {
        return finish(SolveStatus::kOptimal);
      }
      return finish(SolveStatus::kStalled,
                    "full arc step reached the boundary without meeting the tolerances");
    }
  }
}

}  // namespace arcipm
