#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "arcipm/arc_search.hpp"
#include "arcipm/iteration_record.hpp"
#include "arcipm/linear_solver.hpp"
#include "arcipm/lp_model.hpp"

namespace arcipm {

/// Largest neighborhood radius for which the corrector provably restores
/// membership: 1 / (2 + sqrt 2).
inline const Real kMaxTheta = 1 / (2 + sqrt(Real{2}));

enum class LogLevel { kSilent, kSummary, kIterations };

struct SolverOptions {
  Real theta = kMaxTheta;
  Real epsilon = 1e-8;
  int max_iterations = 500;
  /// Starting point scale zeta; nullopt selects max(1, ||b||_inf, ||c||_inf).
  std::optional<Real> init_scale;
  /// Scale the three stopping tolerances by 1 + ||b||, 1 + ||c||, 1 + |c'x|.
  bool relative_tolerance = false;
  /// Keep every iterate and trial point in the result.
  bool keep_snapshots = false;
  LogLevel log_level = LogLevel::kSilent;

  /// Throws std::invalid_argument when a field is outside its range.
  void validate() const;
};

enum class SolveStatus { kOptimal, kIterationLimit, kStalled, kSingularSystem };

std::string to_string(SolveStatus status);

/// Predictor point kept for post-hoc checks of the arc condition.
struct TrialSnapshot {
  int iter = 0;  // index of the iterate this step produced
  Real sin_alpha = 0;
  Real mu_before = 0;
  ArcPoint point;
  bool exact = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  Iterate iterate;
  /// c'x of the final standard-form iterate.
  Real objective = 0;
  std::vector<IterationRecord> records;
  std::string note;

  /// Filled only with SolverOptions::keep_snapshots.
  std::vector<Iterate> iterates;
  std::vector<TrialSnapshot> trials;

  int iterations() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
};

/// x = s = zeta e, y = 0. The point is perfectly centered, so it lies in
/// every neighborhood.
Iterate initial_point(const StandardLP& p, const SolverOptions& opts);

Real resolve_init_scale(const StandardLP& p, const SolverOptions& opts);

/// Stopping test: mu, ||rb||, ||rc|| below epsilon and (x, s) > 0. With
/// `exact_step` the positivity requirement relaxes to (x, s) >= 0.
bool check_termination(const StandardLP& p, const Iterate& z, const SolverOptions& opts,
                       bool exact_step = false);

struct CorrectorResult {
  KktSolution step;
  KktResidual residual;
  Real rhs_norm = 0;
};

/// Centering step at the trial point toward (1 - sin alpha) mu_k e, with A dx
/// = 0 and A'dy + ds = 0.
CorrectorResult corrector(const StandardLP& p, const ArcPoint& trial, Real sin_alpha, Real mu_k,
                          const ScalingFactorization& f_alpha);

/// A block solve whose residual exceeded the hard gate.
class ResidualGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepOutcome {
  Iterate next;
  IterationRecord record;
  TrialSnapshot trial;
  bool exact = false;
};

/// One predictor-corrector pass from `z`, producing iterate `k`. Throws
/// FactorizationError, StalledArcSearch or ResidualGateError.
StepOutcome iterate_once(const StandardLP& p, const Iterate& z, const SolverOptions& opts, int k);

/// Runs the method to termination. Numerical failures are reported through
/// the status, never thrown.
SolveResult solve(const StandardLP& p, const SolverOptions& opts = {});

/// Record describing `z` with no step attached (used for the start point).
IterationRecord describe_iterate(const Iterate& z, int k);

}  // namespace arcipm
