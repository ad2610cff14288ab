#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arcipm/ipm_driver.hpp"

namespace arcipm {

/// Outcome of one invariant suite: pass flag, worst observed value, and one
/// message per violation.
struct CheckReport {
  bool pass = true;
  double worst = 0;
  int checked = 0;
  std::vector<std::string> failures;

  void fail(std::string message) {
    pass = false;
    failures.push_back(std::move(message));
  }
};

inline constexpr double kRateTolerance = 1e-8;
inline constexpr double kRateDenominatorFloor = 1e-13;

/// Consecutive records must shrink mu, ||rb|| and ||rc|| by exactly
/// (1 - sin alpha). `worst` is the largest relative deviation; residual
/// ratios are skipped when the earlier norm is at most 1e-13.
CheckReport check_rate_identities(const std::vector<IterationRecord>& records,
                                  double tolerance = kRateTolerance);

/// Every stored iterate lies in N(theta) and is strictly positive (the exact
/// final step may touch the boundary); every trial point satisfies the arc
/// condition with radius 2 theta and x_i s_i >= (1 - 2 theta)(1 - sin) mu.
/// `worst` is the largest neighborhood distance seen.
CheckReport check_neighborhood(const StandardLP& p, const std::vector<Iterate>& iterates,
                               const std::vector<TrialSnapshot>& trials, Real theta);

/// Same membership test on the neigh_dist column of a log.
CheckReport check_logged_neighborhood(const std::vector<IterationRecord>& records, double theta);

/// |dx's| <= 1e-10 ||dx|| ||ds|| + 1e-14 for every corrector step.
CheckReport check_corrector_orthogonality(const std::vector<IterationRecord>& records);

/// L = max(ln(x0's0/eps), ln(||rb0||/eps), ln(||rc0||/eps)) from record 0.
double input_length(const IterationRecord& start, Index n, double epsilon);

struct ScalingRow {
  Index n = 0;
  Index m = 0;
  std::uint64_t seed = 0;
  double L = 0;
  int iterations = 0;
  double iters_over_nL = 0;
  double mean_sin_alpha = 0;
  double min_sin_alpha = 0;
  int iteration_cap = 0;
  SolveStatus status = SolveStatus::kIterationLimit;
  /// Final max(mu, ||rb||, ||rc||) recomputed from the returned iterate.
  double final_kkt_error = 0;
};

struct ScalingReport {
  double epsilon = 0;
  std::vector<ScalingRow> rows;  // sorted by (n, m, seed)

  /// Columns n,m,L,iterations,iters_over_nL,mean_sin_alpha,min_sin_alpha,status.
  std::string to_csv() const;
  std::string to_table() const;
  /// Mean iters/(n L) per distinct n, in increasing n.
  std::vector<std::pair<Index, double>> mean_ratio_by_n() const;
};

struct ScalingOptions {
  std::vector<std::pair<Index, Index>> sizes;  // (m, n)
  int seeds_per_size = 3;
  std::uint64_t base_seed = 1;
  double epsilon = 1e-8;
  Real theta = kMaxTheta;
};

/// Seed of replicate r of size i: base_seed + 1000 i + r. Each solve is capped
/// at ceil(50 n L) iterations.
ScalingReport scaling_experiment(const ScalingOptions& opts);

}  // namespace arcipm
