#pragma once

#include <string>

namespace arcipm {

/// Telemetry for one iterate of a solve.
///
/// Record 0 describes the starting point and has sin_alpha = 0. Record k > 0
/// describes iterate k together with the step sin(alpha_k) that produced it,
/// so consecutive records k-1, k obey the rate identities with sin_alpha of
/// record k.
struct IterationRecord {
  int iter = 0;
  double mu = 0;
  double norm_rb = 0;
  double norm_rc = 0;
  double sin_alpha = 0;
  double neigh_dist = 0;
  std::string status = "start";  // start | step | exact

  int backtracks = 0;
  bool factor_ok = true;
  double corrector_dot = 0;        // dx's of the corrector
  double corrector_norm_prod = 0;  // ||dx|| ||ds||
  double step_floor = 0;           // theta / (2 C n) from observed constants
  double kkt_residual = 0;  // worst relative block residual of the three solves

  bool operator==(const IterationRecord&) const = default;
};

}  // namespace arcipm
