#include "arcipm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "arcipm/mps_io.hpp"

namespace arcipm {

namespace {

double relative_deviation(double ratio, double expected) {
  if (expected > 0) return std::abs(ratio - expected) / expected;
  return std::abs(ratio);
}

}  // namespace

CheckReport check_rate_identities(const std::vector<IterationRecord>& records, double tolerance) {
  CheckReport report;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& before = records[k - 1];
    const auto& after = records[k];
    const double expected = 1 - after.sin_alpha;
    auto check = [&](const char* what, double prev, double next) {
      const double dev = relative_deviation(next / prev, expected);
      report.worst = std::max(report.worst, dev);
      ++report.checked;
      if (!(dev <= tolerance)) {
        report.fail(fmt::format("iteration {}: {} ratio {} vs 1 - sin(alpha) = {} (deviation {:.3e})",
                                after.iter, what, format_real(next / prev), format_real(expected),
                                dev));
      }
    };
    if (before.mu > 0) check("mu", before.mu, after.mu);
    if (before.norm_rb > kRateDenominatorFloor) check("||rb||", before.norm_rb, after.norm_rb);
    if (before.norm_rc > kRateDenominatorFloor) check("||rc||", before.norm_rc, after.norm_rc);
  }
  return report;
}

CheckReport check_neighborhood(const StandardLP& /*p*/, const std::vector<Iterate>& iterates,
                               const std::vector<TrialSnapshot>& trials, Real theta) {
  CheckReport report;
  const double th = static_cast<double>(theta);
  for (std::size_t k = 0; k < iterates.size(); ++k) {
    const Iterate& z = iterates[k];
    ++report.checked;
    const auto dist = neighborhood_distance(z);
    const bool last = k + 1 == iterates.size();
    if (!dist) {
      if (!(last && z.nonnegative())) report.fail(fmt::format("iterate {}: mu = 0 before the end", k));
      continue;
    }
    const double d = static_cast<double>(*dist);
    report.worst = std::max(report.worst, d);
    if (!(d <= th)) {
      report.fail(fmt::format("iterate {}: neighborhood distance {} exceeds theta {}", k,
                              format_real(d), format_real(th)));
    }
    if (!z.strictly_positive()) report.fail(fmt::format("iterate {}: not strictly positive", k));
  }
  for (const auto& t : trials) {
    ++report.checked;
    if (t.exact) {
      const bool ok = (t.point.x.array() >= 0).all() && (t.point.s.array() >= 0).all() &&
                      (t.point.x.cwiseProduct(t.point.s).array() == 0).all();
      if (!ok) report.fail(fmt::format("step {}: exact step is not complementary", t.iter));
      continue;
    }
    if (!satisfies_arc_condition(t.point, t.sin_alpha, theta, t.mu_before)) {
      report.fail(fmt::format("step {}: arc condition violated at sin(alpha) = {}", t.iter,
                              format_real(static_cast<double>(t.sin_alpha))));
    }
    const Real floor = (1 - 2 * theta) * (1 - t.sin_alpha) * t.mu_before;
    if (t.point.x.cwiseProduct(t.point.s).minCoeff() < floor) {
      report.fail(fmt::format("step {}: some x_i s_i below (1 - 2 theta)(1 - sin) mu", t.iter));
    }
  }
  return report;
}

CheckReport check_logged_neighborhood(const std::vector<IterationRecord>& records, double theta) {
  CheckReport report;
  for (const auto& r : records) {
    ++report.checked;
    report.worst = std::max(report.worst, r.neigh_dist);
    if (!(r.neigh_dist <= theta)) {
      report.fail(fmt::format("iteration {}: neighborhood distance {} exceeds theta {}", r.iter,
                              format_real(r.neigh_dist), format_real(theta)));
    }
  }
  return report;
}

CheckReport check_corrector_orthogonality(const std::vector<IterationRecord>& records) {
  CheckReport report;
  for (const auto& r : records) {
    if (r.status != "step") continue;
    ++report.checked;
    const double bound = 1e-10 * r.corrector_norm_prod + 1e-14;
    report.worst = std::max(report.worst, std::abs(r.corrector_dot));
    if (!(std::abs(r.corrector_dot) <= bound)) {
      report.fail(fmt::format("iteration {}: |dx's| = {:.3e} above {:.3e}", r.iter,
                              std::abs(r.corrector_dot), bound));
    }
  }
  return report;
}

double input_length(const IterationRecord& start, Index n, double epsilon) {
  const double gap = start.mu * static_cast<double>(n);
  double L = std::log(gap / epsilon);
  if (start.norm_rb > 0) L = std::max(L, std::log(start.norm_rb / epsilon));
  if (start.norm_rc > 0) L = std::max(L, std::log(start.norm_rc / epsilon));
  return L;
}

ScalingReport scaling_experiment(const ScalingOptions& opts) {
  ScalingReport report;
  report.epsilon = opts.epsilon;
  for (std::size_t i = 0; i < opts.sizes.size(); ++i) {
    const auto [m, n] = opts.sizes[i];
    for (int r = 0; r < opts.seeds_per_size; ++r) {
      ScalingRow row;
      row.m = m;
      row.n = n;
      row.seed = opts.base_seed + 1000 * i + static_cast<std::uint64_t>(r);
      const GeneratedInstance inst = generate_random_lp(m, n, row.seed);

      SolverOptions so;
      so.theta = opts.theta;
      so.epsilon = opts.epsilon;
      const Iterate start = initial_point(inst.problem, so);
      row.L = input_length(describe_iterate(start, 0), n, opts.epsilon);
      row.iteration_cap = static_cast<int>(std::ceil(50.0 * static_cast<double>(n) * row.L));
      so.max_iterations = row.iteration_cap;

      const SolveResult res = solve(inst.problem, so);
      row.status = res.status;
      row.iterations = res.iterations();
      row.iters_over_nL = row.iterations / (static_cast<double>(n) * row.L);
      row.final_kkt_error = static_cast<double>(kkt_error(inst.problem, res.iterate));
      double sum = 0;
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < res.records.size(); ++k) {
        sum += res.records[k].sin_alpha;
        lo = std::min(lo, res.records[k].sin_alpha);
      }
      row.mean_sin_alpha = row.iterations > 0 ? sum / row.iterations : 0;
      row.min_sin_alpha = row.iterations > 0 ? lo : 0;
      report.rows.push_back(row);
    }
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.m, a.seed) < std::tie(b.n, b.m, b.seed);
  });
  return report;
}

std::string ScalingReport::to_csv() const {
  std::string out = "n,m,L,iterations,iters_over_nL,mean_sin_alpha,min_sin_alpha,status\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.n, r.m, format_real(r.L), r.iterations,
                       format_real(r.iters_over_nL), format_real(r.mean_sin_alpha),
                       format_real(r.min_sin_alpha), to_string(r.status));
  }
  return out;
}

std::string ScalingReport::to_table() const {
  std::string out = fmt::format("{:>5} {:>5} {:>8} {:>6} {:>10} {:>9} {:>9}  {}\n", "n", "m", "L",
                                "iters", "iters/nL", "mean sin", "min sin", "status");
  for (const auto& r : rows) {
    out += fmt::format("{:>5} {:>5} {:>8.3f} {:>6} {:>10.5f} {:>9.5f} {:>9.5f}  {}\n", r.n, r.m,
                       r.L, r.iterations, r.iters_over_nL, r.mean_sin_alpha, r.min_sin_alpha,
                       to_string(r.status));
  }
  return out;
}

std::vector<std::pair<Index, double>> ScalingReport::mean_ratio_by_n() const {
  std::map<Index, std::pair<double, int>> acc;
  for (const auto& r : rows) {
    auto& [sum, count] = acc[r.n];
    sum += r.iters_over_nL;
    ++count;
  }
  std::vector<std::pair<Index, double>> out;
  for (const auto& [n, sc] : acc) out.emplace_back(n, sc.first / sc.second);
  return out;
}

}  // namespace arcipm
