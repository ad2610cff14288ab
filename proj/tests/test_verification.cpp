#include <gtest/gtest.h>

#include "arcipm/verification.hpp"

namespace arcipm {
namespace {

const double kTheta = static_cast<double>(kMaxTheta);

std::vector<IterationRecord> synthetic_records() {
  std::vector<IterationRecord> records(4);
  records[0].mu = 8;
  records[0].norm_rb = 4;
  records[0].norm_rc = 2;
  const double sins[] = {0.5, 0.75, 0.5};
  for (int k = 1; k < 4; ++k) {
    const double f = 1 - sins[k - 1];
    records[k].iter = k;
    records[k].sin_alpha = sins[k - 1];
    records[k].mu = records[k - 1].mu * f;
    records[k].norm_rb = records[k - 1].norm_rb * f;
    records[k].norm_rc = records[k - 1].norm_rc * f;
    records[k].status = "step";
  }
  return records;
}

SolveResult traced_solve(Index m, Index n, std::uint64_t seed) {
  SolverOptions opts;
  opts.keep_snapshots = true;
  return solve(generate_random_lp(m, n, seed).problem, opts);
}

TEST(RateIdentities, ExactPowersOfTwoHaveZeroDeviation) {
  const auto report = check_rate_identities(synthetic_records());
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.worst, 0.0);
  EXPECT_EQ(report.checked, 9);
}

TEST(RateIdentities, SkipsTinyDenominators) {
  auto records = synthetic_records();
  records[1].norm_rb = 1e-14;
  records[2].norm_rb = 5e-15;  // would be 2.5e-15 under the identity
  records[3].norm_rb = 0;
  const auto report = check_rate_identities(records);
  EXPECT_FALSE(report.pass);  // the 4 -> 1e-14 drop is still checked
  EXPECT_EQ(report.failures.size(), 1u);
  EXPECT_NE(report.failures[0].find("iteration 1"), std::string::npos);
}

TEST(RateIdentities, CorruptedMuIsReportedWithItsIteration) {
  auto records = synthetic_records();
  records[2].mu *= 1 + 1e-3;
  const auto report = check_rate_identities(records);
  EXPECT_FALSE(report.pass);
  ASSERT_EQ(report.failures.size(), 2u);  // ratio 1->2 and 2->3 both disturbed
  EXPECT_NE(report.failures[0].find("iteration 2: mu"), std::string::npos);
  EXPECT_NEAR(report.worst, 1e-3, 1e-6);
}

TEST(RateIdentities, HoldOnRealSolves) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto result = traced_solve(6, 12, seed);
    ASSERT_EQ(result.status, SolveStatus::kOptimal);
    const auto report = check_rate_identities(result.records);
    EXPECT_TRUE(report.pass) << report.failures.front();
    EXPECT_LE(report.worst, 1e-8);
  }
}

TEST(Neighborhood, CenteredPointPasses) {
  const auto inst = generate_random_lp(3, 6, 2);
  const auto z = initial_point(inst.problem, {});
  const auto report = check_neighborhood(inst.problem, {z}, {}, kMaxTheta);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.worst, 0.0);
}

TEST(Neighborhood, RealTracesPass) {
  for (std::uint64_t seed = 10; seed <= 14; ++seed) {
    const auto result = traced_solve(5, 10, seed);
    ASSERT_EQ(result.status, SolveStatus::kOptimal);
    const auto report =
        check_neighborhood(generate_random_lp(5, 10, seed).problem, result.iterates,
                           result.trials, kMaxTheta);
    EXPECT_TRUE(report.pass) << report.failures.front();
    EXPECT_LE(report.worst, kTheta);
    EXPECT_TRUE(check_logged_neighborhood(result.records, kTheta).pass);
  }
}

TEST(Neighborhood, OffCenterIterateFails) {
  const StandardLP p(Matrix::Ones(1, 2), Vector::Constant(1, 2), Vector::Ones(2));
  Vector x(2);
  x << 1.9, 0.1;
  const Iterate z(p, x, Vector::Zero(1), Vector::Ones(2));
  const auto report = check_neighborhood(p, {z}, {}, kMaxTheta);
  EXPECT_FALSE(report.pass);
  EXPECT_NEAR(report.worst, std::sqrt(2.0) * 0.9, 1e-12);
}

TEST(Neighborhood, ViolatingTrialFails) {
  const StandardLP p(Matrix::Ones(1, 2), Vector::Constant(1, 2), Vector::Ones(2));
  TrialSnapshot t;
  t.iter = 3;
  t.sin_alpha = 0.5;
  t.mu_before = 1;
  t.point.x = Vector::Ones(2);
  t.point.y = Vector::Zero(1);
  t.point.s = Vector::Ones(2);  // products 1 against target 0.5
  const auto report = check_neighborhood(p, {}, {t}, kMaxTheta);
  EXPECT_FALSE(report.pass);
  EXPECT_NE(report.failures[0].find("step 3"), std::string::npos);
}

TEST(Neighborhood, LoggedDistances) {
  auto records = synthetic_records();
  records[2].neigh_dist = 0.3;
  const auto report = check_logged_neighborhood(records, kTheta);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.worst, 0.3);
}

TEST(Orthogonality, RealSolveAndViolation) {
  const auto result = traced_solve(8, 16, 5);
  const auto report = check_corrector_orthogonality(result.records);
  EXPECT_TRUE(report.pass);
  EXPECT_GT(report.checked, 0);

  auto records = result.records;
  records[1].corrector_dot = 1e-6 + 1e-10 * records[1].corrector_norm_prod;
  EXPECT_FALSE(check_corrector_orthogonality(records).pass);
}

TEST(InputLength, Examples) {
  IterationRecord start;
  start.mu = 1;
  start.norm_rb = 0;
  start.norm_rc = 0;
  EXPECT_NEAR(input_length(start, 10, 1e-8), std::log(1e9), 1e-12);
  start.norm_rb = 1e3;
  EXPECT_NEAR(input_length(start, 10, 1e-8), std::log(1e11), 1e-12);
}

TEST(Scaling, SmallExperiment) {
  ScalingOptions opts;
  opts.sizes = {{3, 6}, {5, 10}, {8, 16}};
  const auto report = scaling_experiment(opts);
  ASSERT_EQ(report.rows.size(), 9u);
  for (const auto& r : report.rows) {
    EXPECT_EQ(r.status, SolveStatus::kOptimal) << r.seed;
    EXPECT_LE(r.final_kkt_error, 1e-8);
    EXPECT_LE(r.iterations, r.iteration_cap);
    EXPECT_GT(r.L, 0);
    EXPECT_GT(r.min_sin_alpha, 0);
    EXPECT_LE(r.min_sin_alpha, r.mean_sin_alpha);
  }
  EXPECT_EQ(report.rows[0].seed, 1u);
  EXPECT_EQ(report.rows[3].seed, 1001u);
  EXPECT_EQ(report.mean_ratio_by_n().size(), 3u);

  const auto again = scaling_experiment(opts);
  EXPECT_EQ(report.to_csv(), again.to_csv());
  EXPECT_EQ(report.to_csv().substr(0, report.to_csv().find('\n')),
            "n,m,L,iterations,iters_over_nL,mean_sin_alpha,min_sin_alpha,status");
  EXPECT_NE(report.to_table().find("Optimal"), std::string::npos);
}

}  // namespace
}  // namespace arcipm
