#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "arcipm/arc_search.hpp"
#include "arcipm/ipm_driver.hpp"
#include "test_support.hpp"

namespace arcipm {
namespace {

using testing::bisection_oracle;

double d(Real v) { return static_cast<double>(v); }

const double kTheta = static_cast<double>(kMaxTheta);

StandardLP hand_problem() {
  return StandardLP(Matrix::Ones(1, 2), Vector::Constant(1, 2), Vector::Ones(2));
}

Iterate hand_start(const StandardLP& p) {
  return Iterate(p, Vector::Ones(2), Vector::Zero(1), Vector::Ones(2));
}

ArcDerivatives derivatives_at(const StandardLP& p, const Iterate& z) {
  return compute_derivatives(p, z, ScalingFactorization(p.A(), z.x(), z.s()));
}

TEST(Derivatives, HandInstance) {
  const auto p = hand_problem();
  const auto z = hand_start(p);
  const auto dv = derivatives_at(p, z);
  EXPECT_NEAR(d(dv.xdot.norm()), 0.0, 1e-30);
  EXPECT_NEAR(d(dv.ydot(0)), -1.0, 1e-30);
  EXPECT_NEAR(d((dv.sdot - Vector::Ones(2)).norm()), 0.0, 1e-30);
  EXPECT_NEAR(d(dv.xddot.norm() + dv.yddot.norm() + dv.sddot.norm()), 0.0, 1e-30);
}

TEST(Derivatives, SatisfyDefiningSystems) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = generate_random_lp(4, 9, seed);
    const auto& p = inst.problem;
    SolverOptions opts;
    const auto z = initial_point(p, opts);
    const auto dv = derivatives_at(p, z);
    const Matrix& a = p.A();
    EXPECT_LE(d((a * dv.xdot - z.rb()).norm()), 1e-25);
    EXPECT_LE(d((a.transpose() * dv.ydot + dv.sdot - z.rc()).norm()), 1e-25);
    EXPECT_LE(d((z.s().cwiseProduct(dv.xdot) + z.x().cwiseProduct(dv.sdot) -
                 z.x().cwiseProduct(z.s()))
                    .norm()),
              1e-25);
    EXPECT_LE(d((a * dv.xddot).norm()), 1e-25);
    EXPECT_LE(d((a.transpose() * dv.yddot + dv.sddot).norm()), 1e-25);
    EXPECT_LE(d((z.s().cwiseProduct(dv.xddot) + z.x().cwiseProduct(dv.sddot) +
                 2 * dv.xdot.cwiseProduct(dv.sdot))
                    .norm()),
              1e-25);
  }
}

TEST(Ellipse, EndpointsOnHandInstance) {
  const auto p = hand_problem();
  const auto z = hand_start(p);
  const auto dv = derivatives_at(p, z);

  const auto at_zero = ellipse_point(z, dv, 0);
  EXPECT_EQ(at_zero.x, z.x());
  EXPECT_EQ(at_zero.s, z.s());

  const Real half_pi = asin(Real{1});
  const auto top = ellipse_point(z, dv, half_pi);
  EXPECT_NEAR(d((top.x - Vector::Ones(2)).norm()), 0.0, 1e-30);
  EXPECT_NEAR(d(top.s.norm()), 0.0, 1e-30);
  EXPECT_NEAR(d(top.y(0)), 1.0, 1e-30);

  const auto top_sin = ellipse_point_sin(z, dv, 1);
  EXPECT_NEAR(d(top_sin.s.norm()), 0.0, 1e-30);
}

TEST(Ellipse, SinParameterizationAgreesWithAngle) {
  const auto inst = generate_random_lp(3, 6, 11);
  const auto z = initial_point(inst.problem, {});
  const auto dv = derivatives_at(inst.problem, z);
  for (double alpha : {1e-6, 0.1, 0.7, 1.3, 1.5707}) {
    const auto by_angle = ellipse_point(z, dv, alpha);
    const auto by_sin = ellipse_point_sin(z, dv, sin(Real{alpha}));
    EXPECT_LE(d((by_angle.x - by_sin.x).norm()), 1e-28) << alpha;
    EXPECT_LE(d((by_angle.s - by_sin.s).norm()), 1e-28) << alpha;
  }
}

TEST(Ellipse, OneMinusCosHasNoCancellation) {
  const Real tiny = 1e-20;
  // 1 - cos(asin t) = t^2/2 + t^4/8 + ...
  EXPECT_NEAR(d(one_minus_cos_from_sin(tiny) / (tiny * tiny)), 0.5, 1e-15);
  EXPECT_EQ(d(one_minus_cos_from_sin(1)), 1.0);
  EXPECT_EQ(d(one_minus_cos_from_sin(0)), 0.0);
}

TEST(Ellipse, DeviatesFromTangentQuadratically) {
  const auto inst = generate_random_lp(5, 10, 3);
  const auto z = initial_point(inst.problem, {});
  const auto dv = derivatives_at(inst.problem, z);
  const Real k = dv.xddot.norm() + dv.xdot.norm();
  for (double alpha : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto pt = ellipse_point(z, dv, alpha);
    const Vector tangent = z.x() - Real{alpha} * dv.xdot;
    EXPECT_LE(d((pt.x - tangent).norm()), d(k) * alpha * alpha) << alpha;
  }
}

TEST(Quartic, ValueAtZeroIsMinusThetaMu) {
  const auto inst = generate_random_lp(4, 8, 2);
  const auto z = initial_point(inst.problem, {});
  const auto dv = derivatives_at(inst.problem, z);
  const auto q = build_quartic(dv, kMaxTheta, z.mu());
  EXPECT_EQ(q(0), -kMaxTheta * z.mu());
  EXPECT_GE(d(q.a4), 0.0);
  EXPECT_GE(d(q.a3), 0.0);
}

TEST(Quartic, DegenerateCoefficientsGiveFullStep) {
  QuarticCondition q;
  q.a1 = 0.25;
  q.a0 = -0.25;
  EXPECT_EQ(d(max_step(q)), 1.0);
}

TEST(Quartic, FixtureRoot) {
  QuarticCondition q;
  q.a4 = 1;
  q.a1 = 1;
  q.a0 = -1;
  const Real root = max_step(q);
  const long double oracle =
      bisection_oracle([](long double s) { return s * s * s * s + s - 1; }, 0, 1);
  EXPECT_NEAR(d(root), 0.724492, 1e-6);
  EXPECT_NEAR(d(root), static_cast<double>(oracle), 1e-15);
  EXPECT_LE(d(abs(q(root))), 1e-10);
}

TEST(Quartic, RandomBracketingAgainstOracle) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> coef(0, 50);
  std::uniform_real_distribution<double> small(1e-6, 1);
  for (int t = 0; t < 200; ++t) {
    QuarticCondition q;
    q.a4 = coef(rng);
    q.a3 = coef(rng);
    const double theta_mu = small(rng) * kTheta;
    q.a1 = theta_mu;
    q.a0 = -theta_mu;
    const Real root = max_step(q);
    if (q(1) <= 0) {
      EXPECT_EQ(d(root), 1.0);
      continue;
    }
    EXPECT_LE(d(q(root)), 0.0);
    EXPECT_LE(d(abs(q(root))), 1e-10 * theta_mu);
    const long double oracle = bisection_oracle(
        [&](long double s) {
          return ((static_cast<long double>(d(q.a4)) * s + static_cast<long double>(d(q.a3))) *
                      s * s +
                  theta_mu) *
                     s -
                 theta_mu;
        },
        0, 1);
    EXPECT_NEAR(d(root), static_cast<double>(oracle), 1e-12);
  }
}

TEST(Quartic, MonotoneOnUnitInterval) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(0, 10);
  for (int t = 0; t < 50; ++t) {
    const QuarticCondition q{coef(rng), coef(rng), 0.1, -0.1};
    Real prev = q(0);
    for (int i = 1; i <= 1000; ++i) {
      const Real cur = q(Real{i} / 1000);
      ASSERT_GT(d(cur), d(prev));
      prev = cur;
    }
  }
}

TEST(AdmissibleStep, HandInstanceTakesExactFullStep) {
  const auto p = hand_problem();
  const auto z = hand_start(p);
  const auto dv = derivatives_at(p, z);
  const auto q = build_quartic(dv, kMaxTheta, z.mu());
  EXPECT_EQ(d(max_step(q)), 1.0);
  const auto step = admissible_step(p, z, dv, kMaxTheta, 1);
  EXPECT_TRUE(step.exact);
  EXPECT_EQ(step.backtracks, 0);
  EXPECT_EQ(d(step.sin_alpha), 1.0);
}

TEST(AdmissibleStep, ArcConditionAndPositivityAtQuarticRoot) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate_random_lp(3 + seed % 6, 2 * (3 + seed % 6), seed);
    const auto& p = inst.problem;
    const auto z = initial_point(p, {});
    const auto dv = derivatives_at(p, z);
    const Real sigma = max_step(build_quartic(dv, kMaxTheta, z.mu()));
    const auto step = admissible_step(p, z, dv, kMaxTheta, sigma);
    EXPECT_EQ(step.backtracks, 0) << "seed " << seed;
    EXPECT_FALSE(step.exact);
    EXPECT_TRUE((step.trial.x.array() > 0).all());
    EXPECT_TRUE((step.trial.s.array() > 0).all());
    EXPECT_TRUE(satisfies_arc_condition(step.trial, step.sin_alpha, kMaxTheta, z.mu()));
    const Real floor = (1 - 2 * kMaxTheta) * (1 - step.sin_alpha) * z.mu();
    EXPECT_GE(d(step.trial.x.cwiseProduct(step.trial.s).minCoeff()), d(floor));
  }
}

TEST(AdmissibleStep, MaxStepNeverBelowObservedFloor) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_random_lp(6, 12, seed);
    const auto& p = inst.problem;
    SolverOptions opts;
    auto z = initial_point(p, opts);
    for (int k = 1; k <= 8; ++k) {
      const auto dv = derivatives_at(p, z);
      const Real sigma = max_step(build_quartic(dv, kMaxTheta, z.mu()));
      const Real floor = observed_step_floor(dv, kMaxTheta, z.mu(), p.cols());
      EXPECT_GE(d(sigma), d(floor)) << "seed " << seed << " iter " << k;
      EXPECT_GT(d(floor), 0.0);
      z = iterate_once(p, z, opts, k).next;
    }
  }
}

TEST(AdmissibleStep, BacktracksFromAnOversizedStep) {
  const auto inst = generate_random_lp(5, 10, 21);
  const auto& p = inst.problem;
  const auto z = initial_point(p, {});
  const auto dv = derivatives_at(p, z);
  const Real sigma = max_step(build_quartic(dv, kMaxTheta, z.mu()));
  ASSERT_LT(d(sigma), 1.0);
  const auto step = admissible_step(p, z, dv, kMaxTheta, 1);
  EXPECT_LE(d(step.sin_alpha), 1.0);
  EXPECT_TRUE(satisfies_arc_condition(step.trial, step.sin_alpha, kMaxTheta, z.mu()));
  EXPECT_NEAR(d(step.sin_alpha), std::pow(0.9, step.backtracks), 1e-15);
}

TEST(AdmissibleStep, StallsWhenNothingIsAdmissible) {
  const auto inst = generate_random_lp(3, 6, 4);
  const auto z = initial_point(inst.problem, {});
  auto dv = derivatives_at(inst.problem, z);
  // A huge curvature term pushes every trial point away from the center.
  dv.xddot = Vector::Constant(6, 1e40);
  dv.sddot = Vector::Constant(6, -1e40);
  EXPECT_THROW(admissible_step(inst.problem, z, dv, kMaxTheta, 1), StalledArcSearch);
}

}  // namespace
}  // namespace arcipm
