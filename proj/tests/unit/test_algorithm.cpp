#include <cmath>

#include <gtest/gtest.h>

#include "mergepath/algorithm.hpp"
#include "mergepath/error.hpp"
#include "mergepath/reference.hpp"
#include "mergepath/residuals.hpp"
#include "mergepath/shifted_solve.hpp"

using namespace mergepath;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

ProblemSpec scalar_identity() { return make_affine(Mat::Identity(1, 1), Vec::Zero(1)); }

ProblemSpec rotation_problem() {
  Mat M(2, 2);
  M << 0, 1, -1, 0;
  return make_affine(M, Vec::Zero(2));
}

AlgorithmConfig cfg(Algorithm a, double alpha, long n) {
  AlgorithmConfig c;
  c.algorithm = a;
  c.alpha = alpha;
  c.max_iterations = n;
  return c;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

bool same(const IterateTrace& a, const IterateTrace& b) {
  if (a.main.size() != b.main.size() || a.residual_norms != b.residual_norms) return false;
  for (std::size_t k = 0; k < a.main.size(); ++k) {
    if (a.main[k] != b.main[k]) return false;
  }
  return true;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (Algorithm a : all_algorithms()) EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  EXPECT_EQ(code_of([] { parse_algorithm("FEGG"); }), ErrorCode::UnknownAlgorithm);
}

TEST(Run, ZeroProblemFreezesForwardMethods) {
  const ProblemSpec p = make_zero(3);
  const Vec z0 = v({1, -2, 0.5});
  for (Algorithm a : {Algorithm::FEG, Algorithm::EAG, Algorithm::APS, Algorithm::EG, Algorithm::OG, Algorithm::GDA}) {
    const IterateTrace t = run(cfg(a, 0.3, 20), p, z0);
    ASSERT_EQ(t.main.size(), 21u);
    for (const Vec& z : t.main) EXPECT_EQ(z, z0);
  }
}

TEST(Run, HalpernOnIdentityResolventIsConstant) {
  const IterateTrace t = run(cfg(Algorithm::OHM, 1.0, 10), make_zero(2), v({4, 5}));
  for (const Vec& w : t.main) EXPECT_LE((w - v({4, 5})).norm(), 1e-14);
  for (double r : t.residual_norms) EXPECT_EQ(r, 0.0);
}

TEST(Run, TraceLengthsShareIterationCount) {
  const IterateTrace t = run(cfg(Algorithm::FEG, 0.5, 7), rotation_problem(), v({1, 0}));
  EXPECT_EQ(t.main.size(), 8u);
  EXPECT_EQ(t.residual_norms.size(), 8u);
  EXPECT_EQ(t.oracle_counts.size(), 8u);
  EXPECT_EQ(t.op_evals.size(), 8u);
  EXPECT_EQ(t.sequence("half").size(), 7u);
  EXPECT_EQ(t.iterations, 7);
}

TEST(Steps, Gda) { EXPECT_DOUBLE_EQ(run(cfg(Algorithm::GDA, 0.5, 1), scalar_identity(), v({1})).main[1][0], 0.5); }

TEST(Steps, Eg) {
  EXPECT_DOUBLE_EQ(run(cfg(Algorithm::EG, 0.5, 1), scalar_identity(), v({1})).main[1][0], 0.75);
  const IterateTrace t = run(cfg(Algorithm::EG, 0.1, 1), rotation_problem(), v({1, 0}));
  EXPECT_NEAR(t.sequence("half")[0][0], 1.0, 1e-15);
  EXPECT_NEAR(t.sequence("half")[0][1], 0.1, 1e-15);
  EXPECT_NEAR(t.main[1][0], 0.99, 1e-15);
  EXPECT_NEAR(t.main[1][1], 0.1, 1e-15);
}

TEST(Steps, Og) {
  const IterateTrace t = run(cfg(Algorithm::OG, 0.5, 2), scalar_identity(), v({1}));
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.5);
  EXPECT_DOUBLE_EQ(t.main[2][0], 0.5);
}

TEST(Steps, Agm) {
  AlgorithmConfig c = cfg(Algorithm::AGM, 1.0, 1);
  c.momentum_a = 3.0;
  const IterateTrace t = run(c, scalar_identity(), v({1}));
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.0);
  EXPECT_NEAR(t.sequence("y")[1][0], 1.0 / 3.0, 1e-15);

  const IterateTrace frozen = run(c, make_figure1(), v({0, 3}));
  EXPECT_EQ(frozen.main[1], v({0, 3}));
  EXPECT_EQ(frozen.sequence("y")[1], v({0, 3}));
}

TEST(Steps, AgmRejectsSmallMomentumAndSaddles) {
  AlgorithmConfig c = cfg(Algorithm::AGM, 0.1, 1);
  c.momentum_a = 2.0;
  EXPECT_EQ(code_of([&] { run(c, scalar_identity(), v({1})); }), ErrorCode::ConfigError);
  c.momentum_a = 3.0;
  EXPECT_EQ(code_of([&] { run(c, rotation_problem(), v({1, 0})); }), ErrorCode::ConfigError);
}

TEST(Steps, Feg) {
  const IterateTrace t = run(cfg(Algorithm::FEG, 0.5, 1), scalar_identity(), v({1}));
  EXPECT_DOUBLE_EQ(t.sequence("half")[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.5);
}

TEST(Steps, Aps) {
  const IterateTrace t = run(cfg(Algorithm::APS, 0.5, 1), scalar_identity(), v({1}));
  EXPECT_DOUBLE_EQ(t.sequence("v")[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.sequence("v")[1][0], 0.5);
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.75);
}

TEST(Steps, EagFrozenOnZero) {
  const IterateTrace t = run(cfg(Algorithm::EAG, 0.2, 5), make_zero(1), v({3}));
  for (const Vec& z : t.main) EXPECT_NEAR(z[0], 3.0, 1e-15);
}

TEST(Steps, EagVStepSchedule) {
  const IterateTrace t = run(cfg(Algorithm::EAG_V, 0.5, 2), scalar_identity(), v({1}));
  const auto& alpha = t.scalars.at("alpha");
  EXPECT_DOUBLE_EQ(alpha[0], 0.5);
  EXPECT_NEAR(alpha[1], 4.0 / 9.0, 1e-15);

  const IterateTrace z = run(cfg(Algorithm::EAG_V, 0.5, 5), make_zero(2), v({1, 1}));
  for (double a : z.scalars.at("alpha")) EXPECT_EQ(a, 0.5);
  for (const Vec& p : z.main) EXPECT_EQ(p, v({1, 1}));
}

TEST(Steps, ApsVStepSchedule) {
  AlgorithmConfig c = cfg(Algorithm::APS_V, 0.25, 2);
  c.theta = 1.0;
  const IterateTrace t = run(c, scalar_identity(), v({1}));
  // oracle: M = 4, beta_0 = 1/2, beta_1 = 1/3,
  // alpha_1 = 0.25 (1/3)(1 - 1/4 - 1/4) / ((1 - 1/4)(1/2)(1/2)) = 2/9
  EXPECT_NEAR(t.scalars.at("alpha")[1], 2.0 / 9.0, 1e-15);
}

TEST(Steps, ApsVRequiresTheta) {
  EXPECT_EQ(code_of([] { run(cfg(Algorithm::APS_V, 0.25, 2), scalar_identity(), v({1})); }), ErrorCode::ConfigError);
}

TEST(Steps, Ohm) {
  const IterateTrace t = run(cfg(Algorithm::OHM, 1.0, 2), scalar_identity(), v({1}));
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.5);
  EXPECT_DOUBLE_EQ(t.sequence("half")[1][0], 0.75);
  EXPECT_DOUBLE_EQ(t.main[2][0], 0.375);
}

TEST(Steps, OcHalpernScheduleApproachesHarmonic) {
  AlgorithmConfig c = cfg(Algorithm::OC_HALPERN, 1.0, 4);
  c.gamma = 1.0 + 1e-9;
  const IterateTrace t = run(c, scalar_identity(), v({1}));
  const auto& beta = t.scalars.at("beta");
  for (std::size_t k = 0; k < beta.size(); ++k) EXPECT_NEAR(beta[k], 1.0 / static_cast<double>(k + 1), 1e-7);
}

TEST(Steps, SmEagPlusScalar) {
  ProblemSpec p = scalar_identity();
  const IterateTrace t = run(cfg(Algorithm::SM_EAG_PLUS, 1.0, 1), p, v({1}));
  EXPECT_DOUBLE_EQ(t.sequence("half")[0][0], 1.0);
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.0);
}

TEST(Steps, SmEagPlusFrozenOnZeroWithDeclaredMu) {
  ProblemSpec p = make_zero(2);
  p.L = 1.0;
  p.mu = 0.5;
  const IterateTrace t = run(cfg(Algorithm::SM_EAG_PLUS, 1.0, 5), p, v({2, 2}));
  for (const Vec& z : t.main) EXPECT_EQ(z, v({2, 2}));
}

TEST(Steps, SmEagPlusStepLimit) {
  const ProblemSpec p = make_random_scsc(3, 4, 2.0, 0.5);
  const double amax = sm_eag_max_step(2.0, 0.5);
  EXPECT_NEAR(amax, (std::sqrt(4.25) + 0.5) / 4.0, 1e-15);
  EXPECT_NO_THROW(run(cfg(Algorithm::SM_EAG_PLUS, amax, 3), p, Vec::Ones(4)));
  EXPECT_EQ(code_of([&] { run(cfg(Algorithm::SM_EAG_PLUS, 1.01 * amax, 3), p, Vec::Ones(4)); }),
            ErrorCode::ConfigError);
}

TEST(Steps, FegRejectsLargeStep) {
  EXPECT_EQ(code_of([] { run(cfg(Algorithm::FEG, 1.0, 3), scalar_identity(), v({1})); }), ErrorCode::ConfigError);
}

TEST(Steps, OhmDrsScalar) {
  const ProblemSpec p =
      make_composite(ProxQuadratic{Mat::Identity(1, 1), Vec::Zero(1)}, ProxZero{}, scalar_identity(), 1);
  const IterateTrace t = run(cfg(Algorithm::OHM_DRS, 1.0, 1), p, v({1}));
  EXPECT_DOUBLE_EQ(t.sequence("w")[0][0], 0.5);
  EXPECT_DOUBLE_EQ(t.main[1][0], 0.75);
}

TEST(Steps, OhmDrsWithZeroAIsShiftedOhm) {
  const ProblemSpec smooth = rotation_problem();
  const ProblemSpec p = make_composite(ProxZero{}, ProxZero{}, smooth, 1);
  AlgorithmConfig shifted = cfg(Algorithm::OHM, 0.7, 30);
  shifted.ohm_form = OhmForm::Shifted;
  const IterateTrace drs = run(cfg(Algorithm::OHM_DRS, 0.7, 30), p, v({1, 0.5}));
  const IterateTrace ohm = run(shifted, smooth, v({1, 0.5}));
  for (std::size_t k = 0; k < drs.main.size(); ++k) EXPECT_LE((drs.main[k] - ohm.main[k]).norm(), 1e-14);
}

TEST(Steps, ApgStarWithZeroBIsOhmOnProx) {
  const ProblemSpec p = make_composite(ProxBox{v({0, 0}), v({1, 1})}, ProxZero{}, make_zero(2), 2);
  const IterateTrace apg = run(cfg(Algorithm::APG_STAR, 0.5, 20), p, v({3, -1}));
  const IterateTrace drs = run(cfg(Algorithm::OHM_DRS, 0.5, 20), p, v({3, -1}));
  for (std::size_t k = 0; k < apg.main.size(); ++k) {
    EXPECT_EQ(apg.main[k], drs.main[k]);
    EXPECT_EQ(apg.sequence("z")[k], apg.main[k]);
  }
}

TEST(Steps, ApgInnerTolerance) {
  EXPECT_DOUBLE_EQ(apg_inner_tolerance(3.0, 3.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(apg_inner_tolerance(0.0, 2.0, 1), 1.0 / 12.0);
}

// Invariants

TEST(Invariants, Determinism) {
  const ProblemSpec p = make_random_monotone_affine(4, 6, 2.0, 0.0);
  const Vec z0 = random_point(9, 6);
  for (Algorithm a : {Algorithm::EAG, Algorithm::FEG, Algorithm::APS, Algorithm::OHM, Algorithm::EG, Algorithm::OG}) {
    EXPECT_TRUE(same(run(cfg(a, 0.2, 50), p, z0), run(cfg(a, 0.2, 50), p, z0)));
  }
}

TEST(Invariants, OracleAccounting) {
  const ProblemSpec p = make_random_monotone_affine(4, 6, 2.0, 0.0);
  const Vec z0 = random_point(9, 6);
  auto per_iteration = [&](Algorithm a) {
    const IterateTrace t = run(cfg(a, 0.2, 20), p, z0);
    EXPECT_EQ(t.oracle_counts[0].forward, 0);
    std::vector<long> f;
    for (std::size_t k = 2; k < t.oracle_counts.size(); ++k) f.push_back(t.oracle_counts[k].forward);
    return f;
  };
  for (long c : per_iteration(Algorithm::EAG)) EXPECT_EQ(c, 2);
  for (long c : per_iteration(Algorithm::FEG)) EXPECT_EQ(c, 2);
  for (long c : per_iteration(Algorithm::EG)) EXPECT_EQ(c, 2);
  for (long c : per_iteration(Algorithm::OG)) EXPECT_EQ(c, 1);
  for (long c : per_iteration(Algorithm::APS)) EXPECT_EQ(c, 1);
}

TEST(Invariants, FirstHalfStepDependsOnStartOnly) {
  const ProblemSpec p = make_random_monotone_affine(6, 4, 1.0, 0.0);
  const Vec z0 = random_point(1, 4);
  for (Algorithm a : {Algorithm::FEG, Algorithm::SM_EAG_PLUS}) {
    ProblemSpec q = p;
    if (a == Algorithm::SM_EAG_PLUS) q = make_random_scsc(6, 4, 1.0, 0.1);
    const IterateTrace t = run(cfg(a, 0.5, 1), q, z0);
    EXPECT_EQ(t.sequence("half")[0], z0);
  }
  const IterateTrace ohm = run(cfg(Algorithm::OHM, 0.5, 1), p, z0);
  EXPECT_EQ(ohm.sequence("half")[0], z0);
}

TEST(Invariants, OhmFormsAgree) {
  const ProblemSpec p = make_random_monotone_affine(12, 5, 3.0, 0.0);
  const Vec z0 = random_point(2, 5);
  AlgorithmConfig shifted = cfg(Algorithm::OHM, 0.3, 100);
  shifted.ohm_form = OhmForm::Shifted;
  const IterateTrace w = run(cfg(Algorithm::OHM, 0.3, 100), p, z0);
  const IterateTrace u = run(shifted, p, z0);
  const auto& half = w.sequence("half");
  for (std::size_t k = 0; k < half.size(); ++k) EXPECT_LE((u.main[k] - half[k]).norm(), 1e-13);
}

TEST(Invariants, SmEagPlusIsFegWhenMuIsZero) {
  for (int seed = 1; seed <= 5; ++seed) {
    const ProblemSpec p = make_random_monotone_affine(seed, 6, 2.0, 0.0);
    const Vec z0 = random_point(seed, 6);
    const IterateTrace sm = run(cfg(Algorithm::SM_EAG_PLUS, 0.45, 200), p, z0);
    const IterateTrace feg = run(cfg(Algorithm::FEG, 0.45, 200), p, z0);
    EXPECT_TRUE(same(sm, feg));
  }
}

TEST(Invariants, OhmDrsResidualIdentity) {
  const ProblemSpec smooth = make_random_monotone_affine(3, 6, 1.0, 0.0);
  const ProblemSpec p = make_composite(ProxBox{Vec::Constant(3, -0.5), Vec::Constant(3, 0.5)}, ProxL1{0.2}, smooth, 3);
  const double alpha = 0.6;
  const IterateTrace t = run(cfg(Algorithm::OHM_DRS, alpha, 40), p, random_point(5, 6, 2.0));
  const auto& w = t.sequence("w");
  for (std::size_t k = 0; k < t.main.size(); ++k) {
    const double lhs = (t.main[k] - drs_operator(*p.A, p.B, alpha, t.main[k])).norm();
    EXPECT_NEAR(lhs, t.residual_norms[k], 1e-9);
    EXPECT_NEAR(lhs, alpha * forward_backward_residual(*p.A, p.B, alpha, w[k]).norm(), 1e-9);
  }
}

TEST(Invariants, ApgIteratesStayBounded) {
  const ProblemSpec smooth = make_random_monotone_affine(8, 4, 1.0, 0.0);
  const ProblemSpec p = make_composite(ProxBox{Vec::Constant(2, -1.0), Vec::Constant(2, 1.0)},
                                       ProxBox{Vec::Constant(2, -1.0), Vec::Constant(2, 1.0)}, smooth, 2);
  const double alpha = 0.5;
  const Vec xi0 = random_point(4, 4, 2.0);
  const IterateTrace t = run(cfg(Algorithm::APG_STAR, alpha, 200), p, xi0);
  const Vec xi_star = drs_fixed_point_reference(p, alpha, xi0, 100000);
  const double M = 1.0 + eval(p.B, xi0).norm() / p.L;
  for (const Vec& xi : t.main) EXPECT_LE((xi - xi_star).norm(), (xi0 - xi_star).norm() + M + 1e-9);
}

TEST(Invariants, ApgInnerBudgetExceeded) {
  const ProblemSpec smooth = make_random_monotone_affine(8, 4, 1.0, 0.0);
  const ProblemSpec p = make_composite(ProxZero{}, ProxZero{}, smooth, 2);
  AlgorithmConfig c = cfg(Algorithm::APG_STAR, 0.5, 50);
  c.inner_budget = 1;
  EXPECT_EQ(code_of([&] { run(c, p, random_point(4, 4, 2.0)); }), ErrorCode::InnerLoopBudgetExceeded);
}

TEST(Invariants, StopTolerance) {
  AlgorithmConfig c = cfg(Algorithm::FEG, 0.5, 100000);
  c.stop_tolerance = 1e-3;
  const IterateTrace t = run(c, rotation_problem(), v({1, 0}));
  EXPECT_TRUE(t.stopped_early);
  EXPECT_LE(t.residual_norms.back(), 1e-3);
  EXPECT_GT(t.residual_norms[t.residual_norms.size() - 2], 1e-3);
}

TEST(Invariants, SummaryLevelKeepsEndpointsOnly) {
  AlgorithmConfig c = cfg(Algorithm::FEG, 0.5, 30);
  c.trace_level = TraceLevel::Summary;
  const IterateTrace s = run(c, rotation_problem(), v({1, 0}));
  const IterateTrace f = run(cfg(Algorithm::FEG, 0.5, 30), rotation_problem(), v({1, 0}));
  EXPECT_EQ(s.residual_norms, f.residual_norms);
  EXPECT_EQ(s.final_point, f.main.back());
  EXPECT_EQ(s.main.size(), 2u);
}

TEST(Invariants, Figure1AgmLeavesDomainOrStays) {
  // The caption step sizes keep every method inside x2 > 0 for 200 iterations.
  const ProblemSpec p = make_figure1();
  for (double a : {3.0, 5.0, 9.0}) {
    AlgorithmConfig c = cfg(Algorithm::AGM, 0.025, 200);
    c.momentum_a = a;
    const IterateTrace t = run(c, p, *p.default_start);
    for (const Vec& z : t.main) EXPECT_GT(z[1], 0.0);
  }
}
