#include <cmath>

#include <gtest/gtest.h>

#include "mergepath/error.hpp"
#include "mergepath/problem.hpp"
#include "mergepath/reference.hpp"
#include "mergepath/residuals.hpp"

using namespace mergepath;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

Mat m1(double a) { return Mat::Constant(1, 1, a); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Bilinear, RotationHasOriginSaddle) {
  const ProblemSpec p = make_bilinear(m1(1), v({0}), v({0}));
  EXPECT_EQ(eval(p.B, v({2, 3})), v({3, -2}));
  EXPECT_EQ(*p.known_solution, v({0, 0}));
  EXPECT_DOUBLE_EQ(p.L, 1.0);
  EXPECT_EQ(p.mu, 0.0);
}

TEST(Bilinear, ShiftedSolution) {
  const ProblemSpec p = make_bilinear(m1(1), v({1}), v({0}));
  // oracle: y + 1 = 0, -x = 0
  EXPECT_NEAR((*p.known_solution - v({0, -1})).norm(), 0.0, 1e-15);
  EXPECT_LE(eval(p.B, *p.known_solution).norm(), 1e-9);
}

TEST(Bilinear, ZeroCouplingUsesOriginByConvention) {
  const ProblemSpec p = make_bilinear(m1(0), v({0}), v({0}));
  EXPECT_EQ(*p.known_solution, v({0, 0}));
  EXPECT_EQ(eval(p.B, v({5, -1})), v({0, 0}));
}

TEST(Bilinear, RequireUniqueRejectsSingular) {
  EXPECT_EQ(code_of([] { make_bilinear(m1(0), v({0}), v({0}), SolutionPolicy::RequireUnique); }),
            ErrorCode::SingularSystem);
}

TEST(RandomScsc, ScalarCase) {
  const ProblemSpec p = make_random_scsc(1, 1, 1.0, 1.0, v({0}));
  EXPECT_NEAR(p.B.affine_form()->M(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(p.B.affine_form()->b[0], 0.0, 1e-12);
}

TEST(RandomScsc, RejectsZeroMu) { EXPECT_THROW(make_random_scsc(1, 2, 1.0, 0.0), Error); }

TEST(RandomScsc, RejectsMuAboveL) {
  EXPECT_EQ(code_of([] { make_random_scsc(1, 3, 1.0, 2.0); }), ErrorCode::InfeasibleConstants);
}

TEST(RandomScsc, ConstantsByEigensolve) {
  const Vec e1 = v({1, 0, 0, 0});
  const ProblemSpec p = make_random_scsc(42, 4, 10.0, 1.0, e1);
  const Mat& M = p.B.affine_form()->M;
  const Eigen::SelfAdjointEigenSolver<Mat> sym((M + M.transpose()) / 2);
  EXPECT_NEAR(sym.eigenvalues().minCoeff(), 1.0, 1e-9);
  EXPECT_NEAR(Eigen::JacobiSVD<Mat>(M).singularValues()(0), 10.0, 1e-9);
  EXPECT_LE((M * e1 + p.B.affine_form()->b).norm(), 1e-12);
}

TEST(RandomMonotoneAffine, DeterministicUnderSeed) {
  const ProblemSpec a = make_random_monotone_affine(17, 6, 3.0, 0.5);
  const ProblemSpec b = make_random_monotone_affine(17, 6, 3.0, 0.5);
  EXPECT_EQ(a.B.affine_form()->M, b.B.affine_form()->M);
  EXPECT_EQ(a.B.affine_form()->b, b.B.affine_form()->b);
  const ProblemSpec c = make_random_monotone_affine(18, 6, 3.0, 0.5);
  EXPECT_NE(a.B.affine_form()->M, c.B.affine_form()->M);
}

TEST(RandomMonotoneAffine, RankDeficientZeroSet) {
  const ProblemSpec p = make_random_monotone_affine(2, 6, 1.0, 0.0, std::nullopt, 3);
  const Vec z0 = random_point(5, 6);
  const Vec proj = project_onto_zero_set(p, z0);
  EXPECT_LE(eval(p.B, proj).norm(), 1e-12);
  // z0 - proj is orthogonal to the kernel of M
  const Mat& M = p.B.affine_form()->M;
  const Eigen::FullPivLU<Mat> lu(M);
  const Mat K = lu.kernel();
  EXPECT_EQ(K.cols(), 3);
  EXPECT_LE((K.transpose() * (z0 - proj)).norm(), 1e-10);
}

TEST(KnownSolutions, ResidualBelowTolerance) {
  for (int seed = 1; seed <= 10; ++seed) {
    const ProblemSpec p = make_random_scsc(seed, 5, 4.0, 0.3);
    ASSERT_TRUE(p.known_solution);
    EXPECT_LE(eval(p.B, *p.known_solution).norm(), 1e-9);
  }
}

TEST(Figure1, ValuesAndGradient) {
  const ProblemSpec p = make_figure1();
  EXPECT_EQ(*p.default_start, v({-2, 3}));
  EXPECT_DOUBLE_EQ(p.objective->value(v({-2, 3})), 16.0 / 3.0);
  const Vec g = eval(p.B, v({-2, 3}));
  EXPECT_DOUBLE_EQ(g[0], -16.0 / 3.0);
  EXPECT_DOUBLE_EQ(g[1], -16.0 / 9.0);
  EXPECT_EQ(eval(p.B, v({0, 0.7})), v({0, 0}));
  EXPECT_EQ(p.step_defaults.at("AGM"), 0.025);
  EXPECT_EQ(p.step_defaults.at("anchored"), 0.1);
}

TEST(Figure1, GradientMatchesFiniteDifferences) {
  const ProblemSpec p = make_figure1();
  const double h = 1e-6;
  for (int s = 0; s < 100; ++s) {
    const Vec r = random_point(700 + s, 2);
    const Vec z = v({2.0 * std::tanh(r[0]), 1.0 + 4.0 / (1.0 + std::exp(-r[1]))});
    Vec fd(2);
    for (Index i = 0; i < 2; ++i) {
      Vec zp = z;
      Vec zm = z;
      zp[i] += h;
      zm[i] -= h;
      fd[i] = (p.objective->value(zp) - p.objective->value(zm)) / (2 * h);
    }
    const Vec g = eval(p.B, z);
    EXPECT_LE((g - fd).norm(), 1e-5 * std::max(1.0, g.norm()));
  }
}

TEST(Composite, ZeroProxReducesToSmoothProblem) {
  const ProblemSpec smooth = make_bilinear(m1(2), v({1}), v({-1}));
  const ProblemSpec p = make_composite(ProxZero{}, ProxZero{}, smooth);
  ASSERT_TRUE(p.composite());
  const Vec z = v({0.3, 0.8});
  EXPECT_LE((forward_backward_residual(*p.A, p.B, 0.5, z) - eval(smooth.B, z)).norm(), 1e-15);
  ASSERT_TRUE(p.known_solution);
  EXPECT_LE((*p.known_solution - *smooth.known_solution).norm(), 1e-12);
}

TEST(Composite, BoxBilinearSolvedAtOrigin) {
  const ProblemSpec p = make_composite(ProxBox{v({0}), v({1})}, ProxBox{v({0}), v({1})}, make_bilinear(m1(1), v({0}), v({0})));
  ASSERT_TRUE(p.known_solution);
  EXPECT_LE(p.known_solution->norm(), 1e-12);
  EXPECT_LE(forward_backward_residual(*p.A, p.B, 0.5, v({0, 0})).norm(), 1e-9);
}

TEST(Composite, L1OnXWithStronglyMonotoneSmoothPart) {
  // B(x, y) = (x - 2, y), f = |x|: the solution soft-thresholds 2 by 1, so x* = 1, y* = 0
  Mat M = Mat::Identity(2, 2);
  const ProblemSpec smooth = make_affine(M, v({-2, 0}));
  const ProblemSpec p = make_composite(ProxL1{1.0}, ProxZero{}, smooth, 1);
  ASSERT_TRUE(p.known_solution);
  // bisection oracle for 0 in x - 2 + sign(x) on x > 0
  double lo = 0.0;
  double hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (mid - 2.0 + 1.0 > 0 ? hi : lo) = mid;
  }
  EXPECT_NEAR((*p.known_solution)[0], lo, 1e-9);
  EXPECT_NEAR((*p.known_solution)[1], 0.0, 1e-9);
  EXPECT_LE(problem_residual(p, *p.known_solution, 0.5), 1e-9);
}

TEST(RandomPoint, DeterministicAndScaled) {
  EXPECT_EQ(random_point(3, 5), random_point(3, 5));
  EXPECT_EQ(random_point(3, 5, 2.0), 2.0 * random_point(3, 5));
  EXPECT_NE(random_point(3, 5), random_point(4, 5));
}
