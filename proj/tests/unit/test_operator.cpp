#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "mergepath/error.hpp"
#include "mergepath/operator.hpp"
#include "mergepath/problem.hpp"
#include "mergepath/prox.hpp"
#include "mergepath/residuals.hpp"

using namespace mergepath;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

Mat rotation() {
  Mat M(2, 2);
  M << 0, 1, -1, 0;
  return M;
}

Operator identity(Index d) { return Operator::affine(Mat::Identity(d, d), Vec::Zero(d)); }

Operator box_operator(Vec lo, Vec hi) {
  const Index n = lo.size();
  return Operator::subdifferential(BlockProx{ProxBox{std::move(lo), std::move(hi)}, ProxZero{}, n, 0});
}

// L(x, y) = sum log cosh x + x'A y - sum log cosh y, L = 2 once ||A|| = 1
Operator logcosh_saddle(std::uint64_t seed, Index n, Mat* coupling = nullptr) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat A(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) A(i, j) = normal(rng);
  A /= Eigen::JacobiSVD<Mat>(A).singularValues()(0);
  if (coupling) *coupling = A;
  auto f = std::make_shared<SaddleFunction>();
  f->n = n;
  f->m = n;
  f->value = [A](const Vec& x, const Vec& y) {
    return x.array().cosh().log().sum() + x.dot(A * y) - y.array().cosh().log().sum();
  };
  f->grad_x = [A](const Vec& x, const Vec& y) -> Vec { return x.array().tanh().matrix() + A * y; };
  f->grad_y = [A](const Vec& x, const Vec& y) -> Vec { return A.transpose() * x - y.array().tanh().matrix(); };
  return Operator::saddle(f, 2.0, 0.0);
}

}  // namespace

TEST(Eval, ZeroOperator) { EXPECT_EQ(eval(Operator::zero(2), v({3, -1})), v({0, 0})); }

TEST(Eval, AffineRotation) { EXPECT_EQ(eval(Operator::affine(rotation(), Vec::Zero(2)), v({1, 0})), v({0, -1})); }

TEST(Eval, BilinearSaddleOperator) {
  auto f = std::make_shared<SaddleFunction>();
  f->n = 1;
  f->m = 1;
  f->value = [](const Vec& x, const Vec& y) { return x[0] * y[0]; };
  f->grad_x = [](const Vec&, const Vec& y) -> Vec { return y; };
  f->grad_y = [](const Vec& x, const Vec&) -> Vec { return x; };
  const Operator B = Operator::saddle(f, 1.0, 0.0);
  EXPECT_EQ(eval(B, v({2, 3})), v({3, -2}));
  // central differences of L at (2, 3)
  const double h = 1e-6;
  const double dx = (f->value(v({2 + h}), v({3})) - f->value(v({2 - h}), v({3}))) / (2 * h);
  const double dy = (f->value(v({2}), v({3 + h})) - f->value(v({2}), v({3 - h}))) / (2 * h);
  EXPECT_NEAR(dx, 3.0, 1e-8);
  EXPECT_NEAR(-dy, -2.0, 1e-8);
}

TEST(Eval, DimensionMismatchThrows) {
  try {
    eval(Operator::zero(2), v({1, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Eval, Figure1DomainViolation) {
  const ProblemSpec p = make_figure1();
  try {
    eval(p.B, v({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
  }
  EXPECT_FALSE(p.B.in_domain(v({1, -1})));
}

TEST(Eval, SubdifferentialIsNotForwardEvaluable) {
  const Operator A = box_operator(v({0}), v({1}));
  EXPECT_FALSE(A.forward_evaluable());
  try {
    eval(A, v({0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotForwardEvaluable);
  }
}

TEST(Operator, AffineRejectsNonMonotoneMatrix) {
  Mat M(2, 2);
  M << -1, 0, 0, 1;
  EXPECT_THROW(Operator::affine(M, Vec::Zero(2)), Error);
}

TEST(Operator, ShiftedIdentityPlusConstants) {
  const ProblemSpec p = make_random_scsc(5, 4, 10.0, 2.0);
  const Operator S = Operator::shifted_identity_plus(p.B, 0.3, Vec::Ones(4));
  EXPECT_NEAR(S.strong_monotonicity(), 1.0 + 0.3 * 2.0, 1e-9);
  EXPECT_NEAR(S.lipschitz(), 1.0 + 0.3 * 10.0, 1e-9);
}

TEST(Resolvent, ZeroIsIdentity) {
  const Vec z = v({0.3, -7});
  EXPECT_EQ(resolvent(Operator::zero(2), 2.5, z), z);
}

TEST(Resolvent, AffineRotation) {
  const Vec u = resolvent(Operator::affine(rotation(), Vec::Zero(2)), 1.0, v({1, 0}));
  // oracle: (I + M)^{-1} (1, 0) by Cramer's rule on [[1, 1], [-1, 1]]
  EXPECT_NEAR(u[0], 0.5, 1e-15);
  EXPECT_NEAR(u[1], 0.5, 1e-15);
}

TEST(Resolvent, ScalarIdentity) { EXPECT_NEAR(resolvent(identity(1), 1.0, v({1}))[0], 0.5, 1e-15); }

TEST(Resolvent, NoCapabilityForMixedSum) {
  const Operator S = Operator::sum({box_operator(v({0}), v({1})), identity(1)});
  EXPECT_EQ(S.resolvent_capability(), ResolventCapability::None);
  try {
    resolvent(S, 1.0, v({0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoResolventCapability);
  }
}

TEST(Resolvent, IterativeMatchesResolventIdentity) {
  const Operator B = logcosh_saddle(3, 3);
  ASSERT_EQ(B.resolvent_capability(), ResolventCapability::Iterative);
  const Vec z = random_point(8, 6, 2.0);
  const double alpha = 0.4;
  const Vec u = resolvent(B, alpha, z);
  EXPECT_LE((u + alpha * eval(B, u) - z).norm(), 1e-12);
}

TEST(Resolvent, IterativeBudgetExceeded) {
  const Operator B = logcosh_saddle(3, 3);
  ResolventOptions opt;
  opt.max_inner_iterations = 1;
  try {
    resolvent(B, 0.4, random_point(8, 6, 2.0), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InnerLoopBudgetExceeded);
  }
}

TEST(Resolvent, DefaultInnerBudget) {
  const Resolvent J(logcosh_saddle(3, 3), 0.5);
  EXPECT_EQ(J.inner_budget(), static_cast<long>(std::ceil(10.0 * 2.0 * std::log(1e12))));
}

TEST(Prox, BoxClamps) {
  EXPECT_EQ(prox(ProxBox{v({0, 0}), v({1, 1})}, 0.3, v({2, -0.5})), v({1, 0}));
}

TEST(Prox, L1SoftThreshold) {
  const Vec p = prox(ProxL1{1.0}, 0.5, v({2, -0.2}));
  EXPECT_DOUBLE_EQ(p[0], 1.5);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  // grid-search oracle on the 1D objective |u| + (u - x)^2 / (2 alpha)
  for (double x : {2.0, -0.2}) {
    double best = 0.0;
    double best_val = INFINITY;
    for (int i = -40000; i <= 40000; ++i) {
      const double u = i * 1e-4;
      const double val = std::abs(u) + (u - x) * (u - x) / (2 * 0.5);
      if (val < best_val) {
        best_val = val;
        best = u;
      }
    }
    EXPECT_NEAR(prox(ProxL1{1.0}, 0.5, v({x}))[0], best, 1e-4);
  }
}

TEST(Prox, ZeroIsIdentity) { EXPECT_EQ(prox(ProxZero{}, 3.0, v({1, 2})), v({1, 2})); }

TEST(Prox, BallProjection) {
  const Vec p = prox(ProxBall{v({0, 0}), 1.0}, 1.0, v({3, 4}));
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
}

TEST(Prox, QuadraticSolvesLinearSystem) {
  Mat Q(2, 2);
  Q << 2, 0, 0, 4;
  const Vec p = prox(ProxQuadratic{Q, v({1, -1})}, 0.5, v({1, 1}));
  // (I + a Q) u = x - a c
  EXPECT_NEAR(p[0], (1 - 0.5) / 2.0, 1e-15);
  EXPECT_NEAR(p[1], (1 + 0.5) / 3.0, 1e-15);
}

TEST(Prox, InvalidSpecsRejected) {
  EXPECT_THROW(validate_prox(ProxBox{v({1}), v({0})}, 1), Error);
  Mat Q(2, 2);
  Q << 1, 2, 0, 1;
  EXPECT_THROW(validate_prox(ProxQuadratic{Q, Vec::Zero(2)}, 2), Error);
  EXPECT_THROW(validate_prox(ProxL1{-1.0}, 2), Error);
}

TEST(ForwardBackwardResidual, ZeroAReducesToB) {
  const Operator B = Operator::affine(rotation(), v({1, 2}));
  const Vec z = v({0.3, -0.4});
  EXPECT_LE((forward_backward_residual(Operator::zero(2), B, 0.7, z) - eval(B, z)).norm(), 1e-15);
}

TEST(ForwardBackwardResidual, ZeroBInsideBox) {
  const Vec G = forward_backward_residual(box_operator(v({0, 0}), v({1, 1})), Operator::zero(2), 0.5, v({0.2, 0.9}));
  EXPECT_EQ(G, v({0, 0}));
}

TEST(ForwardBackwardResidual, BoxWithIdentity) {
  const Vec G = forward_backward_residual(box_operator(v({0}), v({1})), identity(1), 0.5, v({0.4}));
  EXPECT_NEAR(G[0], 0.4, 1e-15);
}

TEST(DrsOperator, ZeroAGivesResolventOfB) {
  const Operator B = Operator::affine(rotation(), v({0.5, 0}));
  const Vec u = v({1, -2});
  EXPECT_LE((drs_operator(Operator::zero(2), B, 0.8, u) - resolvent(B, 0.8, u)).norm(), 1e-15);
}

TEST(DrsOperator, ZeroBGivesResolventOfA) {
  const Operator A = box_operator(v({0, 0}), v({1, 1}));
  const Vec u = v({1.5, -2});
  EXPECT_EQ(drs_operator(A, Operator::zero(2), 0.8, u), resolvent(A, 0.8, u));
}

TEST(DrsOperator, ScalarIdentities) { EXPECT_NEAR(drs_operator(identity(1), identity(1), 1.0, v({1}))[0], 0.5, 1e-15); }

// Sampled invariants over random operators.

class OperatorProperties : public ::testing::TestWithParam<int> {};

TEST_P(OperatorProperties, MonotoneLipschitzNonexpansive) {
  const int seed = GetParam();
  const ProblemSpec scsc = make_random_scsc(seed, 5, 7.0, 0.5);
  const ProblemSpec mono = make_random_monotone_affine(seed, 5, 3.0, 0.0);
  const Operator nonlinear = logcosh_saddle(seed, 3);
  std::mt19937_64 rng(1000 + seed);
  std::normal_distribution<double> normal;
  auto point = [&](Index d) {
    Vec z(d);
    for (Index i = 0; i < d; ++i) z[i] = 3.0 * normal(rng);
    return z;
  };
  for (const Operator* op : {&scsc.B, &mono.B, &nonlinear}) {
    const double alpha = 0.5 / op->lipschitz();
    const Resolvent J(*op, alpha);
    for (int i = 0; i < 100; ++i) {
      const Vec z = point(op->dim());
      const Vec w = point(op->dim());
      const Vec Bz = eval(*op, z);
      const Vec Bw = eval(*op, w);
      const double d2 = (z - w).squaredNorm();
      EXPECT_GE((Bz - Bw).dot(z - w), op->strong_monotonicity() * d2 - 1e-9);
      EXPECT_LE((Bz - Bw).norm(), op->lipschitz() * std::sqrt(d2) + 1e-9);
      const Vec Jz = J(z);
      const Vec Jw = J(w);
      EXPECT_LE((Jz - Jw).norm(), std::sqrt(d2) + 1e-9);
      EXPECT_LE((z - Jz - alpha * eval(*op, Jz)).norm(), 1e-9);
      // ||u - J u|| <= alpha / (1 - alpha L) ||B u||
      EXPECT_LE((z - Jz).norm(), alpha / (1 - alpha * op->lipschitz()) * Bz.norm() + 1e-9);
    }
  }
}

TEST_P(OperatorProperties, ForwardBackwardInequality) {
  const int seed = GetParam();
  const ProblemSpec p = make_random_monotone_affine(seed, 4, 2.0, 0.0);
  const Operator A4 = Operator::subdifferential(
      BlockProx{ProxBox{Vec::Constant(2, -0.5), Vec::Constant(2, 0.5)}, ProxL1{0.3}, 2, 2});
  const double alpha = 0.25;
  for (int i = 0; i < 100; ++i) {
    const Vec a = random_point(10 * seed + i, 4, 2.0);
    const Vec b = random_point(10 * seed + i + 5000, 4, 2.0);
    const Vec dG = forward_backward_residual(A4, p.B, alpha, a) - forward_backward_residual(A4, p.B, alpha, b);
    const Vec dS = (a + alpha * eval(p.B, a)) - (b + alpha * eval(p.B, b));
    EXPECT_GE(dG.dot(dS), alpha * dG.squaredNorm() - 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OperatorProperties, ::testing::Range(1, 6));

TEST(SaddleOperator, MatchesCentralDifferences) {
  Mat A;
  const Operator B = logcosh_saddle(11, 3, &A);
  auto value = [&A](const Vec& z) {
    const Vec x = z.head(3);
    const Vec y = z.tail(3);
    return x.array().cosh().log().sum() + x.dot(A * y) - y.array().cosh().log().sum();
  };
  const double h = 1e-6;
  for (int s = 0; s < 100; ++s) {
    const Vec z = random_point(300 + s, 6);
    const Vec Bz = eval(B, z);
    Vec fd(6);
    for (Index i = 0; i < 6; ++i) {
      Vec zp = z;
      Vec zm = z;
      zp[i] += h;
      zm[i] -= h;
      fd[i] = (value(zp) - value(zm)) / (2 * h);
    }
    fd.tail(3) *= -1.0;
    EXPECT_LE((Bz - fd).norm(), 1e-5 * std::max(1.0, Bz.norm()));
  }
}
