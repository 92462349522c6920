#include "mergepath/operator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mergepath/error.hpp"
#include "mergepath/shifted_solve.hpp"

namespace mergepath {

struct Operator::Node {
  OperatorKind kind = OperatorKind::Zero;
  Index dim = 0;
  double L = 0.0;
  double mu = 0.0;
  bool forward = true;
  std::optional<AffineForm> affine;
  std::shared_ptr<const SmoothFunction> smooth;
  std::shared_ptr<const SaddleFunction> saddle;
  std::vector<Operator> children;
  double factor = 1.0;
  Vec shift;
  std::optional<BlockProx> prox;
};

namespace {

void require_finite_constant(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

Operator Operator::affine(Mat M, Vec b) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "affine operator needs a square matrix");
  if (M.rows() == 0) throw Error(ErrorCode::InvalidArgument, "affine operator needs dimension >= 1");
  require_dimension(b, M.rows(), "affine offset");
  if (!M.allFinite() || !b.allFinite()) throw Error(ErrorCode::InvalidArgument, "affine operator has non-finite data");

  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::Affine;
  node->dim = M.rows();
  Eigen::JacobiSVD<Mat> svd(M);
  node->L = svd.singularValues()(0);
  Mat sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(sym, Eigen::EigenvaluesOnly);
  const double lam = eig.eigenvalues()(0);
  const double slack = 1e-10 * std::max(1.0, node->L);
  if (lam < -slack) {
    throw Error(ErrorCode::InvalidArgument,
                "affine operator is not monotone (min eigenvalue of symmetric part " + std::to_string(lam) + ")");
  }
  node->mu = std::max(0.0, lam);
  node->affine = AffineForm{std::move(M), std::move(b)};
  return Operator(std::move(node));
}

Operator Operator::zero(Index dim) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "zero operator needs dimension >= 1");
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::Zero;
  node->dim = dim;
  node->affine = AffineForm{Mat::Zero(dim, dim), Vec::Zero(dim)};
  return Operator(std::move(node));
}

Operator Operator::gradient_field(std::shared_ptr<const SmoothFunction> f, double L, double mu) {
  if (!f || !f->gradient || f->dim <= 0) throw Error(ErrorCode::InvalidArgument, "gradient field needs a gradient");
  require_finite_constant(L, "Lipschitz constant");
  require_finite_constant(mu, "strong monotonicity constant");
  if (mu > L) throw Error(ErrorCode::InfeasibleConstants, "mu exceeds L");
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::GradientField;
  node->dim = f->dim;
  node->L = L;
  node->mu = mu;
  node->smooth = std::move(f);
  return Operator(std::move(node));
}

Operator Operator::saddle(std::shared_ptr<const SaddleFunction> f, double L, double mu) {
  if (!f || !f->grad_x || !f->grad_y || f->n + f->m <= 0) {
    throw Error(ErrorCode::InvalidArgument, "saddle operator needs both partial gradients");
  }
  require_finite_constant(L, "Lipschitz constant");
  require_finite_constant(mu, "strong monotonicity constant");
  if (mu > L) throw Error(ErrorCode::InfeasibleConstants, "mu exceeds L");
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::SaddleOperator;
  node->dim = f->n + f->m;
  node->L = L;
  node->mu = mu;
  node->saddle = std::move(f);
  return Operator(std::move(node));
}

Operator Operator::shifted_identity_plus(const Operator& base, double alpha, Vec xi) {
  require_dimension(xi, base.dim(), "shift");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "shift step must be positive");
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::ShiftedIdentityPlus;
  node->dim = base.dim();
  node->L = 1.0 + alpha * base.lipschitz();
  node->mu = 1.0 + alpha * base.strong_monotonicity();
  node->forward = base.forward_evaluable();
  node->factor = alpha;
  if (const AffineForm* a = base.affine_form()) {
    node->affine = AffineForm{Mat::Identity(node->dim, node->dim) + alpha * a->M, alpha * a->b - xi};
  }
  node->shift = std::move(xi);
  node->children = {base};
  return Operator(std::move(node));
}

Operator Operator::sum(const std::vector<Operator>& terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "sum needs at least one term");
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::Sum;
  node->dim = terms.front().dim();
  bool all_affine = true;
  for (const auto& t : terms) {
    if (t.dim() != node->dim) throw Error(ErrorCode::DimensionMismatch, "sum terms differ in dimension");
    node->L += t.lipschitz();
    node->mu += t.strong_monotonicity();
    node->forward = node->forward && t.forward_evaluable();
    all_affine = all_affine && t.affine_form() != nullptr;
  }
  if (all_affine) {
    AffineForm acc{Mat::Zero(node->dim, node->dim), Vec::Zero(node->dim)};
    for (const auto& t : terms) {
      acc.M += t.affine_form()->M;
      acc.b += t.affine_form()->b;
    }
    node->affine = std::move(acc);
  }
  node->children = terms;
  return Operator(std::move(node));
}

Operator Operator::scaled(double factor, const Operator& base) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidArgument, "scale factor must be finite and nonnegative");
  }
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::Scaled;
  node->dim = base.dim();
  node->L = factor * base.lipschitz();
  node->mu = factor * base.strong_monotonicity();
  node->forward = base.forward_evaluable();
  node->factor = factor;
  if (const AffineForm* a = base.affine_form()) node->affine = AffineForm{factor * a->M, factor * a->b};
  node->children = {base};
  return Operator(std::move(node));
}

Operator Operator::subdifferential(BlockProx prox) {
  if (prox.n < 0 || prox.m < 0 || prox.n + prox.m <= 0) {
    throw Error(ErrorCode::InvalidArgument, "block prox needs a positive total dimension");
  }
  if (prox.n > 0) validate_prox(prox.f, prox.n);
  if (prox.m > 0) validate_prox(prox.g, prox.m);
  auto node = std::make_shared<Node>();
  node->kind = OperatorKind::Subdifferential;
  node->dim = prox.n + prox.m;
  node->L = std::numeric_limits<double>::infinity();
  node->forward = false;
  node->prox = std::move(prox);
  return Operator(std::move(node));
}

OperatorKind Operator::kind() const { return node_->kind; }
Index Operator::dim() const { return node_->dim; }
double Operator::lipschitz() const { return node_->L; }
double Operator::strong_monotonicity() const { return node_->mu; }
bool Operator::forward_evaluable() const { return node_->forward; }
const AffineForm* Operator::affine_form() const { return node_->affine ? &*node_->affine : nullptr; }
const BlockProx* Operator::block_prox() const { return node_->prox ? &*node_->prox : nullptr; }

ResolventCapability Operator::resolvent_capability() const {
  if (node_->affine) return ResolventCapability::ExactAffine;
  if (node_->prox) return ResolventCapability::ExactProx;
  if (node_->forward && std::isfinite(node_->L)) return ResolventCapability::Iterative;
  return ResolventCapability::None;
}

bool Operator::in_domain(const Vec& z) const {
  const Node& n = *node_;
  switch (n.kind) {
    case OperatorKind::GradientField:
      return !n.smooth->in_domain || n.smooth->in_domain(z);
    case OperatorKind::SaddleOperator:
      return !n.saddle->in_domain || n.saddle->in_domain(z.head(n.saddle->n), z.tail(n.saddle->m));
    case OperatorKind::ShiftedIdentityPlus:
    case OperatorKind::Sum:
    case OperatorKind::Scaled:
      for (const auto& c : n.children) {
        if (!c.in_domain(z)) return false;
      }
      return true;
    default:
      return true;
  }
}

Vec Operator::operator()(const Vec& z) const {
  const Node& n = *node_;
  require_dimension(z, n.dim, "operator argument");
  switch (n.kind) {
    case OperatorKind::Zero:
      return Vec::Zero(n.dim);
    case OperatorKind::Affine:
      return n.affine->M * z + n.affine->b;
    case OperatorKind::GradientField: {
      if (n.smooth->in_domain && !n.smooth->in_domain(z)) {
        throw Error(ErrorCode::DomainViolation, "point outside " + n.smooth->domain_description);
      }
      return n.smooth->gradient(z);
    }
    case OperatorKind::SaddleOperator: {
      const Vec x = z.head(n.saddle->n);
      const Vec y = z.tail(n.saddle->m);
      if (n.saddle->in_domain && !n.saddle->in_domain(x, y)) {
        throw Error(ErrorCode::DomainViolation, "point outside " + n.saddle->domain_description);
      }
      Vec out(n.dim);
      if (n.saddle->n > 0) out.head(n.saddle->n) = n.saddle->grad_x(x, y);
      if (n.saddle->m > 0) out.tail(n.saddle->m) = -n.saddle->grad_y(x, y);
      return out;
    }
    case OperatorKind::ShiftedIdentityPlus:
      return z + n.factor * n.children.front()(z) - n.shift;
    case OperatorKind::Sum: {
      Vec out = Vec::Zero(n.dim);
      for (const auto& c : n.children) out += c(z);
      return out;
    }
    case OperatorKind::Scaled:
      return n.factor * n.children.front()(z);
    case OperatorKind::Subdifferential:
      throw Error(ErrorCode::NotForwardEvaluable, "subdifferential operators are accessed through their prox");
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled operator kind");
}

Resolvent::Resolvent(Operator op, double alpha, ResolventOptions options)
    : op_(std::move(op)), alpha_(alpha), options_(options) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "resolvent parameter must be positive and finite");
  }
  switch (op_.resolvent_capability()) {
    case ResolventCapability::ExactAffine: {
      const AffineForm& a = *op_.affine_form();
      if (!a.M.isZero(0.0)) {
        Mat lhs = Mat::Identity(op_.dim(), op_.dim()) + alpha_ * a.M;
        lu_ = std::make_shared<const Eigen::PartialPivLU<Mat>>(lhs);
      }
      break;
    }
    case ResolventCapability::ExactProx:
      break;
    case ResolventCapability::Iterative: {
      if (!(options_.tolerance > 0.0 && options_.tolerance < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "iterative resolvent tolerance must lie in (0, 1)");
      }
      if (options_.max_inner_iterations) {
        budget_ = *options_.max_inner_iterations;
      } else {
        const double raw = 10.0 * (1.0 + alpha_ * op_.lipschitz()) * std::log(1.0 / options_.tolerance);
        budget_ = static_cast<long>(std::ceil(raw));
      }
      if (budget_ <= 0) throw Error(ErrorCode::InvalidArgument, "inner budget must be positive");
      break;
    }
    case ResolventCapability::None:
      throw Error(ErrorCode::NoResolventCapability, "operator has no resolvent path");
  }
}

ResolventOutput Resolvent::apply(const Vec& z) const {
  require_dimension(z, op_.dim(), "resolvent argument");
  ResolventOutput out;
  switch (op_.resolvent_capability()) {
    case ResolventCapability::ExactAffine: {
      const AffineForm& a = *op_.affine_form();
      Vec rhs = z - alpha_ * a.b;
      out.point = lu_ ? Vec(lu_->solve(rhs)) : rhs;
      return out;
    }
    case ResolventCapability::ExactProx:
      out.point = prox(*op_.block_prox(), alpha_, z);
      return out;
    case ResolventCapability::Iterative: {
      ShiftedSolveResult r = solve_shifted_identity(op_, alpha_, z, options_.tolerance, budget_);
      if (!r.converged) {
        throw Error(ErrorCode::InnerLoopBudgetExceeded,
                    "iterative resolvent did not reach tolerance within " + std::to_string(budget_) +
                        " iterations (residual " + std::to_string(r.residual) + ")");
      }
      out.point = std::move(r.z);
      out.forward_evaluations = r.forward_evaluations;
      out.inner_iterations = r.iterations;
      return out;
    }
    case ResolventCapability::None:
      break;
  }
  throw Error(ErrorCode::NoResolventCapability, "operator has no resolvent path");
}

Vec resolvent(const Operator& op, double alpha, const Vec& z, const ResolventOptions& options) {
  return Resolvent(op, alpha, options)(z);
}

}  // namespace mergepath
