#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mergepath/prox.hpp"
#include "mergepath/types.hpp"

namespace mergepath {

enum class OperatorKind {
  Affine,
  GradientField,
  SaddleOperator,
  ShiftedIdentityPlus,
  Sum,
  Scaled,
  Zero,
  Subdifferential,
};

enum class ResolventCapability { ExactAffine, ExactProx, Iterative, None };

// Convex objective f: R^d -> R, possibly defined only on an open domain.
struct SmoothFunction {
  Index dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  // Empty means the whole space.
  std::function<bool(const Vec&)> in_domain;
  std::string domain_description;
};

// Convex-concave L(x, y) with x in R^n, y in R^m.
struct SaddleFunction {
  Index n = 0;
  Index m = 0;
  std::function<double(const Vec&, const Vec&)> value;
  std::function<Vec(const Vec&, const Vec&)> grad_x;
  std::function<Vec(const Vec&, const Vec&)> grad_y;
  std::function<bool(const Vec&, const Vec&)> in_domain;
  std::string domain_description;
};

// z -> M z + b
struct AffineForm {
  Mat M;
  Vec b;
};

// Immutable monotone operator handle. Copies share the underlying node.
// Lipschitz and strong-monotonicity constants are metadata: exact for affine
// operators, supplied by the caller otherwise.
class Operator {
 public:
  // L and mu are computed exactly from M; throws InvalidArgument if M is not monotone.
  static Operator affine(Mat M, Vec b);
  static Operator zero(Index dim);
  static Operator gradient_field(std::shared_ptr<const SmoothFunction> f, double L, double mu);
  // z = (x, y) -> (grad_x L, -grad_y L)
  static Operator saddle(std::shared_ptr<const SaddleFunction> f, double L, double mu);
  // z -> z + alpha * base(z) - xi
  static Operator shifted_identity_plus(const Operator& base, double alpha, Vec xi);
  static Operator sum(const std::vector<Operator>& terms);
  static Operator scaled(double factor, const Operator& base);
  // Maximal monotone operator known only through its resolvent (a block prox).
  static Operator subdifferential(BlockProx prox);

  OperatorKind kind() const;
  Index dim() const;
  double lipschitz() const;
  double strong_monotonicity() const;
  ResolventCapability resolvent_capability() const;
  bool forward_evaluable() const;
  // Set whenever the operator is affine (including Zero and affine combinations).
  const AffineForm* affine_form() const;
  const BlockProx* block_prox() const;
  // True when z lies in the operator's domain (always true for full-space operators).
  bool in_domain(const Vec& z) const;

  // Throws DimensionMismatch, DomainViolation, NotForwardEvaluable.
  Vec operator()(const Vec& z) const;

  struct Node;

 private:
  explicit Operator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Vec eval(const Operator& op, const Vec& z) { return op(z); }

struct ResolventOptions {
  double tolerance = 1e-12;
  // Defaults to ceil(10 (1 + alpha L) ln(1/tolerance)) for the iterative path.
  std::optional<long> max_inner_iterations;
};

struct ResolventOutput {
  Vec point;
  long forward_evaluations = 0;
  long inner_iterations = 0;
};

// J_{alpha op} = (I + alpha op)^{-1}, prepared once for repeated application.
// Affine operators use a cached LU factorization, subdifferentials their prox,
// and other forward-evaluable operators an inner strongly monotone solve on
// u -> u + alpha op(u) - z started at z.
class Resolvent {
 public:
  Resolvent(Operator op, double alpha, ResolventOptions options = {});

  Vec operator()(const Vec& z) const { return apply(z).point; }
  ResolventOutput apply(const Vec& z) const;

  const Operator& op() const { return op_; }
  double alpha() const { return alpha_; }
  long inner_budget() const { return budget_; }

 private:
  Operator op_;
  double alpha_;
  ResolventOptions options_;
  long budget_ = 0;
  std::shared_ptr<const Eigen::PartialPivLU<Mat>> lu_;
};

Vec resolvent(const Operator& op, double alpha, const Vec& z, const ResolventOptions& options = {});

}  // namespace mergepath
