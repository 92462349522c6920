#include "mergepath/prox.hpp"

#include <cmath>
#include <string>

#include "mergepath/error.hpp"

namespace mergepath {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "prox parameter must be positive and finite");
  }
}

}  // namespace

std::optional<Index> prox_dimension(const ProxSpec& spec) {
  return std::visit(Overloaded{
                        [](const ProxZero&) -> std::optional<Index> { return std::nullopt; },
                        [](const ProxBox& b) -> std::optional<Index> { return b.lower.size(); },
                        [](const ProxBall& b) -> std::optional<Index> { return b.center.size(); },
                        [](const ProxL1&) -> std::optional<Index> { return std::nullopt; },
                        [](const ProxQuadratic& q) -> std::optional<Index> { return q.Q.rows(); },
                    },
                    spec);
}

void validate_prox(const ProxSpec& spec, Index d) {
  if (auto fixed = prox_dimension(spec); fixed && *fixed != d) {
    throw Error(ErrorCode::DimensionMismatch, "prox block has dimension " + std::to_string(*fixed) +
                                                  ", expected " + std::to_string(d));
  }
  std::visit(Overloaded{
                 [](const ProxZero&) {},
                 [](const ProxBox& b) {
                   if (b.lower.size() != b.upper.size()) {
                     throw Error(ErrorCode::DimensionMismatch, "box bounds differ in size");
                   }
                   for (Index i = 0; i < b.lower.size(); ++i) {
                     if (std::isnan(b.lower[i]) || std::isnan(b.upper[i]) || b.lower[i] > b.upper[i]) {
                       throw Error(ErrorCode::InvalidArgument, "box requires lower <= upper");
                     }
                   }
                 },
                 [](const ProxBall& b) {
                   if (!(b.radius >= 0.0) || !b.center.allFinite()) {
                     throw Error(ErrorCode::InvalidArgument, "ball requires finite center and radius >= 0");
                   }
                 },
                 [](const ProxL1& l) {
                   if (!(l.weight >= 0.0) || !std::isfinite(l.weight)) {
                     throw Error(ErrorCode::InvalidArgument, "l1 weight must be finite and >= 0");
                   }
                 },
                 [](const ProxQuadratic& q) {
                   if (q.Q.rows() != q.Q.cols() || q.c.size() != q.Q.rows()) {
                     throw Error(ErrorCode::DimensionMismatch, "quadratic prox needs square Q and matching c");
                   }
                   if (!(q.Q - q.Q.transpose()).isZero(1e-12 * (1.0 + q.Q.norm()))) {
                     throw Error(ErrorCode::InvalidArgument, "quadratic prox needs symmetric Q");
                   }
                   Eigen::SelfAdjointEigenSolver<Mat> eig(q.Q, Eigen::EigenvaluesOnly);
                   if (q.Q.rows() > 0 && eig.eigenvalues()(0) < -1e-12 * (1.0 + q.Q.norm())) {
                     throw Error(ErrorCode::InvalidArgument, "quadratic prox needs positive semidefinite Q");
                   }
                 },
             },
             spec);
}

Vec prox(const ProxSpec& spec, double alpha, const Vec& x) {
  require_alpha(alpha);
  if (auto fixed = prox_dimension(spec)) require_dimension(x, *fixed, "prox argument");
  return std::visit(Overloaded{
                        [&](const ProxZero&) -> Vec { return x; },
                        [&](const ProxBox& b) -> Vec { return x.cwiseMax(b.lower).cwiseMin(b.upper); },
                        [&](const ProxBall& b) -> Vec {
                          Vec d = x - b.center;
                          const double r = d.norm();
                          if (r <= b.radius) return x;
                          return b.center + (b.radius / r) * d;
                        },
                        [&](const ProxL1& l) -> Vec {
                          const double t = alpha * l.weight;
                          Vec out(x.size());
                          for (Index i = 0; i < x.size(); ++i) {
                            const double a = std::abs(x[i]) - t;
                            out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
                          }
                          return out;
                        },
                        [&](const ProxQuadratic& q) -> Vec {
                          Mat lhs = Mat::Identity(q.Q.rows(), q.Q.cols()) + alpha * q.Q;
                          return lhs.llt().solve(x - alpha * q.c);
                        },
                    },
                    spec);
}

Vec prox(const BlockProx& spec, double alpha, const Vec& z) {
  require_dimension(z, spec.n + spec.m, "block prox argument");
  Vec out(z.size());
  if (spec.n > 0) out.head(spec.n) = prox(spec.f, alpha, z.head(spec.n));
  if (spec.m > 0) out.tail(spec.m) = prox(spec.g, alpha, z.tail(spec.m));
  return out;
}

}  // namespace mergepath
