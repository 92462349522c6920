#include "mergepath/residuals.hpp"

#include "mergepath/error.hpp"

namespace mergepath {

Vec forward_backward_residual(const Operator& A, const Operator& B, double alpha, const Vec& z,
                              const ResolventOptions& options) {
  if (A.dim() != B.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  Resolvent JA(A, alpha, options);
  return (z - JA(z - alpha * B(z))) / alpha;
}

Vec drs_operator(const Operator& A, const Operator& B, double alpha, const Vec& u,
                 const ResolventOptions& options) {
  if (A.dim() != B.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  Resolvent JA(A, alpha, options);
  Resolvent JB(B, alpha, options);
  const Vec w = JB(u);
  return u - w + JA(2.0 * w - u);
}

}  // namespace mergepath
