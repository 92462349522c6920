#include "mergepath/shifted_solve.hpp"

#include <cmath>
#include <limits>

#include "mergepath/error.hpp"

namespace mergepath {

double sm_eag_max_step(double L, double mu) {
  if (L <= 0.0) return std::numeric_limits<double>::infinity();
  return (std::sqrt(L * L + mu * mu) + mu) / (L * L);
}

ShiftedSolveResult solve_shifted_identity(const Operator& B, double alpha, const Vec& xi, double tol,
                                          long max_iterations) {
  require_dimension(xi, B.dim(), "shift point");
  const double Lp = 1.0 + alpha * B.lipschitz();
  const double a = sm_eag_max_step(Lp, 1.0);
  GeometricAnchor anchor(1.0 + 2.0 * a);

  ShiftedSolveResult out;
  Vec z = xi;
  for (long k = 0;; ++k) {
    Vec Bz = B(z);
    ++out.forward_evaluations;
    Vec F = z + alpha * Bz - xi;
    out.residual = F.norm();
    if (out.residual <= tol || k == max_iterations) {
      out.converged = out.residual <= tol;
      out.iterations = k;
      out.z = std::move(z);
      out.Bz = std::move(Bz);
      return out;
    }
    const double beta = anchor.beta();
    const double eta = anchor.eta();
    Vec half = beta * xi + (1.0 - beta) * z - (eta * a) * F;
    Vec Bh = B(half);
    ++out.forward_evaluations;
    Vec Fh = half + alpha * Bh - xi;
    z = beta * xi + (1.0 - beta) * z - a * Fh;
    anchor.advance();
  }
}

}  // namespace mergepath
