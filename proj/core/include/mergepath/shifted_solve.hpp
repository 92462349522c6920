#pragma once

#include "mergepath/operator.hpp"

namespace mergepath {

// Anchor weights of the strongly monotone anchored schedule with ratio
// rho = 1 + 2 a mu:  beta_k = 1 / sum_{j<=k} rho^j,  eta_k = (1 - beta_k) / rho.
// With rho = 1 the weights reduce to beta_k = 1/(k+1), eta_k = 1 - beta_k.
class GeometricAnchor {
 public:
  explicit GeometricAnchor(double rho) : rho_(rho) {}
  double beta() const { return 1.0 / sum_; }
  double eta() const { return (1.0 - beta()) / rho_; }
  double rho() const { return rho_; }
  void advance() { sum_ = 1.0 + rho_ * sum_; }

 private:
  double rho_;
  double sum_ = 1.0;
};

struct ShiftedSolveResult {
  Vec z;
  Vec Bz;  // B evaluated at the returned z
  double residual = 0.0;  // ||z + alpha B z - xi||
  long iterations = 0;
  long forward_evaluations = 0;
  bool converged = false;
};

// Largest step allowed for the anchored strongly monotone method on a
// mu-strongly monotone, L-Lipschitz operator.
double sm_eag_max_step(double L, double mu);

// Approximately solves z + alpha B(z) = xi by running the strongly monotone
// anchored extragradient method on F(z) = z + alpha B(z) - xi (which is
// 1-strongly monotone and (1 + alpha L)-Lipschitz), started at xi. Stops at the
// first iterate with ||F(z)|| <= tol or after max_iterations iterations.
ShiftedSolveResult solve_shifted_identity(const Operator& B, double alpha, const Vec& xi, double tol,
                                          long max_iterations);

}  // namespace mergepath
