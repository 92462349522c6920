#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "mergepath/operator.hpp"
#include "mergepath/prox.hpp"

namespace mergepath {

enum class ProblemKind {
  Zero,
  Affine,
  BilinearSaddle,
  SCSCQuadratic,
  RandomMonotoneAffine,
  Figure1Convex,
  CompositeSplit,
};

std::string_view problem_kind_name(ProblemKind kind);

// How a linear generator picks known_solution when the zero set is not a point.
enum class SolutionPolicy {
  MinNorm,        // minimum-norm solution; SingularSystem only if no solution exists
  RequireUnique,  // SingularSystem unless the system is nonsingular
};

// Monotone inclusion 0 in (A + B)(z): B is forward-evaluable (the smooth part),
// A is present only for composite problems and is accessed through its prox.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Zero;
  std::string name;
  Index dimension = 0;
  // Saddle split z = (x, y); n_y = 0 for minimization and generic operators.
  Index n_x = 0;
  Index n_y = 0;
  Operator B = Operator::zero(1);
  std::optional<Operator> A;
  double L = 0.0;
  double mu = 0.0;
  std::optional<Vec> known_solution;
  std::optional<Vec> default_start;
  // Objective for convex minimization problems (B is its gradient).
  std::shared_ptr<const SmoothFunction> objective;
  // Step sizes shipped with the problem, keyed by algorithm family.
  std::map<std::string, double> step_defaults;

  bool composite() const { return A.has_value(); }
};

ProblemSpec make_zero(Index d);

// B(z) = M z + b with M monotone.
ProblemSpec make_affine(const Mat& M, const Vec& b, SolutionPolicy policy = SolutionPolicy::MinNorm);

// L(x, y) = <x, A y> + b'x - c'y, i.e. B(x, y) = (A y + b, -A'x + c).
ProblemSpec make_bilinear(const Mat& A, const Vec& b, const Vec& c,
                          SolutionPolicy policy = SolutionPolicy::MinNorm);

// B(z) = M (z - z_star) with lambda_min((M + M')/2) = mu and ||M||_2 = L.
// Requires 0 < mu <= L. z_star is drawn from the generator when absent.
ProblemSpec make_random_scsc(std::uint64_t seed, Index d, double L, double mu,
                             std::optional<Vec> z_star = std::nullopt);

// Same construction with mu >= 0. With rank < d the matrix is V N V' for an
// orthonormal d x rank matrix V, so the zero set is z_star + ker(V') and mu must be 0.
ProblemSpec make_random_monotone_affine(std::uint64_t seed, Index d, double L, double mu,
                                        std::optional<Vec> z_star = std::nullopt,
                                        std::optional<Index> rank = std::nullopt);

// f(x1, x2) = 4 x1^2 / x2 on x2 > 0, started at (-2, 3).
ProblemSpec make_figure1();

// A = (d f, d g) acting blockwise through prox maps, B = smooth.B. The x block
// has size n_x (defaults to smooth.n_x).
ProblemSpec make_composite(const ProxSpec& prox_f, const ProxSpec& prox_g, const ProblemSpec& smooth,
                           std::optional<Index> n_x = std::nullopt);

// Seeded standard normal point, independent of the generator streams above.
Vec random_point(std::uint64_t seed, Index d, double scale = 1.0);

// Natural residual of the problem at z: ||B z|| for smooth problems and
// ||G_alpha(z)|| for composite ones.
double problem_residual(const ProblemSpec& problem, const Vec& z, double alpha = 1.0);

}  // namespace mergepath
