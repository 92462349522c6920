#include "mergepath/reference.hpp"

#include <string>

#include "mergepath/algorithm.hpp"
#include "mergepath/error.hpp"

namespace mergepath {

Vec project_onto_zero_set(const ProblemSpec& problem, const Vec& z0) {
  const auto& form = problem.B.affine_form();
  if (!form) {
    throw Error(ErrorCode::MissingReferencePoint, "projection onto the zero set needs an affine operator");
  }
  require_dimension(z0, problem.dimension, "z0");
  const Vec r = form->M * z0 + form->b;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(form->M);
  const Vec p = z0 - cod.solve(r);
  const double res = (form->M * p + form->b).norm();
  if (res > 1e-9 * (1.0 + form->b.norm() + r.norm())) {
    throw Error(ErrorCode::SingularSystem, "affine operator has no zero (residual " + std::to_string(res) + ")");
  }
  return p;
}

Vec halpern_reference(const ProblemSpec& problem, const Vec& z0) {
  if (problem.composite()) {
    throw Error(ErrorCode::MissingReferencePoint, "composite problems need a splitting reference run");
  }
  if (problem.B.affine_form()) return project_onto_zero_set(problem, z0);
  if (problem.known_solution) return *problem.known_solution;
  throw Error(ErrorCode::MissingReferencePoint, "problem '" + problem.name + "' has no reference solution");
}

Vec drs_fixed_point_reference(const ProblemSpec& problem, double alpha, const Vec& xi0, long iterations,
                              double resolvent_tolerance) {
  AlgorithmConfig c;
  c.algorithm = Algorithm::OHM_DRS;
  c.alpha = alpha;
  c.max_iterations = iterations;
  c.resolvent_tolerance = resolvent_tolerance;
  c.trace_level = TraceLevel::Summary;
  return run(c, problem, xi0).final_point;
}

}  // namespace mergepath
