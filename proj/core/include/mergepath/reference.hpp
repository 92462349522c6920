#pragma once

#include "mergepath/problem.hpp"

namespace mergepath {

// Orthogonal projection of z0 onto {z : M z + b = 0} for an affine B,
// computed as z0 - M^+ (M z0 + b). Throws MissingReferencePoint for other
// operators and SingularSystem when the zero set is empty.
Vec project_onto_zero_set(const ProblemSpec& problem, const Vec& z0);

// Limit point of the Halpern iterations on J_{alpha B} from z0: the projection
// of z0 onto Zer B. Uses the known solution when it is unique, the affine
// projection otherwise. Throws MissingReferencePoint when neither is available.
Vec halpern_reference(const ProblemSpec& problem, const Vec& z0);

// Approximates the projection of xi0 onto Fix T_DRS by an OHM-DRS run.
Vec drs_fixed_point_reference(const ProblemSpec& problem, double alpha, const Vec& xi0,
                              long iterations = 100000, double resolvent_tolerance = 1e-12);

}  // namespace mergepath
