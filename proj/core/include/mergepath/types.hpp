#pragma once

#include <Eigen/Dense>

namespace mergepath {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Points of R^d are plain Eigen vectors; API boundaries validate them with
// require_point / require_dimension.
using VectorPoint = Vec;

void require_point(const Vec& z, const char* what);
void require_dimension(const Vec& z, Index d, const char* what);

}  // namespace mergepath
