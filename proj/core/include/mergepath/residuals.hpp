#pragma once

#include "mergepath/operator.hpp"

namespace mergepath {

// G_alpha(z) = (z - J_{alpha A}(z - alpha B z)) / alpha
Vec forward_backward_residual(const Operator& A, const Operator& B, double alpha, const Vec& z,
                              const ResolventOptions& options = {});

// T_DRS(u) = u - J_{alpha B}(u) + J_{alpha A}(2 J_{alpha B}(u) - u)
Vec drs_operator(const Operator& A, const Operator& B, double alpha, const Vec& u,
                 const ResolventOptions& options = {});

}  // namespace mergepath
