#pragma once

#include <optional>
#include <variant>

#include "mergepath/types.hpp"

namespace mergepath {

// Proximal maps of simple closed convex functions f; prox(spec, a, x) returns
// argmin_u f(u) + ||u - x||^2 / (2a).

struct ProxZero {};

// Indicator of {lower <= x <= upper}.
struct ProxBox {
  Vec lower;
  Vec upper;
};

// Indicator of the Euclidean ball of given center and radius.
struct ProxBall {
  Vec center;
  double radius = 1.0;
};

// weight * ||x||_1
struct ProxL1 {
  double weight = 1.0;
};

// x'Qx/2 + c'x with Q symmetric positive semidefinite.
struct ProxQuadratic {
  Mat Q;
  Vec c;
};

using ProxSpec = std::variant<ProxZero, ProxBox, ProxBall, ProxL1, ProxQuadratic>;

// Fixed dimension of the spec, or nullopt for separable specs that fit any size.
std::optional<Index> prox_dimension(const ProxSpec& spec);

// Throws InvalidArgument for malformed specs and DimensionMismatch when the
// spec has a fixed dimension different from d.
void validate_prox(const ProxSpec& spec, Index d);

Vec prox(const ProxSpec& spec, double alpha, const Vec& x);

// Block-separable prox for a saddle problem: f acts on the first n
// coordinates (x block), g on the remaining m (y block).
struct BlockProx {
  ProxSpec f;
  ProxSpec g;
  Index n = 0;
  Index m = 0;
};

Vec prox(const BlockProx& spec, double alpha, const Vec& z);

}  // namespace mergepath
