#pragma once

#include "mergepath/algorithm.hpp"
#include "mergepath/analysis.hpp"
#include "mergepath/error.hpp"
#include "mergepath/operator.hpp"
#include "mergepath/problem.hpp"
#include "mergepath/prox.hpp"
#include "mergepath/reference.hpp"
#include "mergepath/residuals.hpp"
#include "mergepath/serialization.hpp"
#include "mergepath/shifted_solve.hpp"
#include "mergepath/types.hpp"
