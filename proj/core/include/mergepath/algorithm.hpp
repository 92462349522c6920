#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mergepath/problem.hpp"

namespace mergepath {

enum class Algorithm {
  GDA,
  EG,
  OG,
  AGM,
  EAG,
  EAG_V,
  FEG,
  APS,
  APS_V,
  OHM,
  OC_HALPERN,
  SM_EAG_PLUS,
  OHM_DRS,
  APG_STAR,
};

std::string_view algorithm_name(Algorithm a);
// Throws UnknownAlgorithm.
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

enum class TraceLevel {
  Full,     // every sequence recorded
  Summary,  // residuals and oracle counts per iteration; iterates only at the ends
};

// OHM can be run as w_{k+1/2} = b_k w_0 + (1-b_k) w_k, w_{k+1} = T w_{k+1/2}
// (Anchor) or as u_{k+1} = u_0/(k+2) + (1 - 1/(k+2)) T u_k with u_k = w_{k+1/2} (Shifted).
enum class OhmForm { Anchor, Shifted };

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::FEG;
  double alpha = 0.0;  // step size; alpha_0 for the varying-step methods
  long max_iterations = 10000;
  std::optional<double> momentum_a;  // AGM: t_k = (k + a - 1)/a, a > 2
  std::optional<double> theta;       // APS_V: M = 2 L^2 (1 + theta), theta > 0
  std::optional<double> gamma;       // OC_HALPERN: gamma > 1; defaults to sqrt(1 + 2 alpha mu)
  double resolvent_tolerance = 1e-12;
  std::optional<long> inner_budget;  // APG_STAR inner iterations per outer step, and iterative resolvents
  std::optional<double> stop_tolerance;  // stop once the natural residual drops to this level
  TraceLevel trace_level = TraceLevel::Full;
  OhmForm ohm_form = OhmForm::Anchor;
};

struct OracleCount {
  long forward = 0;    // evaluations of B (or grad f), including inner-loop ones
  long resolvent = 0;  // resolvent and prox calls
};

// Row k holds the k-th iterate. Auxiliary sequences:
//   "half"   z_{k+1/2} (EG, EAG, EAG_V, FEG, SM_EAG_PLUS) and w_{k+1/2} (OHM, OC_HALPERN); length n
//   "B_half" B z_{k+1/2}; length n
//   "v", "B_v"  APS / APS_V v_k and B v_k; length n+1 with v_0 = z_0
//   "y"      AGM extrapolated points; length n+1
//   "w"      OHM_DRS w_k = J_{alpha B}(u_k); length n+1
//   "z"      APG_STAR inner solutions z_k; length n+1
// Scalar sequences: "alpha" (EAG_V, APS_V), "beta" (anchor weights), "epsilon" (APG_STAR).
// op_evals[k] = B(main[k]) for the forward methods. residual_norms[k] is the
// natural residual: ||B z_k||, ||grad f(x_k)||, ||w_{k+1/2} - T w_{k+1/2}||,
// ||u_k - T_DRS u_k|| or ||G_alpha(z_k)||. oracle_counts[k] counts the oracle
// calls made while producing row k from row k-1 (row 0 is zero).
struct IterateTrace {
  Algorithm algorithm = Algorithm::FEG;
  double alpha = 0.0;
  std::vector<Vec> main;
  std::map<std::string, std::vector<Vec>> aux;
  std::vector<Vec> op_evals;
  std::vector<double> residual_norms;
  std::vector<OracleCount> oracle_counts;
  std::map<std::string, std::vector<double>> scalars;
  long iterations = 0;
  bool stopped_early = false;
  Vec final_point;

  std::size_t length() const { return residual_norms.size(); }
  const std::vector<Vec>& sequence(const std::string& name) const;
  OracleCount total_oracle_calls() const;
};

// Checks the configuration against the problem constants (ConfigError).
void validate_config(const AlgorithmConfig& config, const ProblemSpec& problem);

// Runs the configured method from z0. Deterministic: identical inputs give
// bit-identical traces.
IterateTrace run(const AlgorithmConfig& config, const ProblemSpec& problem, const Vec& z0);

// Tolerance schedule of the APG* inner loop:
// eps_k = (1 + ||B xi_0|| / L) / ((k+1)^2 (k+2)).
double apg_inner_tolerance(double B_xi0_norm, double L, long k);

}  // namespace mergepath
