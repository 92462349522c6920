#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mergepath/algorithm.hpp"

namespace mergepath {

// Measured sequence against a theoretical bound on the index range ks.
// Entries with measured <= abs_floor count as satisfied and are left out of
// max_ratio; otherwise an entry passes iff measured <= bound * (1 + tolerance).
struct BoundReport {
  std::string label;
  std::vector<long> ks;
  std::vector<double> measured;
  std::vector<double> bound;
  double max_ratio = 0.0;
  long argmax_k = -1;
  bool pass = true;
  double tolerance = 1e-9;
  double abs_floor = 1e-14;
  long first_k = 0;  // indices below first_k are skipped
  std::map<std::string, double> constants;
  std::string note;

  std::vector<double> ratios() const;
};

// Fills max_ratio, argmax_k and pass from ks/measured/bound.
void finalize(BoundReport& report);

struct LyapunovTrace {
  std::string label;
  std::vector<double> values;           // V_k, k = 0..n
  std::vector<double> decrements;       // V_k - V_{k+1}, k = 0..n-1
  std::vector<double> certified_lower;  // required lower bound on decrements[k]
  double slack = 1e-9;
  bool nonnegativity_required = true;
  bool values_nonnegative = true;
  bool decrements_certified = true;
  long first_violation_k = -1;
  bool pass = true;
};

// ||z_k^(1) - z_k^(2)||^2 for each k over the named sequences ("main", "w", "z", ...).
// Throws MismatchedTraces on length, dimension or starting-point mismatch.
std::vector<double> mp_distance(const IterateTrace& t1, const IterateTrace& t2,
                                const std::string& seq1 = "main", const std::string& seq2 = "main");

// FEG against OHM on J_{alpha B} from the same start. Measured k^2 ||z_k - w_k||^2,
// bound ||z_0 - z*||^2 / (1 - alpha^2 L^2) for k >= 1.
BoundReport mp_bound_feg_ohm(const IterateTrace& feg, const IterateTrace& ohm, const ProblemSpec& problem,
                             const Vec& z_star);
// Runs the OHM partner itself.
BoundReport mp_bound_feg_ohm(const IterateTrace& feg, const ProblemSpec& problem, const Vec& z_star);

// Per-iteration summands driving the MP recursions, one per k = 0..n-1:
//   FEG: ||k B z_k - (k+1) B z_{k+1/2}||^2
//   EAG: (k+1)^2 ||B z_k - B z_{k+1/2}||^2
//   APS: (k+1)^2 ||B v_k - B v_{k+1}||^2
std::vector<double> mp_summands(const IterateTrace& trace);

// Partial sums of the FEG summands against ||z_0 - z*||^2 / (alpha^2 (1 - alpha^2 L^2)).
BoundReport feg_summability(const IterateTrace& feg, const ProblemSpec& problem, const Vec& z_star);

// One-step recursion (k+1)^2 d_{k+1} <= k^2 d_k + alpha^2 s_k with d = mp_distance
// and s = mp_summands of the forward method.
BoundReport mp_recursion_check(const IterateTrace& forward, const IterateTrace& ohm);

// Closed-form summability constant C (Sum (k+1)^2 ||s_k||^2 <= C/alpha^2 ||z_0 - z*||^2)
// for Algorithm::EAG or Algorithm::APS. Throws StepTooLarge when any positivity
// factor of the underlying proof is nonpositive at r = alpha L.
double summability_constants(Algorithm rule, double alpha, double L);
// The closed-form rational function of r = alpha L, without the positivity check.
double summability_constant_formula(Algorithm rule, double r);
// Same check without throwing; the name of the first failing factor when it fails.
std::optional<std::string> summability_positivity_failure(Algorithm rule, double r);

// Partial sums of EAG/APS summands against C/alpha^2 ||z_0 - z*||^2.
BoundReport eag_aps_summability(const IterateTrace& trace, const ProblemSpec& problem, const Vec& z_star);

// V_k = (alpha k^2/2) ||B z_k||^2 + k <B z_k, z_k - z_0> + ||z_0 - z*||^2 / (2 alpha)
// with decrement >= (alpha (1 - alpha^2 L^2)/2) ||k B z_k - (k+1) B z_{k+1/2}||^2.
LyapunovTrace lyapunov_feg(const IterateTrace& feg, double alpha, const Vec& z_star, double L);

// V_k = p_k ||B z_k||^2 + q_k <B z_k - mu (z_k - z_0), z_k - z_0> + (1/(2 alpha) + mu) ||z_0 - z*||^2.
LyapunovTrace lyapunov_sm_eag(const IterateTrace& trace, double alpha, double mu, double L, const Vec& z0,
                              const Vec& z_star);

enum class RateRule { OHM_RATE, OC_HALPERN_RATE, SM_EAG_RATE, FEG_RATE, APG_RESIDUAL, OHM_DRS_RATE };

std::string_view rate_rule_name(RateRule rule);
RateRule parse_rate_rule(std::string_view name);

// Compares the trace residuals with the rate of the rule. reference is the
// limit point the bound is stated for (w*, z*, u* or xi*); when absent it is
// taken from the problem (known solution, or the projection of the start for
// affine problems) and MissingReferencePoint is thrown if neither exists.
BoundReport rate_bound(const IterateTrace& trace, const ProblemSpec& problem, RateRule rule,
                       const std::optional<Vec>& reference = std::nullopt,
                       std::optional<double> gamma = std::nullopt);

// C(xi_0) = L (||xi_0 - xi*|| + 1) + ||B xi*||.
double apg_constant(const ProblemSpec& problem, const Vec& xi0, const Vec& xi_star);

// max{||xi_k - u_k||^2, ||z_k - w_k||^2} against C(xi_0)^2 / (L^2 (k+1)^2).
BoundReport mp_bound_apg(const IterateTrace& apg, const IterateTrace& ohm_drs, const ProblemSpec& problem,
                         const Vec& xi_star);

// (1 + 2 alpha mu (1 - eps))^k ||z_k - w_k||^2 for SM-EAG+ against OC-Halpern
// with gamma = sqrt(1 + 2 alpha mu). The bound is the explicit constant
// (1 + 2 alpha mu (1/eps - 1)) (1 + 2 alpha mu) / (1 + 2 alpha mu - alpha^2 L^2) ||z_0 - z*||^2,
// infinite at the maximal step.
BoundReport sm_eag_oc_halpern_mp(const IterateTrace& sm_eag, const IterateTrace& oc, const ProblemSpec& problem,
                                 const Vec& z_star, double eps = 0.1);

// First k with residual_norms[k] <= eps.
std::optional<long> iterations_to_tolerance(const IterateTrace& trace, double eps);
// Oracle calls (forward + resolvent) spent up to that k.
std::optional<long> oracle_calls_to_tolerance(const IterateTrace& trace, double eps);

// Least-squares fit y ~ a + b log x.
struct LogFit {
  double a = 0.0;
  double b = 0.0;
  double rms_residual = 0.0;
  double mean = 0.0;
};
LogFit fit_log_trend(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mergepath
