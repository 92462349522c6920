#include "mergepath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mergepath/error.hpp"
#include "mergepath/reference.hpp"

namespace mergepath {
namespace {

[[noreturn]] void mismatch(const std::string& msg) { throw Error(ErrorCode::MismatchedTraces, msg); }

const std::vector<Vec>& full_sequence(const IterateTrace& t, const std::string& name) {
  const std::vector<Vec>& s = t.sequence(name);
  if (name == "main" && s.size() != t.length()) {
    throw Error(ErrorCode::InvalidArgument, "trace was recorded at summary level; iterates are not available");
  }
  return s;
}

double sq(double x) { return x * x; }

const Vec& start_of(const IterateTrace& t) {
  if (t.main.empty()) throw Error(ErrorCode::InvalidArgument, "empty trace");
  return t.main.front();
}

// Evaluates a polynomial in k with ascending coefficients.
double poly_at(const std::vector<double>& c, double k) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * k + *it;
  return v;
}

// True iff the polynomial is positive at every integer k >= 1. Real roots lie
// below 1 + max |c_i / c_N|, so only finitely many k need checking.
bool positive_for_all_k(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const double lead = c.back();
  if (!(lead > 0.0)) return false;
  double cauchy = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) cauchy = std::max(cauchy, std::abs(c[i] / lead));
  const long last = static_cast<long>(std::ceil(1.0 + cauchy));
  for (long k = 1; k <= std::max(last, 1L); ++k) {
    if (!(poly_at(c, static_cast<double>(k)) > 0.0)) return false;
  }
  return true;
}

struct Factor {
  const char* name;
  std::vector<double> coefficients;  // ascending powers of k
};

std::vector<Factor> eag_factors(double r) {
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r;
  return {
      {"k=0 weight 1-3r+6r^2-2r^4", {1.0 - 3.0 * r + 6.0 * r2 - 2.0 * r4}},
      {"1-r", {1.0 - r}},
      {"1-r^2", {1.0 - r2}},
      {"tau", {-r * (2.0 - r - r2), 1.0 - r + r2 + r3}},
      {"s11", {-r * (2.0 + r - r3), 1.0 - 2.0 * r - 3.0 * r2 + 2.0 * r4, sq(1.0 - r2)}},
      {"t22 numerator",
       {r2 * (4.0 + r2 - r3), -r * (4.0 - 6.0 * r - 2.0 * r2 - 3.0 * r3 + 3.0 * r4),
        1.0 - 5.0 * r + 4.0 * r3 + 3.0 * r4 - 3.0 * r5, sq(1.0 + r) * (1.0 - r) * sq(1.0 - r)}},
      {"t22 denominator", {-r * (2.0 + r - r3), sq(1.0 - r2)}},
      {"t33 numerator", {-r * (6.0 - r - r3), 1.0 - 4.0 * r - 2.0 * r2 + r4}},
      {"t33 denominator", {-r * (2.0 + r + r2), sq(1.0 + r) * (1.0 - r)}},
  };
}

std::vector<Factor> aps_factors(double r) {
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
  return {
      {"k=0 weight 1-3r+6r^2-2r^4", {1.0 - 3.0 * r + 6.0 * r2 - 2.0 * r4}},
      {"1-r", {1.0 - r}},
      {"epsilon 1-r-r^2-r^3", {1.0 - r - r2 - r3}},
      {"1-2r", {1.0 - 2.0 * r}},
      {"tau1", {-r * (1.0 - 2.0 * r), 1.0 + 2.0 * r2}},
      {"s11", {-r * (1.0 + 2.0 * r + 4.0 * r2), 1.0 + r - 4.0 * r2 - 4.0 * r3}},
      {"decrement weight",
       {-r * (7.0 + 5.0 * r - 8.0 * r2 - 6.0 * r3), 1.0 - 12.0 * r - 3.0 * r2 + 4.0 * r3 + 12.0 * r4,
        1.0 - 5.0 * r + 2.0 * r2 + 2.0 * r3 + 6.0 * r4}},
      {"t22 factor a", {-r * (1.0 - 2.0 * r), 1.0 + 3.0 * r + 2.0 * r2}},
      {"t22 factor b", {-r * (1.0 + 4.0 * r), 1.0 - 4.0 * r2}},
      {"t33", {-2.0 * r * (5.0 - 2.0 * r + 2.0 * r2), 1.0 - 8.0 * r - 4.0 * r2 - 4.0 * r3}},
  };
}

double summability_formula(Algorithm rule, double r) {
  const double num = 2.0 - r - 2.0 * r * r - 2.0 * std::pow(r, 3) + 7.0 * std::pow(r, 4) - 2.0 * std::pow(r, 6);
  if (rule == Algorithm::EAG) {
    return num / (r * std::pow(1.0 - r, 3) * sq(1.0 + r) * (2.0 + r));
  }
  return num / (r * sq(1.0 - r) * (2.0 + r) * (1.0 - r - r * r - std::pow(r, 3)));
}

void require_summability_rule(Algorithm rule) {
  if (rule != Algorithm::EAG && rule != Algorithm::APS) {
    throw Error(ErrorCode::InvalidArgument, "summability constants exist for EAG and APS only");
  }
}

BoundReport constant_bound(std::string label, long first_k, const std::vector<double>& measured, double bound) {
  BoundReport r;
  r.label = std::move(label);
  r.first_k = first_k;
  for (std::size_t k = static_cast<std::size_t>(first_k); k < measured.size(); ++k) {
    r.ks.push_back(static_cast<long>(k));
    r.measured.push_back(measured[k]);
    r.bound.push_back(bound);
  }
  return r;
}

std::vector<double> partial_sums(const std::vector<double>& s) {
  std::vector<double> out(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = acc += s[i];
  return out;
}

void require_same_alpha(const IterateTrace& a, const IterateTrace& b) {
  if (a.alpha != b.alpha) mismatch("traces use different step sizes");
}

void finish_lyapunov(LyapunovTrace& t) {
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    if (t.nonnegativity_required && t.values[k] < -t.slack) {
      t.values_nonnegative = false;
      if (t.first_violation_k < 0) t.first_violation_k = static_cast<long>(k);
    }
  }
  for (std::size_t k = 0; k < t.decrements.size(); ++k) {
    if (t.decrements[k] < t.certified_lower[k] - t.slack) {
      t.decrements_certified = false;
      if (t.first_violation_k < 0 || static_cast<long>(k) < t.first_violation_k) {
        t.first_violation_k = static_cast<long>(k);
      }
    }
  }
  t.pass = t.values_nonnegative && t.decrements_certified;
}

}  // namespace

std::vector<double> BoundReport::ratios() const {
  std::vector<double> out(measured.size());
  for (std::size_t i = 0; i < measured.size(); ++i) out[i] = measured[i] / bound[i];
  return out;
}

void finalize(BoundReport& r) {
  r.max_ratio = 0.0;
  r.argmax_k = -1;
  r.pass = true;
  for (std::size_t i = 0; i < r.measured.size(); ++i) {
    const double m = r.measured[i];
    if (!std::isfinite(m)) {
      r.pass = false;
      r.max_ratio = std::numeric_limits<double>::infinity();
      r.argmax_k = r.ks[i];
      continue;
    }
    if (m <= r.abs_floor) continue;
    const double ratio = m / r.bound[i];
    if (ratio > r.max_ratio || r.argmax_k < 0) {
      r.max_ratio = ratio;
      r.argmax_k = r.ks[i];
    }
  }
  if (r.max_ratio > 1.0 + r.tolerance) r.pass = false;
}

std::vector<double> mp_distance(const IterateTrace& t1, const IterateTrace& t2, const std::string& seq1,
                                const std::string& seq2) {
  const std::vector<Vec>& a = full_sequence(t1, seq1);
  const std::vector<Vec>& b = full_sequence(t2, seq2);
  if (a.size() != b.size()) {
    mismatch("sequence lengths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (!a.empty() && a.front().size() != b.front().size()) mismatch("dimensions differ");
  if (!t1.main.empty() && !t2.main.empty() && start_of(t1) != start_of(t2)) mismatch("starting points differ");
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = (a[k] - b[k]).squaredNorm();
  return d;
}

BoundReport mp_bound_feg_ohm(const IterateTrace& feg, const IterateTrace& ohm, const ProblemSpec& problem,
                             const Vec& z_star) {
  const double aL = feg.alpha * problem.L;
  if (!(aL < 1.0)) throw Error(ErrorCode::ConfigError, "FEG/OHM merging bound requires alpha L < 1");
  require_same_alpha(feg, ohm);
  const std::vector<double> d = mp_distance(feg, ohm);
  std::vector<double> weighted(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) weighted[k] = sq(static_cast<double>(k)) * d[k];
  const double r0 = (start_of(feg) - z_star).squaredNorm();
  BoundReport r = constant_bound("FEG-OHM merging path", 1, weighted, r0 / (1.0 - aL * aL));
  r.constants["alpha_L"] = aL;
  r.constants["initial_sq_distance"] = r0;
  r.note = "measured k^2 ||z_k - w_k||^2; k = 0 skipped";
  finalize(r);
  return r;
}

BoundReport mp_bound_feg_ohm(const IterateTrace& feg, const ProblemSpec& problem, const Vec& z_star) {
  AlgorithmConfig c;
  c.algorithm = Algorithm::OHM;
  c.alpha = feg.alpha;
  c.max_iterations = feg.iterations;
  const IterateTrace ohm = run(c, problem, start_of(feg));
  return mp_bound_feg_ohm(feg, ohm, problem, z_star);
}

std::vector<double> mp_summands(const IterateTrace& t) {
  const std::size_t n = t.length() > 0 ? t.length() - 1 : 0;
  std::vector<double> s(n);
  switch (t.algorithm) {
    case Algorithm::FEG: {
      const auto& Bz = t.op_evals;
      const auto& Bh = t.sequence("B_half");
      if (Bz.size() < n + 1 || Bh.size() < n) throw Error(ErrorCode::InvalidArgument, "FEG trace is incomplete");
      for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        s[k] = (kk * Bz[k] - (kk + 1.0) * Bh[k]).squaredNorm();
      }
      return s;
    }
    case Algorithm::EAG: {
      const auto& Bz = t.op_evals;
      const auto& Bh = t.sequence("B_half");
      if (Bz.size() < n + 1 || Bh.size() < n) throw Error(ErrorCode::InvalidArgument, "EAG trace is incomplete");
      for (std::size_t k = 0; k < n; ++k) s[k] = sq(static_cast<double>(k + 1)) * (Bz[k] - Bh[k]).squaredNorm();
      return s;
    }
    case Algorithm::APS: {
      const auto& Bv = t.sequence("B_v");
      if (Bv.size() < n + 1) throw Error(ErrorCode::InvalidArgument, "APS trace is incomplete");
      for (std::size_t k = 0; k < n; ++k) s[k] = sq(static_cast<double>(k + 1)) * (Bv[k] - Bv[k + 1]).squaredNorm();
      return s;
    }
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "no merging-path summand for " + std::string(algorithm_name(t.algorithm)));
  }
}

BoundReport feg_summability(const IterateTrace& feg, const ProblemSpec& problem, const Vec& z_star) {
  if (feg.algorithm != Algorithm::FEG) throw Error(ErrorCode::InvalidArgument, "feg_summability needs a FEG trace");
  const double a = feg.alpha;
  const double aL = a * problem.L;
  if (!(aL < 1.0)) throw Error(ErrorCode::ConfigError, "FEG summability requires alpha L < 1");
  const double r0 = (start_of(feg) - z_star).squaredNorm();
  BoundReport r = constant_bound("FEG summability", 0, partial_sums(mp_summands(feg)), r0 / (a * a * (1.0 - aL * aL)));
  r.constants["alpha_L"] = aL;
  r.constants["initial_sq_distance"] = r0;
  r.note = "partial sums of ||k B z_k - (k+1) B z_{k+1/2}||^2";
  finalize(r);
  return r;
}

BoundReport mp_recursion_check(const IterateTrace& forward, const IterateTrace& ohm) {
  require_same_alpha(forward, ohm);
  const std::vector<double> d = mp_distance(forward, ohm);
  const std::vector<double> s = mp_summands(forward);
  const double a2 = forward.alpha * forward.alpha;
  BoundReport r;
  r.label = std::string(algorithm_name(forward.algorithm)) + "-OHM one-step recursion";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double kk = static_cast<double>(k);
    r.ks.push_back(static_cast<long>(k));
    r.measured.push_back(sq(kk + 1.0) * d[k + 1]);
    r.bound.push_back(kk * kk * d[k] + a2 * s[k]);
  }
  r.note = "(k+1)^2 d_{k+1} against k^2 d_k + alpha^2 s_k";
  finalize(r);
  return r;
}

std::optional<std::string> summability_positivity_failure(Algorithm rule, double r) {
  require_summability_rule(rule);
  if (!(r > 0.0) || !(r < 1.0)) return std::string("alpha L outside (0, 1)");
  for (const Factor& f : rule == Algorithm::EAG ? eag_factors(r) : aps_factors(r)) {
    if (!positive_for_all_k(f.coefficients)) return std::string(f.name);
  }
  return std::nullopt;
}

double summability_constants(Algorithm rule, double alpha, double L) {
  require_summability_rule(rule);
  const double r = alpha * L;
  if (auto failure = summability_positivity_failure(rule, r)) {
    throw Error(ErrorCode::StepTooLarge, std::string(algorithm_name(rule)) + " summability at alpha L = " +
                                             std::to_string(r) + ": factor '" + *failure + "' is not positive");
  }
  return summability_formula(rule, r);
}

double summability_constant_formula(Algorithm rule, double r) {
  require_summability_rule(rule);
  return summability_formula(rule, r);
}

BoundReport eag_aps_summability(const IterateTrace& t, const ProblemSpec& problem, const Vec& z_star) {
  const double a = t.alpha;
  const double C = summability_constants(t.algorithm, a, problem.L);
  const double r0 = (start_of(t) - z_star).squaredNorm();
  BoundReport r = constant_bound(std::string(algorithm_name(t.algorithm)) + " summability", 0,
                                 partial_sums(mp_summands(t)), C / (a * a) * r0);
  r.constants["C"] = C;
  r.constants["alpha_L"] = a * problem.L;
  r.constants["initial_sq_distance"] = r0;
  finalize(r);
  return r;
}

LyapunovTrace lyapunov_feg(const IterateTrace& t, double alpha, const Vec& z_star, double L) {
  const std::vector<Vec>& z = full_sequence(t, "main");
  const std::vector<Vec>& Bz = t.op_evals;
  const std::vector<Vec>& Bh = t.sequence("B_half");
  const Vec& z0 = z.front();
  const std::size_t n = z.size() - 1;
  LyapunovTrace out;
  out.label = "FEG Lyapunov";
  const double anchor = (z0 - z_star).squaredNorm() / (2.0 * alpha);
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    out.values.push_back(0.5 * alpha * kk * kk * Bz[k].squaredNorm() + kk * Bz[k].dot(z[k] - z0) + anchor);
  }
  const double c = 0.5 * alpha * (1.0 - alpha * alpha * L * L);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    out.decrements.push_back(out.values[k] - out.values[k + 1]);
    out.certified_lower.push_back(c * (kk * Bz[k] - (kk + 1.0) * Bh[k]).squaredNorm());
  }
  finish_lyapunov(out);
  return out;
}

LyapunovTrace lyapunov_sm_eag(const IterateTrace& t, double alpha, double mu, double L, const Vec& z0,
                              const Vec& z_star) {
  const std::vector<Vec>& z = full_sequence(t, "main");
  const std::vector<Vec>& Bz = t.op_evals;
  const std::vector<Vec>& Bh = t.sequence("B_half");
  const std::size_t n = z.size() - 1;
  const double rho = 1.0 + 2.0 * alpha * mu;

  // inv_beta[k] = sum_{j<=k} rho^j, q_k = sum_{i<k} rho^{-i}.
  std::vector<double> inv_beta(n + 2), q(n + 2), p(n + 2);
  double s = 0.0, pw = 1.0;
  for (std::size_t k = 0; k < n + 2; ++k) {
    s += pw;
    pw *= rho;
    inv_beta[k] = s;
  }
  q[0] = 0.0;
  double qs = 0.0, ipw = 1.0;
  for (std::size_t k = 1; k < n + 2; ++k) {
    qs += ipw;
    ipw /= rho;
    q[k] = qs;
  }
  p[0] = 0.0;
  for (std::size_t k = 1; k < n + 2; ++k) {
    const double beta = 1.0 / inv_beta[k];
    const double eta = (1.0 - beta) / rho;
    p[k] = eta * alpha * q[k] * inv_beta[k] / 2.0;
  }

  LyapunovTrace out;
  out.label = "SM-EAG+ Lyapunov";
  const double anchor = (1.0 / (2.0 * alpha) + mu) * (z0 - z_star).squaredNorm();
  for (std::size_t k = 0; k <= n; ++k) {
    const Vec dz = z[k] - z0;
    out.values.push_back(p[k] * Bz[k].squaredNorm() + q[k] * (Bz[k] - mu * dz).dot(dz) + anchor);
  }
  const double gap = rho - alpha * alpha * L * L;
  for (std::size_t k = 0; k < n; ++k) {
    out.decrements.push_back(out.values[k] - out.values[k + 1]);
    if (k == 0) {
      out.certified_lower.push_back(0.5 * alpha * gap * Bz[0].squaredNorm());
    } else {
      const double beta = 1.0 / inv_beta[k];
      const double eta = (1.0 - beta) / rho;
      const double w = alpha * gap * q[k] / (2.0 * beta * (1.0 - beta));
      out.certified_lower.push_back(w * (eta * Bz[k] - Bh[k]).squaredNorm());
    }
  }
  finish_lyapunov(out);
  return out;
}

std::string_view rate_rule_name(RateRule rule) {
  switch (rule) {
    case RateRule::OHM_RATE: return "OHM_RATE";
    case RateRule::OC_HALPERN_RATE: return "OC_HALPERN_RATE";
    case RateRule::SM_EAG_RATE: return "SM_EAG_RATE";
    case RateRule::FEG_RATE: return "FEG_RATE";
    case RateRule::APG_RESIDUAL: return "APG_RESIDUAL";
    case RateRule::OHM_DRS_RATE: return "OHM_DRS_RATE";
  }
  return "UNKNOWN";
}

RateRule parse_rate_rule(std::string_view name) {
  for (RateRule r : {RateRule::OHM_RATE, RateRule::OC_HALPERN_RATE, RateRule::SM_EAG_RATE, RateRule::FEG_RATE,
                     RateRule::APG_RESIDUAL, RateRule::OHM_DRS_RATE}) {
    if (rate_rule_name(r) == name) return r;
  }
  throw Error(ErrorCode::ConfigError, "unknown rate rule '" + std::string(name) + "'");
}

double apg_constant(const ProblemSpec& problem, const Vec& xi0, const Vec& xi_star) {
  return problem.L * ((xi0 - xi_star).norm() + 1.0) + problem.B(xi_star).norm();
}

BoundReport rate_bound(const IterateTrace& t, const ProblemSpec& problem, RateRule rule,
                       const std::optional<Vec>& reference, std::optional<double> gamma) {
  const Vec& z0 = start_of(t);
  const bool splitting = rule == RateRule::APG_RESIDUAL || rule == RateRule::OHM_DRS_RATE;
  Vec ref;
  if (reference) {
    ref = *reference;
  } else if (splitting) {
    throw Error(ErrorCode::MissingReferencePoint,
                std::string(rate_rule_name(rule)) + " needs the fixed point of the splitting operator");
  } else {
    ref = halpern_reference(problem, z0);
  }
  require_dimension(ref, z0.size(), "reference point");
  const double r0 = (z0 - ref).squaredNorm();
  const double a = t.alpha;
  const std::size_t n = t.length();

  BoundReport r;
  r.label = std::string(rate_rule_name(rule));
  r.constants["initial_sq_distance"] = r0;
  auto add = [&](std::size_t k, double bound) {
    r.ks.push_back(static_cast<long>(k));
    r.measured.push_back(sq(t.residual_norms[k]));
    r.bound.push_back(bound);
  };

  switch (rule) {
    case RateRule::OHM_RATE:
    case RateRule::OHM_DRS_RATE:
      for (std::size_t k = 0; k < n; ++k) add(k, 4.0 * r0 / sq(static_cast<double>(k + 1)));
      break;
    case RateRule::OC_HALPERN_RATE: {
      const double g = gamma ? *gamma : std::sqrt(1.0 + 2.0 * a * problem.mu);
      if (!(g > 1.0)) throw Error(ErrorCode::ConfigError, "OC_HALPERN_RATE needs gamma > 1");
      r.constants["gamma"] = g;
      double sum = 0.0, pw = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        sum += pw;
        pw *= g;
        add(k, sq(1.0 + 1.0 / g) * r0 / (sum * sum));
      }
      break;
    }
    case RateRule::SM_EAG_RATE: {
      const double rho = 1.0 + 2.0 * a * problem.mu;
      const double root = std::sqrt(rho);
      r.constants["rho"] = rho;
      r.first_k = 1;
      double sum = 0.0, pw = 1.0;
      for (std::size_t k = 1; k < n; ++k) {
        sum += pw;
        pw *= root;
        add(k, sq(root + 1.0) * r0 / (a * a * sum * sum));
      }
      break;
    }
    case RateRule::FEG_RATE:
      r.first_k = 1;
      for (std::size_t k = 1; k < n; ++k) add(k, 4.0 * r0 / (a * a * sq(static_cast<double>(k))));
      break;
    case RateRule::APG_RESIDUAL: {
      const double C = apg_constant(problem, z0, ref);
      const double aL = a * problem.L;
      r.constants["C"] = C;
      for (std::size_t k = 0; k < n; ++k) {
        add(k, sq(3.0 + aL) * C * C / (aL * aL * sq(static_cast<double>(k + 1))));
      }
      break;
    }
  }
  if (r.first_k > 0) r.note = "k < " + std::to_string(r.first_k) + " skipped";
  finalize(r);
  return r;
}

BoundReport mp_bound_apg(const IterateTrace& apg, const IterateTrace& drs, const ProblemSpec& problem,
                         const Vec& xi_star) {
  if (apg.algorithm != Algorithm::APG_STAR || drs.algorithm != Algorithm::OHM_DRS) {
    mismatch("mp_bound_apg needs an APG_STAR trace and an OHM_DRS trace");
  }
  require_same_alpha(apg, drs);
  const std::vector<double> d_outer = mp_distance(apg, drs, "main", "main");
  const std::vector<double> d_inner = mp_distance(apg, drs, "z", "w");
  const double C = apg_constant(problem, start_of(apg), xi_star);
  const double L = problem.L;
  BoundReport r;
  r.label = "APG*-OHM-DRS merging path";
  for (std::size_t k = 0; k < d_outer.size(); ++k) {
    r.ks.push_back(static_cast<long>(k));
    r.measured.push_back(std::max(d_outer[k], d_inner[k]));
    r.bound.push_back(C * C / (L * L * sq(static_cast<double>(k + 1))));
  }
  r.constants["C"] = C;
  r.note = "max{||xi_k - u_k||^2, ||z_k - w_k||^2}";
  finalize(r);
  return r;
}

BoundReport sm_eag_oc_halpern_mp(const IterateTrace& sm, const IterateTrace& oc, const ProblemSpec& problem,
                                 const Vec& z_star, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::ConfigError, "eps must lie in (0, 1)");
  require_same_alpha(sm, oc);
  const double a = sm.alpha;
  const double am = 2.0 * a * problem.mu;
  const double growth = 1.0 + am * (1.0 - eps);
  const double gap = 1.0 + am - a * a * problem.L * problem.L;
  const double r0 = (start_of(sm) - z_star).squaredNorm();
  const double constant = gap > 0.0 ? (1.0 + am * (1.0 / eps - 1.0)) * (1.0 + am) / gap
                                    : std::numeric_limits<double>::infinity();
  const std::vector<double> d = mp_distance(sm, oc);
  BoundReport r;
  r.label = "SM-EAG+-OC-Halpern merging path";
  double pw = 1.0;
  double sup = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    r.ks.push_back(static_cast<long>(k));
    r.measured.push_back(pw * d[k]);
    r.bound.push_back(constant * r0);
    sup = std::max(sup, pw * d[k]);
    pw *= growth;
  }
  r.constants["eps"] = eps;
  r.constants["growth"] = growth;
  r.constants["constant"] = constant;
  r.constants["initial_sq_distance"] = r0;
  r.constants["sup_measured"] = sup;
  r.constants["sup_over_initial"] = r0 > 0.0 ? sup / r0 : 0.0;
  r.note = "measured (1 + 2 alpha mu (1 - eps))^k ||z_k - w_k||^2";
  finalize(r);
  return r;
}

std::optional<long> iterations_to_tolerance(const IterateTrace& t, double eps) {
  for (std::size_t k = 0; k < t.residual_norms.size(); ++k) {
    if (t.residual_norms[k] <= eps) return static_cast<long>(k);
  }
  return std::nullopt;
}

std::optional<long> oracle_calls_to_tolerance(const IterateTrace& t, double eps) {
  const auto k = iterations_to_tolerance(t, eps);
  if (!k) return std::nullopt;
  long calls = 0;
  for (long j = 0; j <= *k; ++j) calls += t.oracle_counts[j].forward + t.oracle_counts[j].resolvent;
  return calls;
}

LogFit fit_log_trend(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "log fit needs two or more points");
  const Index n = static_cast<Index>(x.size());
  Mat A(n, 2);
  Vec b(n);
  for (Index i = 0; i < n; ++i) {
    if (!(x[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "log fit needs positive abscissae");
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b[i] = y[i];
  }
  const Vec c = A.colPivHouseholderQr().solve(b);
  LogFit fit;
  fit.a = c[0];
  fit.b = c[1];
  fit.rms_residual = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(n));
  fit.mean = b.mean();
  return fit;
}

}  // namespace mergepath
