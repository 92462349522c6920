#include "mergepath/algorithm.hpp"

#include <cmath>
#include <string>

#include "mergepath/error.hpp"
#include "mergepath/shifted_solve.hpp"

namespace mergepath {
namespace {

struct NamedAlgorithm {
  Algorithm id;
  std::string_view name;
};

constexpr NamedAlgorithm kAlgorithms[] = {
    {Algorithm::GDA, "GDA"},         {Algorithm::EG, "EG"},
    {Algorithm::OG, "OG"},           {Algorithm::AGM, "AGM"},
    {Algorithm::EAG, "EAG"},         {Algorithm::EAG_V, "EAG_V"},
    {Algorithm::FEG, "FEG"},         {Algorithm::APS, "APS"},
    {Algorithm::APS_V, "APS_V"},     {Algorithm::OHM, "OHM"},
    {Algorithm::OC_HALPERN, "OC_HALPERN"}, {Algorithm::SM_EAG_PLUS, "SM_EAG_PLUS"},
    {Algorithm::OHM_DRS, "OHM_DRS"}, {Algorithm::APG_STAR, "APG_STAR"},
};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

bool needs_forward(Algorithm a) {
  switch (a) {
    case Algorithm::OHM:
    case Algorithm::OC_HALPERN:
    case Algorithm::OHM_DRS:
      return false;
    default:
      return true;
  }
}

double oc_halpern_ratio(const AlgorithmConfig& c, const ProblemSpec& p) {
  if (c.gamma) return *c.gamma * *c.gamma;
  return 1.0 + 2.0 * c.alpha * p.mu;
}

// Shared bookkeeping for the per-algorithm loops: charged oracle calls,
// trace rows, early stopping.
class Driver {
 public:
  Driver(const AlgorithmConfig& c, const ProblemSpec& p, const Vec& z0) : c_(c), p_(p), z0_(z0) {
    t_.algorithm = c.algorithm;
    t_.alpha = c.alpha;
    const std::size_t reserve = c.trace_level == TraceLevel::Full ? static_cast<std::size_t>(c.max_iterations) + 1 : 0;
    t_.main.reserve(reserve);
    t_.residual_norms.reserve(static_cast<std::size_t>(c.max_iterations) + 1);
    t_.oracle_counts.reserve(static_cast<std::size_t>(c.max_iterations) + 1);
  }

  const Vec& z0() const { return z0_; }
  long n() const { return c_.max_iterations; }
  double alpha() const { return c_.alpha; }
  const ProblemSpec& problem() const { return p_; }
  bool full() const { return c_.trace_level == TraceLevel::Full; }

  // Charged forward evaluation.
  Vec B(const Vec& z) {
    ++step_.forward;
    return p_.B(z);
  }
  // Instrumentation-only evaluation.
  Vec B_free(const Vec& z) const { return p_.B(z); }
  void charge_forward(long count = 1) { step_.forward += count; }
  void charge_resolvent(long count = 1) { step_.resolvent += count; }

  // Appends row k; returns true when the run should stop after it.
  bool record(const Vec& main, double residual, const Vec* op_eval = nullptr) {
    if (!main.allFinite()) {
      throw Error(ErrorCode::DomainViolation,
                  "non-finite iterate at k = " + std::to_string(t_.residual_norms.size()));
    }
    const bool first = t_.residual_norms.empty();
    if (full() || first) t_.main.push_back(main);
    if (full() && op_eval) t_.op_evals.push_back(*op_eval);
    t_.residual_norms.push_back(residual);
    t_.oracle_counts.push_back(step_);
    step_ = OracleCount{};
    t_.final_point = main;
    t_.iterations = static_cast<long>(t_.residual_norms.size()) - 1;
    if (c_.stop_tolerance && residual <= *c_.stop_tolerance) {
      t_.stopped_early = t_.iterations < n();
      return true;
    }
    return false;
  }

  void aux(const char* name, const Vec& v) {
    if (full()) t_.aux[name].push_back(v);
  }
  void scalar(const char* name, double v) {
    if (full()) t_.scalars[name].push_back(v);
  }

  IterateTrace finish() {
    if (!full() && t_.residual_norms.size() > 1) t_.main.push_back(t_.final_point);
    return std::move(t_);
  }

 private:
  const AlgorithmConfig& c_;
  const ProblemSpec& p_;
  const Vec& z0_;
  IterateTrace t_;
  OracleCount step_;
};

IterateTrace run_gda(Driver& d) {
  Vec z = d.z0();
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    d.charge_forward();
    z = z - d.alpha() * Bz;
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_eg(Driver& d) {
  const double a = d.alpha();
  Vec z = d.z0();
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    d.charge_forward();
    Vec half = z - a * Bz;
    Vec Bh = d.B(half);
    z = z - a * Bh;
    d.aux("half", half);
    d.aux("B_half", Bh);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_og(Driver& d) {
  const double a = d.alpha();
  Vec z = d.z0();
  Vec Bz = d.B_free(z);
  Vec B_prev = Bz;  // z_{-1} = z_0
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    d.charge_forward();
    Vec next = z - (2.0 * a) * Bz + a * B_prev;
    B_prev = Bz;
    z = std::move(next);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_agm(Driver& d, double a_mom) {
  const double a = d.alpha();
  auto t = [a_mom](long k) { return (static_cast<double>(k) + a_mom - 1.0) / a_mom; };
  Vec x = d.z0();
  Vec y = d.z0();
  Vec gx = d.B_free(x);
  d.aux("y", y);
  if (d.record(x, gx.norm(), &gx)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    Vec gy = d.B(y);
    Vec xn = y - a * gy;
    y = xn + ((t(k) - 1.0) / t(k + 1)) * (xn - x);
    x = std::move(xn);
    d.aux("y", y);
    gx = d.B_free(x);
    if (d.record(x, gx.norm(), &gx)) break;
  }
  return d.finish();
}

IterateTrace run_eag(Driver& d) {
  const double a = d.alpha();
  const Vec& z0 = d.z0();
  Vec z = z0;
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = 1.0 / static_cast<double>(k + 1);
    d.charge_forward();
    Vec half = beta * z0 + (1.0 - beta) * z - a * Bz;
    Vec Bh = d.B(half);
    z = beta * z0 + (1.0 - beta) * z - a * Bh;
    d.aux("half", half);
    d.aux("B_half", Bh);
    d.scalar("beta", beta);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

// FEG and SM-EAG+ share the update
//   z_{k+1/2} = b z_0 + (1-b) z_k - (eta a) B z_k,  z_{k+1} = b z_0 + (1-b) z_k - a B z_{k+1/2},
// with eta = 1 - b for FEG. Keeping one expression makes the mu = 0 case of
// SM-EAG+ reproduce FEG bit for bit.
struct AnchoredExtraStep {
  Vec half;
  Vec B_half;
  Vec next;
};

AnchoredExtraStep anchored_extra_step(Driver& d, const Vec& z, const Vec& Bz, double beta, double eta) {
  const double a = d.alpha();
  const Vec& z0 = d.z0();
  d.charge_forward();
  AnchoredExtraStep s;
  s.half = beta * z0 + (1.0 - beta) * z - (eta * a) * Bz;
  s.B_half = d.B(s.half);
  s.next = beta * z0 + (1.0 - beta) * z - a * s.B_half;
  return s;
}

IterateTrace run_feg(Driver& d) {
  Vec z = d.z0();
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = 1.0 / static_cast<double>(k + 1);
    AnchoredExtraStep s = anchored_extra_step(d, z, Bz, beta, 1.0 - beta);
    z = std::move(s.next);
    d.aux("half", s.half);
    d.aux("B_half", s.B_half);
    d.scalar("beta", beta);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_sm_eag_plus(Driver& d) {
  GeometricAnchor anchor(1.0 + 2.0 * d.alpha() * d.problem().mu);
  Vec z = d.z0();
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = anchor.beta();
    AnchoredExtraStep s = anchored_extra_step(d, z, Bz, beta, anchor.eta());
    z = std::move(s.next);
    anchor.advance();
    d.aux("half", s.half);
    d.aux("B_half", s.B_half);
    d.scalar("beta", beta);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_eag_v(Driver& d) {
  const double L = d.problem().L;
  const Vec& z0 = d.z0();
  double a = d.alpha();
  Vec z = z0;
  Vec Bz = d.B_free(z);
  d.scalar("alpha", a);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = 1.0 / static_cast<double>(k + 2);
    d.charge_forward();
    Vec half = beta * z0 + (1.0 - beta) * z - a * Bz;
    Vec Bh = d.B(half);
    z = beta * z0 + (1.0 - beta) * z - a * Bh;
    const double aL2 = a * a * L * L;
    a = a * (1.0 - (1.0 / (static_cast<double>(k + 1) * static_cast<double>(k + 3))) * aL2 / (1.0 - aL2));
    if (!(a > 0.0) || !(a * L < 1.0)) {
      throw Error(ErrorCode::StepSizeCollapse, "EAG_V step size left (0, 1/L) at k = " + std::to_string(k + 1));
    }
    d.aux("half", half);
    d.aux("B_half", Bh);
    d.scalar("beta", beta);
    d.scalar("alpha", a);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_aps(Driver& d) {
  const double a = d.alpha();
  const Vec& z0 = d.z0();
  Vec z = z0;
  Vec v = z0;
  Vec Bv = d.B_free(v);
  d.aux("v", v);
  d.aux("B_v", Bv);
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = 1.0 / static_cast<double>(k + 1);
    if (k == 0) d.charge_forward();  // B v_0; later B v_k carries over from the previous step
    Vec base = beta * z0 + (1.0 - beta) * z;
    v = base - a * Bv;
    Bv = d.B(v);
    z = base - a * Bv;
    d.aux("v", v);
    d.aux("B_v", Bv);
    d.scalar("beta", beta);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

IterateTrace run_aps_v(Driver& d, double theta) {
  const double L = d.problem().L;
  const double M = 2.0 * L * L * (1.0 + theta);
  const Vec& z0 = d.z0();
  double a = d.alpha();
  Vec z = z0;
  Vec v = z0;
  Vec Bv = d.B_free(v);
  d.aux("v", v);
  d.aux("B_v", Bv);
  d.scalar("alpha", a);
  Vec Bz = d.B_free(z);
  if (d.record(z, Bz.norm(), &Bz)) return d.finish();
  for (long k = 0; k < d.n(); ++k) {
    const double beta = 1.0 / static_cast<double>(k + 2);
    const double beta_next = 1.0 / static_cast<double>(k + 3);
    if (k == 0) d.charge_forward();
    Vec base = beta * z0 + (1.0 - beta) * z;
    v = base - a * Bv;
    Bv = d.B(v);
    z = base - a * Bv;
    const double Ma2 = M * a * a;
    a = a * beta_next * (1.0 - beta * beta - Ma2) / ((1.0 - Ma2) * beta * (1.0 - beta));
    if (!(a > 0.0) || !(1.0 - M * a * a > 0.0)) {
      throw Error(ErrorCode::StepSizeCollapse, "APS_V step size collapsed at k = " + std::to_string(k + 1));
    }
    d.aux("v", v);
    d.aux("B_v", Bv);
    d.scalar("beta", beta);
    d.scalar("alpha", a);
    Bz = d.B_free(z);
    if (d.record(z, Bz.norm(), &Bz)) break;
  }
  return d.finish();
}

ResolventOptions resolvent_options(const AlgorithmConfig& c) {
  ResolventOptions opts;
  opts.tolerance = c.resolvent_tolerance;
  opts.max_inner_iterations = c.inner_budget;
  return opts;
}

// Halpern iteration w_{k+1/2} = b_k w_0 + (1-b_k) w_k, w_{k+1} = T w_{k+1/2}
// on T = J_{alpha B}. Row k stores w_k with residual ||w_{k+1/2} - T w_{k+1/2}||,
// so the final row costs one uncharged resolvent call.
template <class Anchor>
IterateTrace run_halpern(Driver& d, const AlgorithmConfig& c, Anchor anchor) {
  const Resolvent T(d.problem().B, d.alpha(), resolvent_options(c));
  const Vec& w0 = d.z0();
  Vec w = w0;
  for (long k = 0;; ++k) {
    const double beta = anchor.beta();
    Vec half = beta * w0 + (1.0 - beta) * w;
    ResolventOutput Th = T.apply(half);
    if (d.record(w, (half - Th.point).norm()) || k == d.n()) break;
    d.charge_resolvent();
    d.charge_forward(Th.forward_evaluations);
    d.aux("half", half);
    d.scalar("beta", beta);
    w = std::move(Th.point);
    anchor.advance();
  }
  return d.finish();
}

struct HarmonicAnchor {
  double beta() const { return 1.0 / static_cast<double>(k + 1); }
  void advance() { ++k; }
  long k = 0;
};

// u_{k+1} = u_0/(k+2) + (1 - 1/(k+2)) T u_k; u_k coincides with w_{k+1/2}.
IterateTrace run_ohm_shifted(Driver& d, const AlgorithmConfig& c) {
  const Resolvent T(d.problem().B, d.alpha(), resolvent_options(c));
  const Vec& u0 = d.z0();
  Vec u = u0;
  for (long k = 0;; ++k) {
    ResolventOutput Tu = T.apply(u);
    if (d.record(u, (u - Tu.point).norm()) || k == d.n()) break;
    d.charge_resolvent();
    d.charge_forward(Tu.forward_evaluations);
    d.aux("T", Tu.point);
    const double beta = 1.0 / static_cast<double>(k + 2);
    d.scalar("beta", beta);
    u = beta * u0 + (1.0 - beta) * Tu.point;
  }
  return d.finish();
}

IterateTrace run_ohm_drs(Driver& d, const AlgorithmConfig& c) {
  const ProblemSpec& p = d.problem();
  const double a = d.alpha();
  const Operator A = p.A ? *p.A : Operator::zero(p.dimension);
  const Resolvent JA(A, a, resolvent_options(c));
  const Resolvent JB(p.B, a, resolvent_options(c));
  const Vec& u0 = d.z0();
  Vec u = u0;
  for (long k = 0;; ++k) {
    ResolventOutput w = JB.apply(u);
    Vec Bw = d.B_free(w.point);
    ResolventOutput pa = JA.apply(w.point - a * Bw);
    // ||u - T_DRS u|| = ||w - J_A(w - a B w)|| = a ||G_a(w)||
    if (d.record(u, (w.point - pa.point).norm()) || k == d.n()) {
      d.aux("w", w.point);
      break;
    }
    d.charge_resolvent(2);
    d.charge_forward(1 + w.forward_evaluations + pa.forward_evaluations);
    d.aux("w", w.point);
    const double beta = 1.0 / static_cast<double>(k + 2);
    d.scalar("beta", beta);
    u = beta * u0 + (1.0 - beta) * (pa.point + a * Bw);
  }
  return d.finish();
}

// Oracle counts of row k hold the calls of outer iteration k: the inner solve
// producing z_k and the prox producing xi_{k+1} (plus the B xi_0 evaluation at k = 0).
IterateTrace run_apg_star(Driver& d, const AlgorithmConfig& c) {
  const ProblemSpec& p = d.problem();
  const double a = d.alpha();
  const Operator A = p.A ? *p.A : Operator::zero(p.dimension);
  const Resolvent JA(A, a, resolvent_options(c));
  const long budget = c.inner_budget.value_or(100000);
  const Vec& xi0 = d.z0();
  const double B_xi0 = d.B(xi0).norm();
  Vec xi = xi0;
  for (long k = 0;; ++k) {
    const double eps = apg_inner_tolerance(B_xi0, p.L, k);
    ShiftedSolveResult inner = solve_shifted_identity(p.B, a, xi, eps, budget);
    if (!inner.converged) {
      throw Error(ErrorCode::InnerLoopBudgetExceeded,
                  "APG_STAR inner loop at k = " + std::to_string(k) + " stopped at residual " +
                      std::to_string(inner.residual) + " > " + std::to_string(eps));
    }
    d.charge_forward(inner.forward_evaluations);
    ResolventOutput pa = JA.apply(inner.z - a * inner.Bz);
    const bool last = k == d.n();
    if (!last) d.charge_resolvent();
    d.aux("z", inner.z);
    d.scalar("epsilon", eps);
    if (d.record(xi, (inner.z - pa.point).norm() / a) || last) break;
    const double beta = 1.0 / static_cast<double>(k + 2);
    d.scalar("beta", beta);
    xi = beta * xi0 + (1.0 - beta) * (pa.point + a * inner.Bz);
  }
  return d.finish();
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  for (const auto& e : kAlgorithms) {
    if (e.id == a) return e.name;
  }
  return "UNKNOWN";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& e : kAlgorithms) {
    if (e.name == name) return e.id;
  }
  throw Error(ErrorCode::UnknownAlgorithm, "unknown algorithm '" + std::string(name) + "'");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all = [] {
    std::vector<Algorithm> v;
    for (const auto& e : kAlgorithms) v.push_back(e.id);
    return v;
  }();
  return all;
}

const std::vector<Vec>& IterateTrace::sequence(const std::string& name) const {
  if (name == "main") return main;
  if (name == "op_evals") return op_evals;
  auto it = aux.find(name);
  if (it == aux.end()) throw Error(ErrorCode::InvalidArgument, "trace has no sequence '" + name + "'");
  return it->second;
}

OracleCount IterateTrace::total_oracle_calls() const {
  OracleCount total;
  for (const auto& c : oracle_counts) {
    total.forward += c.forward;
    total.resolvent += c.resolvent;
  }
  return total;
}

double apg_inner_tolerance(double B_xi0_norm, double L, long k) {
  const double M = 1.0 + (L > 0.0 ? B_xi0_norm / L : 0.0);
  const double k1 = static_cast<double>(k + 1);
  return M / (k1 * k1 * (k1 + 1.0));
}

void validate_config(const AlgorithmConfig& c, const ProblemSpec& p) {
  const std::string name(algorithm_name(c.algorithm));
  if (!(c.alpha > 0.0) || !std::isfinite(c.alpha)) config_error(name + ": alpha must be positive and finite");
  if (c.max_iterations < 0) config_error(name + ": max_iterations must be nonnegative");
  if (c.stop_tolerance && !(*c.stop_tolerance > 0.0)) config_error(name + ": stop_tolerance must be positive");
  if (!(c.resolvent_tolerance > 0.0 && c.resolvent_tolerance < 1.0)) {
    config_error(name + ": resolvent_tolerance must lie in (0, 1)");
  }
  if (c.inner_budget && *c.inner_budget <= 0) config_error(name + ": inner_budget must be positive");
  if (needs_forward(c.algorithm) && !p.B.forward_evaluable()) {
    config_error(name + ": problem operator is not forward-evaluable");
  }
  const bool splitting = c.algorithm == Algorithm::OHM_DRS || c.algorithm == Algorithm::APG_STAR;
  if (p.composite() && !splitting) {
    config_error(name + ": composite problems need OHM_DRS or APG_STAR");
  }
  const double aL = c.alpha * p.L;
  switch (c.algorithm) {
    case Algorithm::FEG:
      if (!(aL < 1.0)) config_error("FEG requires alpha L < 1 (got " + std::to_string(aL) + ")");
      break;
    case Algorithm::SM_EAG_PLUS: {
      const double amax = sm_eag_max_step(p.L, p.mu);
      if (c.alpha > amax * (1.0 + 1e-12)) {
        config_error("SM_EAG_PLUS requires alpha <= (sqrt(L^2+mu^2)+mu)/L^2 = " + std::to_string(amax));
      }
      break;
    }
    case Algorithm::APG_STAR:
      if (!(aL < 1.0)) config_error("APG_STAR requires alpha L < 1 (got " + std::to_string(aL) + ")");
      break;
    case Algorithm::EAG_V:
      if (!(aL < 1.0)) config_error("EAG_V requires alpha_0 L < 1");
      break;
    case Algorithm::APS_V: {
      if (!c.theta || !(*c.theta > 0.0)) config_error("APS_V requires theta > 0");
      const double M = 2.0 * p.L * p.L * (1.0 + *c.theta);
      if (!(M * c.alpha * c.alpha < 1.0)) config_error("APS_V requires 2 L^2 (1 + theta) alpha_0^2 < 1");
      break;
    }
    case Algorithm::AGM: {
      if (!c.momentum_a || !(*c.momentum_a > 2.0)) config_error("AGM requires momentum parameter a > 2");
      const bool gradient = p.B.kind() == OperatorKind::GradientField ||
                            (p.B.affine_form() && p.B.affine_form()->M.isApprox(p.B.affine_form()->M.transpose()));
      if (!gradient || p.n_y != 0) config_error("AGM requires a convex minimization problem");
      break;
    }
    case Algorithm::OC_HALPERN: {
      const double rho = oc_halpern_ratio(c, p);
      if (!(rho > 1.0)) config_error("OC_HALPERN requires gamma > 1 (set gamma or use mu > 0)");
      break;
    }
    default:
      break;
  }
  if (c.algorithm == Algorithm::OHM || c.algorithm == Algorithm::OC_HALPERN || c.algorithm == Algorithm::OHM_DRS) {
    if (p.B.resolvent_capability() == ResolventCapability::None) config_error(name + ": operator has no resolvent");
  }
}

IterateTrace run(const AlgorithmConfig& config, const ProblemSpec& problem, const Vec& z0) {
  validate_config(config, problem);
  require_point(z0, "starting point");
  require_dimension(z0, problem.dimension, "starting point");
  Driver d(config, problem, z0);
  switch (config.algorithm) {
    case Algorithm::GDA: return run_gda(d);
    case Algorithm::EG: return run_eg(d);
    case Algorithm::OG: return run_og(d);
    case Algorithm::AGM: return run_agm(d, *config.momentum_a);
    case Algorithm::EAG: return run_eag(d);
    case Algorithm::EAG_V: return run_eag_v(d);
    case Algorithm::FEG: return run_feg(d);
    case Algorithm::APS: return run_aps(d);
    case Algorithm::APS_V: return run_aps_v(d, *config.theta);
    case Algorithm::OHM:
      if (config.ohm_form == OhmForm::Shifted) return run_ohm_shifted(d, config);
      return run_halpern(d, config, HarmonicAnchor{});
    case Algorithm::OC_HALPERN:
      return run_halpern(d, config, GeometricAnchor(oc_halpern_ratio(config, problem)));
    case Algorithm::SM_EAG_PLUS: return run_sm_eag_plus(d);
    case Algorithm::OHM_DRS: return run_ohm_drs(d, config);
    case Algorithm::APG_STAR: return run_apg_star(d, config);
  }
  throw Error(ErrorCode::UnknownAlgorithm, "unhandled algorithm");
}

}  // namespace mergepath
