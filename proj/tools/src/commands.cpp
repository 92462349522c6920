#include "mergepath/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mergepath/analysis.hpp"
#include "mergepath/cli/config.hpp"
#include "mergepath/cli/figure1.hpp"
#include "mergepath/cli/suites.hpp"
#include "mergepath/error.hpp"
#include "mergepath/reference.hpp"
#include "mergepath/serialization.hpp"

namespace mergepath::cli {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Runs every algorithm of the config; runs are independent, so they go in parallel.
std::vector<IterateTrace> run_all(const ExperimentConfig& cfg) {
  std::vector<std::future<IterateTrace>> jobs;
  jobs.reserve(cfg.algorithms.size());
  for (const AlgorithmEntry& e : cfg.algorithms) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &e] { return run(e.config, cfg.problem, cfg.start); }));
  }
  std::vector<IterateTrace> traces;
  traces.reserve(jobs.size());
  for (auto& j : jobs) traces.push_back(j.get());
  return traces;
}

std::size_t index_of(const ExperimentConfig& cfg, const OutputSpec& o) {
  if (o.algorithm.empty()) {
    if (cfg.algorithms.size() != 1) {
      throw Error(ErrorCode::ConfigError, "output '" + o.path + "' must name an algorithm");
    }
    return 0;
  }
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    if (cfg.algorithms[i].label == o.algorithm) return i;
  }
  throw Error(ErrorCode::ConfigError, "output refers to unknown algorithm '" + o.algorithm + "'");
}

std::string trace_csv(const IterateTrace& t) {
  std::ostringstream os;
  write_trace_csv(os, t);
  return os.str();
}

bool is_splitting_rule(RateRule r) { return r == RateRule::APG_RESIDUAL || r == RateRule::OHM_DRS_RATE; }

void print_report(std::ostream& out, const BoundReport& r) {
  out << r.label << ": " << (r.pass ? "PASS" : "FAIL") << "  max ratio " << fmt(r.max_ratio);
  if (r.argmax_k >= 0) out << " at k=" << r.argmax_k;
  out << '\n';
  for (const auto& [name, value] : r.constants) out << "  " << name << " = " << fmt(value) << '\n';
  if (!r.pass) {
    const std::vector<double> ratios = r.ratios();
    int shown = 0;
    for (std::size_t i = 0; i < r.ks.size() && shown < 10; ++i) {
      if (r.measured[i] > r.abs_floor && ratios[i] > 1.0 + r.tolerance) {
        out << "  violation at k=" << r.ks[i] << " ratio " << fmt(ratios[i]) << '\n';
        ++shown;
      }
    }
  }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    print_error(err, std::string(error_code_name(e.code())), e.what());
  } catch (const std::exception& e) {
    print_error(err, "INTERNAL_ERROR", e.what());
  }
  return kExitUsage;
}

struct PairResult {
  BoundReport report;
  std::vector<double> sq_distance;
};

bool is(const IterateTrace& t, Algorithm a) { return t.algorithm == a; }

PairResult compare_pair(const ExperimentConfig& cfg, const IterateTrace& a, const IterateTrace& b) {
  const ProblemSpec& p = cfg.problem;
  const AlgorithmConfig& ca = cfg.algorithms[0].config;
  const AlgorithmConfig& cb = cfg.algorithms[1].config;
  PairResult out;
  auto forward_first = [&](Algorithm forward, Algorithm partner) -> std::optional<std::pair<const IterateTrace*, const IterateTrace*>> {
    if (is(a, forward) && is(b, partner)) return std::pair{&a, &b};
    if (is(b, forward) && is(a, partner)) return std::pair{&b, &a};
    return std::nullopt;
  };

  if (a.algorithm == b.algorithm && ca.alpha == cb.alpha) {
    out.sq_distance = mp_distance(a, b);
    BoundReport& r = out.report;
    r.label = std::string(algorithm_name(a.algorithm)) + " paired with itself";
    for (std::size_t k = 0; k < out.sq_distance.size(); ++k) {
      r.ks.push_back(static_cast<long>(k));
      r.measured.push_back(static_cast<double>(k * k) * out.sq_distance[k]);
      r.bound.push_back(0.0);
    }
    r.note = "identical runs; every distance must vanish";
    finalize(r);
    return out;
  }
  if (auto pr = forward_first(Algorithm::FEG, Algorithm::OHM)) {
    const Vec z_star = halpern_reference(p, cfg.start);
    out.sq_distance = mp_distance(*pr->first, *pr->second);
    out.report = mp_bound_feg_ohm(*pr->first, *pr->second, p, z_star);
    return out;
  }
  for (Algorithm f : {Algorithm::EAG, Algorithm::APS}) {
    if (auto pr = forward_first(f, Algorithm::OHM)) {
      out.sq_distance = mp_distance(*pr->first, *pr->second);
      out.report = mp_recursion_check(*pr->first, *pr->second);
      const double r = pr->first->alpha * p.L;
      if (auto failure = summability_positivity_failure(f, r)) {
        out.report.note += "; summability constant not certified at alpha L = " + fmt(r) + " (" + *failure + ")";
      } else {
        out.report.constants["summability_C"] = summability_constant_formula(f, r);
      }
      return out;
    }
  }
  if (auto pr = forward_first(Algorithm::SM_EAG_PLUS, Algorithm::OC_HALPERN)) {
    const Vec z_star = halpern_reference(p, cfg.start);
    out.sq_distance = mp_distance(*pr->first, *pr->second);
    out.report = sm_eag_oc_halpern_mp(*pr->first, *pr->second, p, z_star, cfg.mp_eps);
    return out;
  }
  if (auto pr = forward_first(Algorithm::APG_STAR, Algorithm::OHM_DRS)) {
    const Vec xi_star = drs_fixed_point_reference(p, pr->first->alpha, cfg.start);
    const std::vector<double> d_main = mp_distance(*pr->first, *pr->second);
    const std::vector<double> d_res = mp_distance(*pr->first, *pr->second, "z", "w");
    out.sq_distance.resize(d_main.size());
    for (std::size_t k = 0; k < d_main.size(); ++k) out.sq_distance[k] = std::max(d_main[k], d_res[k]);
    out.report = mp_bound_apg(*pr->first, *pr->second, p, xi_star);
    return out;
  }
  throw Error(ErrorCode::ConfigError, "no merging-path rule for the pair " + std::string(algorithm_name(a.algorithm)) +
                                          "/" + std::string(algorithm_name(b.algorithm)));
}

}  // namespace

void print_error(std::ostream& err, const std::string& code, const std::string& message) {
  nlohmann::json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  err << j.dump() << '\n';
}

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_experiment_config(config_path);
    const std::vector<IterateTrace> traces = run_all(cfg);

    std::vector<std::pair<std::string, std::string>> files;
    for (const OutputSpec& o : cfg.outputs) {
      const std::size_t i = index_of(cfg, o);
      const IterateTrace& t = traces[i];
      if (o.kind == "trace_csv") {
        files.emplace_back(o.path, trace_csv(t));
      } else if (o.kind == "bound_json") {
        if (o.rule.empty()) throw Error(ErrorCode::ConfigError, "bound_json output '" + o.path + "' needs a rule");
        const RateRule rule = parse_rate_rule(o.rule);
        std::optional<Vec> ref;
        if (is_splitting_rule(rule)) ref = drs_fixed_point_reference(cfg.problem, t.alpha, cfg.start);
        files.emplace_back(o.path, to_json(rate_bound(t, cfg.problem, rule, ref, cfg.algorithms[i].config.gamma)));
      } else {
        throw Error(ErrorCode::ConfigError, "output kind '" + o.kind + "' belongs to `compare`");
      }
    }
    for (const auto& [path, text] : files) write_text_file(path, text);

    for (std::size_t i = 0; i < traces.size(); ++i) {
      const IterateTrace& t = traces[i];
      const OracleCount c = t.total_oracle_calls();
      out << cfg.algorithms[i].label << ": " << t.iterations << " iterations"
          << (t.stopped_early ? " (stopped at tolerance)" : "") << ", final residual "
          << fmt(t.residual_norms.back()) << ", oracle calls " << c.forward << " forward / " << c.resolvent
          << " resolvent\n";
    }
    return kExitOk;
  });
}

int cmd_compare(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_experiment_config(config_path);
    if (cfg.algorithms.size() != 2) throw Error(ErrorCode::ConfigError, "compare needs exactly two algorithms");
    const std::vector<IterateTrace> traces = run_all(cfg);
    const PairResult res = compare_pair(cfg, traces[0], traces[1]);

    std::vector<std::pair<std::string, std::string>> files;
    for (const OutputSpec& o : cfg.outputs) {
      if (o.kind == "mp_csv") {
        std::ostringstream os;
        write_mp_csv(os, res.sq_distance, res.report);
        files.emplace_back(o.path, os.str());
      } else if (o.kind == "bound_json") {
        files.emplace_back(o.path, to_json(res.report));
      } else {
        files.emplace_back(o.path, trace_csv(traces[index_of(cfg, o)]));
      }
    }
    for (const auto& [path, text] : files) write_text_file(path, text);

    print_report(out, res.report);
    return res.report.pass ? kExitOk : kExitVerifyFail;
  });
}

int cmd_figure1(const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Figure1Result r = figure1_experiment();
    write_figure1(r, out_dir);
    for (const Figure1Path& p : r.paths) {
      out << std::left << std::setw(8) << p.label << (p.anchored ? " anchored" : " AGM     ");
      if (p.trace) {
        const Vec& z = p.trace->main[static_cast<std::size_t>(r.compare_k)];
        out << "  z_" << r.compare_k << " = (" << fmt(z[0]) << ", " << fmt(z[1]) << ")\n";
      } else {
        out << "  " << p.error << '\n';
      }
    }
    const bool merged = r.anchored_max <= r.threshold;
    const bool separated = r.agm_min > r.threshold;
    out << "threshold " << fmt(r.threshold) << ", anchored max distance " << fmt(r.anchored_max)
        << (merged ? " (merged)" : " (NOT merged)") << ", AGM min distance " << fmt(r.agm_min)
        << (separated ? " (separated)" : " (NOT separated)") << '\n';
    out << "wrote " << out_dir << '\n';
    return merged && separated ? kExitOk : kExitVerifyFail;
  });
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else if (has_suite(suite)) {
    names = {suite};
  } else {
    print_error(err, "UNKNOWN_SUITE", "no suite named '" + suite + "'");
    return kExitUsage;
  }
  bool all_pass = true;
  for (const std::string& name : names) {
    const SuiteResult r = run_suite(name);
    out << "== " << r.name << " (criterion " << r.criterion << "): " << r.title << '\n';
    for (const Check& c : r.checks) {
      out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) out << "  " << c.detail;
      out << '\n';
    }
    for (const std::string& line : r.reports) out << "  [INFO] " << line << '\n';
    out << "  " << (r.checks_pass() ? "PASS" : "FAIL") << " in " << fmt(r.seconds) << " s (budget "
        << fmt(r.budget_seconds) << " s)\n";
    all_pass = all_pass && r.checks_pass();
  }
  return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace mergepath::cli
