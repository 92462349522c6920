#include "mergepath/cli/figure1.hpp"

#include <filesystem>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mergepath/error.hpp"
#include "mergepath/serialization.hpp"

namespace mergepath::cli {

double figure1_threshold() { return 1e-3; }

Figure1Result figure1_experiment(long iterations, long compare_k) {
  const ProblemSpec p = make_figure1();
  const Vec z0 = *p.default_start;
  Figure1Result out;
  out.compare_k = compare_k;
  out.threshold = figure1_threshold();

  auto add = [&](std::string label, bool anchored, AlgorithmConfig c) {
    c.max_iterations = iterations;
    Figure1Path path;
    path.label = std::move(label);
    path.anchored = anchored;
    try {
      path.trace = run(c, p, z0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainViolation) throw;
      path.error = e.what();
    }
    out.paths.push_back(std::move(path));
  };

  for (Algorithm a : {Algorithm::EAG, Algorithm::FEG, Algorithm::APS, Algorithm::OHM}) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.alpha = p.step_defaults.at("anchored");
    add(std::string(algorithm_name(a)), true, c);
  }
  for (double a : {3.0, 5.0, 9.0}) {
    AlgorithmConfig c;
    c.algorithm = Algorithm::AGM;
    c.alpha = p.step_defaults.at("AGM");
    c.momentum_a = a;
    add("AGM_a" + std::to_string(static_cast<int>(a)), false, c);
  }

  out.anchored_max = 0.0;
  out.agm_min = std::numeric_limits<double>::infinity();
  const auto k = static_cast<std::size_t>(compare_k);
  for (std::size_t i = 0; i < out.paths.size(); ++i) {
    for (std::size_t j = i + 1; j < out.paths.size(); ++j) {
      const Figure1Path& a = out.paths[i];
      const Figure1Path& b = out.paths[j];
      if (a.anchored != b.anchored) continue;
      double dist = std::numeric_limits<double>::infinity();
      if (a.trace && b.trace && a.trace->main.size() > k && b.trace->main.size() > k) {
        dist = (a.trace->main[k] - b.trace->main[k]).norm();
      }
      out.pairwise[a.label + "|" + b.label] = dist;
      if (a.anchored) {
        out.anchored_max = std::max(out.anchored_max, dist);
      } else {
        out.agm_min = std::min(out.agm_min, dist);
      }
    }
  }
  return out;
}

std::string figure1_summary_json(const Figure1Result& r) {
  nlohmann::json j;
  j["compare_k"] = r.compare_k;
  j["threshold"] = r.threshold;
  j["threshold_rule"] = "absolute Euclidean distance";
  j["anchored_max_distance"] = r.anchored_max;
  j["agm_min_distance"] = std::isfinite(r.agm_min) ? nlohmann::json(r.agm_min) : nlohmann::json(nullptr);
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [name, d] : r.pairwise) {
    pairs[name] = std::isfinite(d) ? nlohmann::json(d) : nlohmann::json(nullptr);
  }
  j["pairwise_distance_at_k"] = pairs;
  nlohmann::json paths = nlohmann::json::object();
  for (const Figure1Path& p : r.paths) {
    nlohmann::json e;
    e["anchored"] = p.anchored;
    if (p.trace) {
      e["start"] = {p.trace->main.front()[0], p.trace->main.front()[1]};
      e["iterations"] = p.trace->iterations;
    }
    if (!p.error.empty()) e["error"] = p.error;
    paths[p.label] = e;
  }
  j["paths"] = paths;
  j["merged"] = r.anchored_max <= r.threshold;
  j["agm_separated"] = r.agm_min > r.threshold;
  return j.dump(2) + "\n";
}

void write_figure1(const Figure1Result& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir + "': " + ec.message());
  for (const Figure1Path& p : r.paths) {
    if (!p.trace) continue;
    std::ostringstream os;
    write_trace_csv(os, *p.trace);
    write_text_file((std::filesystem::path(dir) / (p.label + ".csv")).string(), os.str());
  }
  write_text_file((std::filesystem::path(dir) / "figure1_summary.json").string(), figure1_summary_json(r));
}

}  // namespace mergepath::cli
