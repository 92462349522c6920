#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mergepath/algorithm.hpp"

namespace mergepath::cli {

struct Figure1Path {
  std::string label;  // "EAG", "AGM_a3", ...
  bool anchored = false;
  std::optional<IterateTrace> trace;
  std::string error;  // set when the path left the domain
};

struct Figure1Result {
  std::vector<Figure1Path> paths;
  long compare_k = 50;
  double threshold = 0.0;
  // Euclidean distances at compare_k keyed by "A|B".
  std::map<std::string, double> pairwise;
  double anchored_max = 0.0;
  double agm_min = 0.0;
};

// Anchored methods (EAG, FEG, APS, OHM) at alpha = 0.1 and AGM with
// a in {3, 5, 9} at alpha = 0.025, all from (-2, 3).
Figure1Result figure1_experiment(long iterations = 200, long compare_k = 50);

// Merge threshold: 1e-3 times the norm of the start point.
double figure1_threshold();

// Writes <dir>/<label>.csv per path and <dir>/figure1_summary.json.
void write_figure1(const Figure1Result& result, const std::string& dir);
std::string figure1_summary_json(const Figure1Result& result);

}  // namespace mergepath::cli
