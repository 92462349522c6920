#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mergepath/analysis.hpp"

namespace mergepath {

// Shortest text that parses back to the same double (17 significant digits).
std::string format_double(double x);

// Columns k, z_0..z_{d-1}, residual_norm, oracle_B_count, oracle_resolvent_count.
// Needs a trace recorded at TraceLevel::Full.
void write_trace_csv(std::ostream& os, const IterateTrace& trace);
// Restores main, residual_norms, oracle_counts, iterations and final_point.
// Throws ParseError on malformed input.
IterateTrace read_trace_csv(std::istream& is);

// Columns k, measured, bound, ratio.
void write_bound_csv(std::ostream& os, const BoundReport& report);

// Columns k, sq_distance, k2_sq_distance, bound, ratio; bound and ratio are
// empty for indices the report skips.
void write_mp_csv(std::ostream& os, const std::vector<double>& sq_distance, const BoundReport& report);

// JSON objects with sorted keys.
std::string to_json(const BoundReport& report, int indent = 2);
std::string to_json(const LyapunovTrace& trace, int indent = 2);

// Writes text to a file with LF line endings; IoError on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace mergepath
