#include "mergepath/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mergepath/error.hpp"

namespace mergepath {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    // from_chars rejects "inf"/"nan" spellings produced by printf on some platforms.
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    parse_error("bad number '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) parse_error("bad integer '" + s + "'");
  return v;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const IterateTrace& t) {
  if (t.main.size() != t.length()) {
    throw Error(ErrorCode::InvalidArgument, "trace CSV needs a trace recorded at full level");
  }
  const Index d = t.main.empty() ? 0 : t.main.front().size();
  os << "k";
  for (Index i = 0; i < d; ++i) os << ",z_" << i;
  os << ",residual_norm,oracle_B_count,oracle_resolvent_count\n";
  for (std::size_t k = 0; k < t.length(); ++k) {
    os << k;
    for (Index i = 0; i < d; ++i) os << ',' << format_double(t.main[k][i]);
    os << ',' << format_double(t.residual_norms[k]) << ',' << t.oracle_counts[k].forward << ','
       << t.oracle_counts[k].resolvent << '\n';
  }
}

IterateTrace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) parse_error("empty trace CSV");
  const std::vector<std::string> header = split(line);
  if (header.size() < 4 || header.front() != "k" || header[header.size() - 3] != "residual_norm" ||
      header[header.size() - 2] != "oracle_B_count" || header.back() != "oracle_resolvent_count") {
    parse_error("unexpected trace CSV header");
  }
  const std::size_t d = header.size() - 4;
  IterateTrace t;
  long expected = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != header.size()) parse_error("row " + std::to_string(expected) + " has the wrong field count");
    if (parse_long(f[0]) != expected) parse_error("row indices are not consecutive");
    Vec z(static_cast<Index>(d));
    for (std::size_t i = 0; i < d; ++i) z[static_cast<Index>(i)] = parse_double(f[1 + i]);
    t.main.push_back(std::move(z));
    t.residual_norms.push_back(parse_double(f[d + 1]));
    t.oracle_counts.push_back({parse_long(f[d + 2]), parse_long(f[d + 3])});
    ++expected;
  }
  if (t.main.empty()) parse_error("trace CSV has no rows");
  t.iterations = static_cast<long>(t.main.size()) - 1;
  t.final_point = t.main.back();
  return t;
}

void write_bound_csv(std::ostream& os, const BoundReport& r) {
  os << "k,measured,bound,ratio\n";
  for (std::size_t i = 0; i < r.ks.size(); ++i) {
    os << r.ks[i] << ',' << format_double(r.measured[i]) << ',' << format_double(r.bound[i]) << ','
       << format_double(r.measured[i] / r.bound[i]) << '\n';
  }
}

void write_mp_csv(std::ostream& os, const std::vector<double>& sq_distance, const BoundReport& r) {
  os << "k,sq_distance,k2_sq_distance,bound,ratio\n";
  std::size_t j = 0;
  for (std::size_t k = 0; k < sq_distance.size(); ++k) {
    const double kk = static_cast<double>(k);
    os << k << ',' << format_double(sq_distance[k]) << ',' << format_double(kk * kk * sq_distance[k]) << ',';
    while (j < r.ks.size() && r.ks[j] < static_cast<long>(k)) ++j;
    if (j < r.ks.size() && r.ks[j] == static_cast<long>(k)) {
      os << format_double(r.bound[j]) << ',' << format_double(r.measured[j] / r.bound[j]);
    } else {
      os << ',';
    }
    os << '\n';
  }
}

std::string to_json(const BoundReport& r, int indent) {
  json j;
  j["label"] = r.label;
  j["ks"] = r.ks;
  j["measured"] = numbers(r.measured);
  j["bound"] = numbers(r.bound);
  j["max_ratio"] = number(r.max_ratio);
  j["argmax_k"] = r.argmax_k;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["tolerance"] = r.tolerance;
  j["abs_floor"] = r.abs_floor;
  j["first_k"] = r.first_k;
  json c = json::object();
  for (const auto& [k, v] : r.constants) c[k] = number(v);
  j["constants"] = c;
  j["note"] = r.note;
  return j.dump(indent);
}

std::string to_json(const LyapunovTrace& t, int indent) {
  json j;
  j["label"] = t.label;
  j["values"] = numbers(t.values);
  j["decrements"] = numbers(t.decrements);
  j["certified_lower"] = numbers(t.certified_lower);
  j["slack"] = t.slack;
  j["values_nonnegative"] = t.values_nonnegative;
  j["decrements_certified"] = t.decrements_certified;
  j["first_violation_k"] = t.first_violation_k;
  j["verdict"] = t.pass ? "pass" : "fail";
  return j.dump(indent);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mergepath
