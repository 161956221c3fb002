#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "namegame/errors.hpp"

namespace namegame {

// Shortest decimal form that round-trips a double exactly (17 significant
// digits cover every case). Used everywhere a frequency is serialized so
// write -> read -> write is byte-identical.
inline std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double parse_double(std::string_view s, const char* what) {
  std::string t(trim(s));
  if (t.empty()) throw invalid_input(std::string(what) + ": empty number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw invalid_input(std::string(what) + ": not a number: '" + t + "'");
  }
  if (used != t.size())
    throw invalid_input(std::string(what) + ": trailing junk in '" + t + "'");
  return v;
}

// Accepts "0.001", "1e-3", and percent forms like "0.1%" (meaning 0.001).
// The result must land in [0, 1].
inline double parse_proportion(std::string_view s, const char* what = "proportion") {
  std::string_view t = trim(s);
  double scale = 1.0;
  if (!t.empty() && t.back() == '%') {
    t.remove_suffix(1);
    scale = 0.01;
  }
  double v = parse_double(t, what) * scale;
  if (!(v >= 0.0 && v <= 1.0))
    throw invalid_domain(std::string(what) + ": " + format_double(v) +
                         " outside [0, 1]");
  return v;
}

}  // namespace namegame
