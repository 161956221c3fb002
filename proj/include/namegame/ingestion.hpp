#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "namegame/errors.hpp"
#include "namegame/population.hpp"
#include "namegame/text.hpp"

namespace namegame {

// One line of a yobYYYY.txt file: "name,sex,count", no header.
struct SsaRecord {
  std::string name;
  char sex = 'F';  // 'F' or 'M'
  std::uint64_t count = 0;

  bool operator==(const SsaRecord&) const = default;
};

enum class ParseMode { strict, lenient };

struct SsaParseResult {
  std::vector<SsaRecord> records;
  std::size_t skipped = 0;  // malformed lines dropped in lenient mode
};

namespace detail {

inline bool parse_ssa_line(std::string_view line, SsaRecord& out, std::string& why) {
  auto fields = split(line, ',');
  if (fields.size() != 3) {
    why = "expected 3 fields, got " + std::to_string(fields.size());
    return false;
  }
  if (fields[0].empty()) {
    why = "empty name";
    return false;
  }
  if (fields[1] != "F" && fields[1] != "M") {
    why = "sex must be F or M, got '" + std::string(fields[1]) + "'";
    return false;
  }
  std::uint64_t count = 0;
  const char* first = fields[2].data();
  const char* last = first + fields[2].size();
  auto [ptr, ec] = std::from_chars(first, last, count);
  if (ec != std::errc() || ptr != last || fields[2].empty()) {
    why = "count must be a non-negative integer, got '" + std::string(fields[2]) + "'";
    return false;
  }
  out = {std::string(fields[0]), fields[1][0], count};
  return true;
}

}  // namespace detail

// Strict mode throws on the first malformed line; lenient mode drops
// malformed lines and reports how many.
inline SsaParseResult parse_ssa_year(std::istream& in,
                                     ParseMode mode = ParseMode::strict) {
  SsaParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    SsaRecord record;
    std::string why;
    if (detail::parse_ssa_line(line, record, why)) {
      result.records.push_back(std::move(record));
    } else if (mode == ParseMode::strict) {
      throw parse_error(line_no, "ssa: " + why);
    } else {
      ++result.skipped;
    }
  }
  return result;
}

inline void serialize_ssa(std::span<const SsaRecord> records, std::ostream& out) {
  for (const SsaRecord& r : records)
    out << r.name << ',' << r.sex << ',' << r.count << '\n';
}

enum class SexFilter { female, male, all };

inline SexFilter parse_sex_filter(std::string_view s) {
  if (s == "F" || s == "f" || s == "female") return SexFilter::female;
  if (s == "M" || s == "m" || s == "male") return SexFilter::male;
  if (s == "all") return SexFilter::all;
  throw invalid_input("sex filter must be F, M, or all, got '" + std::string(s) + "'");
}

// Empirical table: each name's frequency is its summed birth count over the
// filtered records divided by the filtered total. With filter all, the same
// name appearing under both sexes merges.
inline NameTable build_table(std::span<const SsaRecord> records, SexFilter filter) {
  std::unordered_map<std::string, std::uint64_t> sums;
  std::uint64_t total = 0;
  for (const SsaRecord& r : records) {
    if (filter == SexFilter::female && r.sex != 'F') continue;
    if (filter == SexFilter::male && r.sex != 'M') continue;
    sums[r.name] += r.count;
    total += r.count;
  }
  if (total == 0)
    throw insufficient_data("build table: no births after sex filter");
  std::vector<NameEntry> entries;
  entries.reserve(sums.size());
  for (const auto& [name, count] : sums)
    entries.push_back(
        {name, static_cast<double>(count) / static_cast<double>(total)});
  return NameTable(std::move(entries), 0);
}

// --- Popularity statistics over externally supplied name lists.

struct ListStats {
  double mean = 0.0;
  double std = 0.0;  // sample (n-1) standard deviation; 0 when n = 1
  std::size_t n = 0;
};

struct NameListStats {
  ListStats stats;
  std::size_t missing = 0;  // names scored as frequency 0
};

namespace detail {

inline std::string fold_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

// Mean and sample std of the listed names' frequencies. Absent names count
// as frequency 0 so a list always yields a total; they are tallied in
// missing. With fold_case, matching is ASCII case-insensitive and the
// highest-ranked table entry wins a folded collision.
inline NameListStats name_list_stats(const NameTable& table,
                                     std::span<const std::string> names,
                                     bool fold_case = false) {
  if (names.empty()) throw invalid_input("name list stats: empty list");
  std::unordered_map<std::string, double> folded;
  if (fold_case)
    for (const NameEntry& e : table.entries())
      folded.emplace(detail::fold_ascii(e.name), e.frequency);
  NameListStats result;
  std::vector<double> freqs;
  freqs.reserve(names.size());
  for (const std::string& name : names) {
    double f = 0.0;
    if (fold_case) {
      auto it = folded.find(detail::fold_ascii(name));
      if (it != folded.end())
        f = it->second;
      else
        ++result.missing;
    } else if (table.contains(name)) {
      f = table.frequency_of(name);
    } else {
      ++result.missing;
    }
    freqs.push_back(f);
  }
  double n = static_cast<double>(freqs.size());
  double mean = 0.0;
  for (double f : freqs) mean += f;
  mean /= n;
  double ss = 0.0;
  for (double f : freqs) ss += (f - mean) * (f - mean);
  result.stats = {mean, freqs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0,
                  freqs.size()};
  return result;
}

// --- Welch's unequal-variance t-test.

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double betacf(double a, double b, double x) {
  constexpr double fpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 3e-16) break;
  }
  return h;
}

inline double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// t, Welch-Satterthwaite df, and the exact two-sided p from the t CDF
// (regularized incomplete beta). Zero-variance inputs: equal means give the
// conventional (0, n_a+n_b-2, 1); different means have no finite statistic.
inline WelchResult welch_t_test(const ListStats& a, const ListStats& b) {
  if (a.n < 2 || b.n < 2)
    throw invalid_input("welch: both samples need n >= 2");
  double na = static_cast<double>(a.n), nb = static_cast<double>(b.n);
  double sa = a.std * a.std / na;
  double sb = b.std * b.std / nb;
  double se2 = sa + sb;
  if (se2 == 0.0) {
    if (a.mean == b.mean) return {0.0, na + nb - 2.0, 1.0};
    throw invalid_input("welch: zero variance with different means (infinite t)");
  }
  double t = (a.mean - b.mean) / std::sqrt(se2);
  double df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  double p = detail::reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
  return {t, df, p};
}

}  // namespace namegame
