#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "namegame/errors.hpp"
#include "namegame/population.hpp"
#include "namegame/text.hpp"

namespace namegame {

// --- How far one parent landed from what they asked for.

struct ErrorTriple {
  double ratio = 0.0;     // achieved / desired
  double absdiff = 0.0;   // |achieved - desired|
  double relerror = 0.0;  // absdiff / desired
};

inline ErrorTriple parent_error(double desired, double achieved) {
  if (!(desired > 0.0) || !std::isfinite(desired))
    throw invalid_domain("parent error: desired popularity must be positive");
  if (!(achieved >= 0.0) || !std::isfinite(achieved))
    throw invalid_domain("parent error: achieved popularity must be non-negative");
  double absdiff = std::fabs(achieved - desired);
  return {achieved / desired, absdiff, absdiff / desired};
}

// --- Fixed-edge histograms. Out-of-range values clamp into the end bins so
// counts always sum to the sample size.

enum class BinScale { linear, log };

struct Histogram {
  std::vector<double> edges;          // bin i spans [edges[i], edges[i+1])
  std::vector<std::uint64_t> counts;  // edges.size() - 1 entries
  BinScale scale = BinScale::linear;
};

inline void check_edges(const std::vector<double>& edges) {
  if (edges.size() < 2) throw invalid_input("histogram: need at least 2 edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i - 1] < edges[i]))
      throw invalid_input("histogram: edges must be strictly ascending");
}

inline std::vector<double> linear_edges(double lo, double hi, std::size_t n_bins) {
  if (n_bins == 0) throw invalid_domain("histogram: n_bins must be positive");
  if (!(lo < hi)) throw invalid_domain("histogram: lo must be below hi");
  std::vector<double> edges(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i)
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
  return edges;
}

inline std::vector<double> log_edges(double lo, double hi, std::size_t n_bins) {
  if (!(lo > 0.0)) throw invalid_domain("histogram: log edges need lo > 0");
  if (n_bins == 0) throw invalid_domain("histogram: n_bins must be positive");
  if (!(lo < hi)) throw invalid_domain("histogram: lo must be below hi");
  std::vector<double> edges(n_bins + 1);
  double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i <= n_bins; ++i)
    edges[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                  static_cast<double>(n_bins));
  edges.front() = lo;
  edges.back() = hi;
  return edges;
}

inline std::size_t bin_of(const std::vector<double>& edges, double value) {
  if (value < edges.front()) return 0;
  if (value >= edges.back()) return edges.size() - 2;
  auto it = std::upper_bound(edges.begin(), edges.end(), value);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

inline Histogram histogram(std::span<const double> values, std::vector<double> edges,
                           BinScale scale = BinScale::linear) {
  check_edges(edges);
  Histogram h{std::move(edges), {}, scale};
  h.counts.assign(h.edges.size() - 1, 0);
  for (double v : values) ++h.counts[bin_of(h.edges, v)];
  return h;
}

inline void write_histogram_csv(const Histogram& h, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1])
        << ',' << h.counts[i] << '\n';
}

// All three error facets over a batch of outcomes. Outcomes with desired = 0
// have no ratio or relative error; they are skipped and counted.
struct ErrorHistograms {
  Histogram ratio;
  Histogram absdiff;
  Histogram relerror;
  std::size_t skipped = 0;
};

inline ErrorHistograms error_histograms(std::span<const ParentOutcome> outcomes,
                                        const std::vector<double>& edges,
                                        BinScale scale = BinScale::linear) {
  std::vector<double> r, a, e;
  r.reserve(outcomes.size());
  a.reserve(outcomes.size());
  e.reserve(outcomes.size());
  std::size_t skipped = 0;
  for (const ParentOutcome& o : outcomes) {
    if (o.desired == 0.0) {
      ++skipped;
      continue;
    }
    ErrorTriple t = parent_error(o.desired, o.achieved);
    r.push_back(t.ratio);
    a.push_back(t.absdiff);
    e.push_back(t.relerror);
  }
  return {histogram(r, edges, scale), histogram(a, edges, scale),
          histogram(e, edges, scale), skipped};
}

// --- Rank agreement between two tables over the same name universe.

namespace detail {

// Average ranks (1-based) of values, highest value gets rank 1. Equal
// values share the mean of the positions they occupy.
inline std::vector<double> average_ranks(const std::vector<double>& values,
                                         bool* has_ties) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    if (j > i && has_ties) *has_ties = true;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Spearman rank correlation of the two frequency vectors, ties averaged.
// Exactly +1 for identical rankings and -1 for full reversals when
// tie-free (integer arithmetic, no rounding residue).
inline double spearman(const NameTable& a, const NameTable& b) {
  if (!a.same_universe(b))
    throw invalid_input("spearman: tables cover different name universes");
  std::size_t n = a.size();
  if (n < 2) throw invalid_input("spearman: need at least 2 names");
  std::vector<double> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = a.entries()[i].frequency;
    fb[i] = b.frequency_of(a.entries()[i].name);
  }
  bool ties = false;
  std::vector<double> ra = detail::average_ranks(fa, &ties);
  std::vector<double> rb = detail::average_ranks(fb, &ties);
  if (!ties) {
    double sum_d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = ra[i] - rb[i];
      sum_d2 += d * d;
    }
    double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
  }
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = ra[i] - ma, db = rb[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0))
    throw invalid_domain("spearman: undefined when one table has all-equal frequencies");
  return sab / std::sqrt(saa * sbb);
}

// Mass held by the k most popular names.
inline double top_k_share(const NameTable& table, std::size_t k) {
  if (k < 1 || k > table.size())
    throw invalid_input("top-k share: k outside 1.." + std::to_string(table.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += table.entries()[i].frequency;
  return sum;
}

// Kolmogorov-Smirnov-style distance between two tables over one universe:
// walk the names in a's rank order, accumulate both frequency vectors, and
// take the largest gap between the running totals. The fixed walk order
// makes the cumulative well-defined on unordered name support; because the
// order follows the first argument, the statistic is directional.
inline double ks_distance(const NameTable& a, const NameTable& b) {
  if (!a.same_universe(b))
    throw invalid_input("ks distance: tables cover different name universes");
  double cum_a = 0.0, cum_b = 0.0, sup = 0.0;
  for (const NameEntry& e : a.entries()) {
    cum_a += e.frequency;
    cum_b += b.frequency_of(e.name);
    sup = std::max(sup, std::fabs(cum_a - cum_b));
  }
  return sup;
}

}  // namespace namegame
