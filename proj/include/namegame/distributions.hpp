#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "namegame/errors.hpp"
#include "namegame/population.hpp"
#include "namegame/rng.hpp"
#include "namegame/text.hpp"

namespace namegame {

namespace detail {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

}  // namespace detail

// --- Discrete rank power law: pmf(a) = k * a^(-t) over ranks 1..n_ranks.

struct PowerLawParams {
  double t = 1.0;
  std::size_t n_ranks = 0;
  double k = 0.0;  // normalization constant, set by powerlaw_normalize
};

inline PowerLawParams powerlaw_normalize(double t, std::size_t n_ranks) {
  if (n_ranks == 0) throw invalid_domain("power law: n_ranks must be positive");
  if (!std::isfinite(t)) throw invalid_domain("power law: t must be finite");
  double sum = 0.0;
  for (std::size_t a = 1; a <= n_ranks; ++a)
    sum += std::pow(static_cast<double>(a), -t);
  return {t, n_ranks, 1.0 / sum};
}

inline double powerlaw_pmf(const PowerLawParams& params, std::size_t rank) {
  if (rank < 1 || rank > params.n_ranks)
    throw invalid_domain("power law: rank " + std::to_string(rank) +
                         " outside 1.." + std::to_string(params.n_ranks));
  return params.k * std::pow(static_cast<double>(rank), -params.t);
}

// Zero-padded labels "name0001", ... wide enough for n.
inline std::vector<std::string> rank_labels(std::size_t n,
                                            const std::string& prefix = "name") {
  int width = 1;
  for (std::size_t v = n; v >= 10; v /= 10) ++width;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t a = 1; a <= n; ++a) {
    std::string digits = std::to_string(a);
    labels.push_back(prefix + std::string(width - digits.size(), '0') + digits);
  }
  return labels;
}

// labels[i] gets the pmf of rank i+1. The table re-sorts by frequency, so
// for t < 0 the highest label comes out on top.
inline NameTable powerlaw_table(const PowerLawParams& params,
                                const std::vector<std::string>& labels,
                                int step_index = 0) {
  if (labels.size() != params.n_ranks)
    throw invalid_input("power law table: " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(params.n_ranks) + " ranks");
  std::vector<NameEntry> entries;
  entries.reserve(labels.size());
  for (std::size_t a = 1; a <= params.n_ranks; ++a)
    entries.push_back({labels[a - 1], powerlaw_pmf(params, a)});
  return NameTable(std::move(entries), step_index);
}

// --- Log-normal preference model. mode is the most likely desired
// popularity (the density peak), so the underlying normal has location
// M = ln(mode) + sigma^2 and the median sits at mode * e^(sigma^2).
// Draws are clamped into [floor, 1].

struct LogNormalParams {
  double mode = 1e-3;
  double sigma = 1.0;
  double floor = 1e-7;
};

inline void validate(const LogNormalParams& params) {
  if (!(params.mode > 0.0 && params.mode <= 1.0))
    throw invalid_domain("log-normal: mode outside (0, 1]");
  if (!(params.sigma > 0.0) || !std::isfinite(params.sigma))
    throw invalid_domain("log-normal: sigma must be positive and finite");
  if (!(params.floor > 0.0 && params.floor < 1.0))
    throw invalid_domain("log-normal: floor outside (0, 1)");
  if (params.floor > params.mode)
    throw invalid_domain("log-normal: floor above mode");
}

// Smallest popularity a parent can ask for: one tenth of one head in a
// population of the given size.
inline double default_floor(std::size_t population) {
  if (population == 0) throw invalid_domain("default floor: empty population");
  return 1.0 / (10.0 * static_cast<double>(population));
}

// CDF of the clamped variable: continuous on (floor, 1), atoms at the ends.
inline double lognormal_cdf(const LogNormalParams& params, double x) {
  validate(params);
  if (x < params.floor) return 0.0;
  if (x >= 1.0) return 1.0;
  double m = std::log(params.mode) + params.sigma * params.sigma;
  return detail::normal_cdf((std::log(x) - m) / params.sigma);
}

// n desired-popularity draws. Value i depends only on (params, seed, i), so
// the same call always yields the same vector regardless of threading.
inline std::vector<double> sample_preferences(const LogNormalParams& params,
                                              std::size_t n, std::uint64_t seed) {
  validate(params);
  double m = std::log(params.mode) + params.sigma * params.sigma;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::exp(m + params.sigma * rng::standard_normal(seed, i));
    out[i] = std::clamp(v, params.floor, 1.0);
  }
  return out;
}

// --- Discrete preference mass: a finite list of (desired popularity, mass)
// points, mass summing to 1. The deterministic step consumes these directly;
// the Monte Carlo step expands them into per-parent desires.

struct PrefPoint {
  double mu = 0.0;
  double mass = 0.0;

  bool operator==(const PrefPoint&) const = default;
};

struct DiscretePrefMass {
  std::vector<PrefPoint> points;

  // Validates and normalizes. mu strictly ascending in [0, 1], masses
  // non-negative with a positive sum. Sums within 1e-12 of 1 are kept
  // bit-exact (same rule as NameTable).
  static DiscretePrefMass from_points(std::vector<PrefPoint> points) {
    if (points.empty()) throw invalid_input("preference mass: no points");
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const PrefPoint& p = points[i];
      if (!(p.mu >= 0.0 && p.mu <= 1.0))
        throw invalid_domain("preference mass: mu outside [0, 1]");
      if (!std::isfinite(p.mass) || p.mass < 0.0)
        throw invalid_input("preference mass: negative or non-finite mass");
      if (i > 0 && !(points[i - 1].mu < p.mu))
        throw invalid_input("preference mass: mu values must be strictly ascending");
      sum += p.mass;
    }
    if (!(sum > 0.0)) throw invalid_input("preference mass: zero total mass");
    if (std::fabs(sum - 1.0) > 1e-12)
      for (PrefPoint& p : points) p.mass /= sum;
    return DiscretePrefMass{std::move(points)};
  }
};

// Power-law preference for rare names (t' > 0 piles mass on small mu,
// t' < 0 on common names). Points are log-spaced across [floor, 1]
// inclusive; each carries mass proportional to mu^(-t') times its
// half-neighbor width, then the list is normalized.
inline DiscretePrefMass powerlaw_pref_mass(double t_prime, double floor,
                                           std::size_t n_bins) {
  if (!(floor > 0.0 && floor < 1.0))
    throw invalid_domain("preference mass: floor outside (0, 1)");
  if (n_bins == 0) throw invalid_domain("preference mass: n_bins must be positive");
  if (!std::isfinite(t_prime))
    throw invalid_domain("preference mass: t' must be finite");
  if (n_bins == 1)
    return DiscretePrefMass::from_points({{std::sqrt(floor), 1.0}});
  std::vector<double> mu(n_bins);
  double log_floor = std::log(floor);
  for (std::size_t i = 0; i < n_bins; ++i)
    mu[i] = std::exp(log_floor * (1.0 - static_cast<double>(i) /
                                            static_cast<double>(n_bins - 1)));
  mu.front() = floor;
  mu.back() = 1.0;
  std::vector<PrefPoint> points(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    double lo = i == 0 ? mu[0] : mu[i - 1];
    double hi = i == n_bins - 1 ? mu[n_bins - 1] : mu[i + 1];
    double width = (hi - lo) / 2.0;
    points[i] = {mu[i], std::pow(mu[i], -t_prime) * width};
  }
  return DiscretePrefMass::from_points(std::move(points));
}

// Log-normal preference collapsed onto n_bins log-spaced bins over
// [floor, 1]; bin mass comes from CDF differences, with the clamp atoms
// folded into the end bins. Points sit at geometric bin centers.
inline DiscretePrefMass lognormal_pref_mass(const LogNormalParams& params,
                                            std::size_t n_bins = 200) {
  validate(params);
  if (n_bins == 0) throw invalid_domain("preference mass: n_bins must be positive");
  std::vector<double> edges(n_bins + 1);
  double log_floor = std::log(params.floor);
  for (std::size_t j = 0; j <= n_bins; ++j)
    edges[j] = std::exp(log_floor * (1.0 - static_cast<double>(j) /
                                               static_cast<double>(n_bins)));
  edges.front() = params.floor;
  edges.back() = 1.0;
  double m = std::log(params.mode) + params.sigma * params.sigma;
  auto cdf = [&](double x) {
    return detail::normal_cdf((std::log(x) - m) / params.sigma);
  };
  std::vector<PrefPoint> points(n_bins);
  for (std::size_t j = 0; j < n_bins; ++j) {
    double lo_cdf = j == 0 ? 0.0 : cdf(edges[j]);
    double hi_cdf = j == n_bins - 1 ? 1.0 : cdf(edges[j + 1]);
    points[j] = {std::sqrt(edges[j] * edges[j + 1]),
                 std::max(0.0, hi_cdf - lo_cdf)};
  }
  return DiscretePrefMass::from_points(std::move(points));
}

// --- Least-squares power-law fit on the log-log rank-frequency curve.

struct PowerLawFit {
  double t_hat = 0.0;
  double k_hat = 0.0;
  double r2 = 0.0;
};

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

inline LineFit least_squares(const std::vector<double>& x,
                             const std::vector<double>& y) {
  std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  // All y equal up to roundoff in the mean: the constant line fits exactly,
  // so report slope 0 and r2 1 instead of amplifying ulp noise into both.
  if (syy <= static_cast<double>(n) * 1e-28 * (1.0 + my * my)) {
    fit.intercept = my;
    fit.r2 = 1.0;
    return fit;
  }
  fit.slope = sxy == 0.0 ? 0.0 : sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = syy - fit.slope * sxy;
  fit.r2 = 1.0 - std::max(0.0, sse) / syy;
  return fit;
}

}  // namespace detail

// Fits frequency = k * rank^(-t) over the positive-frequency entries.
// Both rank orientations are tried (as stored, i.e. descending frequency,
// and reversed) and the better R^2 wins; a negative t_hat means the table
// is a power law in reverse rank order (frequency grows with rank label).
// This is what lets a table generated with any t in [-3, 3] round-trip.
inline PowerLawFit fit_powerlaw(const NameTable& table) {
  std::vector<double> y;
  y.reserve(table.size());
  for (const NameEntry& e : table.entries())
    if (e.frequency > 0.0) y.push_back(std::log(e.frequency));
  std::size_t m = y.size();
  if (m < 2)
    throw insufficient_data("power-law fit: need at least 2 positive frequencies, have " +
                            std::to_string(m));
  std::vector<double> fwd(m), rev(m);
  for (std::size_t i = 0; i < m; ++i) {
    fwd[i] = std::log(static_cast<double>(i + 1));
    rev[i] = std::log(static_cast<double>(m - i));
  }
  detail::LineFit f = detail::least_squares(fwd, y);
  detail::LineFit r = detail::least_squares(rev, y);
  const detail::LineFit& best = f.r2 >= r.r2 ? f : r;
  double t_hat = best.slope == 0.0 ? 0.0 : -best.slope;
  return {t_hat, std::exp(best.intercept), best.r2};
}

}  // namespace namegame
