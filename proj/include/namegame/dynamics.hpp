#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "namegame/distributions.hpp"
#include "namegame/errors.hpp"
#include "namegame/metrics.hpp"
#include "namegame/population.hpp"
#include "namegame/rng.hpp"

namespace namegame {

namespace detail {

// Frequency-sorted view of a table for nearest-frequency lookups. Entries
// with equal frequency stay adjacent in ascending table order, so a tied
// set is always one contiguous run per side.
class AssignIndex {
 public:
  explicit AssignIndex(const NameTable& table) : freqs_(table.size()), pos_(table.size()) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      freqs_[i] = table.entries()[i].frequency;
      pos_[i] = i;
    }
    std::reverse(freqs_.begin(), freqs_.end());
    std::reverse(pos_.begin(), pos_.end());
  }

  // Entry positions whose frequency is nearest mu, exact-distance ties
  // included. Output is in table order (descending frequency, then name).
  void tied(double mu, std::vector<std::size_t>& out) const {
    out.clear();
    std::size_t n = freqs_.size();
    std::size_t at = static_cast<std::size_t>(
        std::lower_bound(freqs_.begin(), freqs_.end(), mu) - freqs_.begin());
    double best = std::numeric_limits<double>::infinity();
    if (at > 0) best = std::min(best, mu - freqs_[at - 1]);
    if (at < n) best = std::min(best, freqs_[at] - mu);
    for (std::size_t j = at; j-- > 0 && mu - freqs_[j] == best;) out.push_back(pos_[j]);
    for (std::size_t j = at; j < n && freqs_[j] - mu == best; ++j) out.push_back(pos_[j]);
    std::sort(out.begin(), out.end());
    assert(!out.empty());
  }

 private:
  std::vector<double> freqs_;  // ascending
  std::vector<std::size_t> pos_;
};

}  // namespace detail

// Names a parent wanting popularity mu would pick: the entries whose current
// frequency is nearest mu, ties kept, sorted by name.
inline std::vector<std::string> assign_name(const NameTable& table, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw invalid_domain("assign: desired popularity outside [0, 1]");
  detail::AssignIndex index(table);
  std::vector<std::size_t> tied;
  index.tied(mu, tied);
  std::vector<std::string> names;
  names.reserve(tied.size());
  for (std::size_t i : tied) names.push_back(table.entries()[i].name);
  std::sort(names.begin(), names.end());
  return names;
}

// One generation under exact mass transport: every preference point sends
// its mass to the nearest-frequency names (split evenly across ties), and
// the inflows become the next table. Zero-inflow names stay at frequency 0
// rather than vanishing, so the universe is preserved.
inline NameTable step_deterministic(const NameTable& table,
                                    const DiscretePrefMass& g) {
  detail::AssignIndex index(table);
  std::vector<double> inflow(table.size(), 0.0);
  std::vector<std::size_t> tied;
  for (const PrefPoint& p : g.points) {
    index.tied(p.mu, tied);
    double share = p.mass / static_cast<double>(tied.size());
    for (std::size_t i : tied) inflow[i] += share;
  }
  std::vector<NameEntry> entries(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    entries[i] = {table.entries()[i].name, inflow[i]};
  return NameTable(std::move(entries), table.step_index() + 1);
}

struct StepResult {
  NameTable table;
  std::vector<ParentOutcome> outcomes;
};

// One generation with an explicit parent list: parent j wants prefs[j],
// picks uniformly among its tied names using draw j of the seeded stream,
// and the next table is the per-name head count over the population. The
// result is a pure function of (table, prefs, seed); evaluation order and
// thread count cannot change it.
inline StepResult step_montecarlo(const NameTable& table,
                                  std::span<const double> prefs,
                                  std::uint64_t seed) {
  if (prefs.empty()) throw invalid_input("step: no parents");
  detail::AssignIndex index(table);
  std::size_t n = table.size();
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::uint32_t> chosen(prefs.size());
  std::vector<std::size_t> tied;
  for (std::size_t j = 0; j < prefs.size(); ++j) {
    if (!(prefs[j] >= 0.0 && prefs[j] <= 1.0))
      throw invalid_domain("step: desired popularity outside [0, 1]");
    index.tied(prefs[j], tied);
    std::size_t pick =
        tied.size() == 1 ? tied[0] : tied[rng::pick(seed, j, tied.size())];
    ++counts[pick];
    chosen[j] = static_cast<std::uint32_t>(pick);
  }
  double pop = static_cast<double>(prefs.size());
  std::vector<NameEntry> entries(n);
  for (std::size_t i = 0; i < n; ++i)
    entries[i] = {table.entries()[i].name, static_cast<double>(counts[i]) / pop};
  NameTable next(std::move(entries), table.step_index() + 1);
  std::vector<double> achieved(n);
  for (std::size_t i = 0; i < n; ++i)
    achieved[i] = next.frequency_of(table.entries()[i].name);
  std::vector<ParentOutcome> outcomes;
  outcomes.reserve(prefs.size());
  for (std::size_t j = 0; j < prefs.size(); ++j)
    outcomes.push_back(
        {prefs[j], table.entries()[chosen[j]].name, achieved[chosen[j]]});
  return {std::move(next), std::move(outcomes)};
}

// Deterministic parent list for a discrete mass: largest-remainder quotas,
// so per-desire multiplicities match n * mass as closely as integers allow.
// Ascending mu order; no randomness involved.
inline std::vector<double> expand_quota(const DiscretePrefMass& g, std::size_t n) {
  if (n == 0) throw invalid_domain("quota expansion: population must be positive");
  std::size_t m = g.points.size();
  std::vector<std::uint64_t> quota(m);
  std::vector<std::pair<double, std::size_t>> remainder(m);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double exact = g.points[i].mass * static_cast<double>(n);
    quota[i] = static_cast<std::uint64_t>(exact);
    assigned += quota[i];
    remainder[i] = {exact - static_cast<double>(quota[i]), i};
  }
  assert(assigned <= n && n - assigned <= m);
  std::sort(remainder.begin(), remainder.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (std::size_t r = 0; r < n - assigned; ++r) ++quota[remainder[r].second];
  std::vector<double> prefs;
  prefs.reserve(n);
  for (std::size_t i = 0; i < m; ++i)
    prefs.insert(prefs.end(), quota[i], g.points[i].mu);
  return prefs;
}

// --- Closed-form rank dynamics: composing a preference exponent t' with a
// rank law of exponent t yields a rank law again, with exponent -t*t'.
// t' = -1 is the identity; t' > 0 reverses rank order each step.

inline PowerLawParams closed_form_step(const PowerLawParams& params, double t_prime) {
  if (!std::isfinite(t_prime))
    throw invalid_domain("closed form: t' must be finite");
  return powerlaw_normalize(-params.t * t_prime, params.n_ranks);
}

// Start law plus n steps; entry k has exponent t * (-t')^k.
inline std::vector<PowerLawParams> closed_form_iterate(const PowerLawParams& params,
                                                       double t_prime,
                                                       std::size_t n_steps) {
  std::vector<PowerLawParams> out;
  out.reserve(n_steps + 1);
  out.push_back(params);
  for (std::size_t k = 0; k < n_steps; ++k)
    out.push_back(closed_form_step(out.back(), t_prime));
  return out;
}

// True when no name's frequency moved more than tol between the two tables.
inline bool is_stable(const NameTable& a, const NameTable& b, double tol) {
  if (!(tol >= 0.0)) throw invalid_domain("stability: tolerance must be non-negative");
  if (!a.same_universe(b))
    throw invalid_input("stability: tables cover different name universes");
  for (const NameEntry& e : a.entries())
    if (std::fabs(e.frequency - b.frequency_of(e.name)) > tol) return false;
  return true;
}

// The preference mass that reproduces the current table: each positive
// frequency f is demanded by exactly the parents who hold it (names tied at
// the same frequency pool their mass on one point).
inline DiscretePrefMass dweezil_preferences(const NameTable& table) {
  std::map<double, double> by_freq;
  for (const NameEntry& e : table.entries())
    if (e.frequency > 0.0) by_freq[e.frequency] += e.frequency;
  std::vector<PrefPoint> points;
  points.reserve(by_freq.size());
  for (auto [mu, mass] : by_freq) points.push_back({mu, mass});
  return DiscretePrefMass::from_points(std::move(points));
}

// --- Per-point audit of one step's outcome against what was asked for.

enum class Verdict { satisfied, overshoot, undershoot, unrated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::overshoot: return "overshoot";
    case Verdict::undershoot: return "undershoot";
    default: return "unrated";
  }
}

struct SatisfiabilityRow {
  double mu = 0.0;         // desired popularity
  double demand = 0.0;     // parent mass asking for it
  double resulting = 0.0;  // next-step frequency mass of the names they pick
  Verdict verdict = Verdict::unrated;
};

struct SatisfiabilityReport {
  std::vector<SatisfiabilityRow> rows;
  bool all_satisfied = true;
};

// One row per preference point. The verdict compares demand (the mass
// asking for popularity mu) against mu itself: more parents than a level
// can hold push its name past the wish (overshoot), too few leave it short
// (undershoot). resulting reports the popularity the mu-parents' names
// actually reached in table_next. Points with mu = 0 cannot be rated and
// never block all_satisfied.
inline SatisfiabilityReport satisfiability_report(const NameTable& table_next,
                                                  const DiscretePrefMass& g,
                                                  double tol) {
  if (!(tol >= 0.0))
    throw invalid_domain("satisfiability: tolerance must be non-negative");
  detail::AssignIndex index(table_next);
  std::vector<std::size_t> tied;
  SatisfiabilityReport report;
  for (const PrefPoint& p : g.points) {
    index.tied(p.mu, tied);
    double resulting = 0.0;
    for (std::size_t i : tied) resulting += table_next.entries()[i].frequency;
    SatisfiabilityRow row{p.mu, p.mass, resulting, Verdict::unrated};
    if (p.mu > 0.0) {
      if (std::fabs(p.mass - p.mu) <= tol)
        row.verdict = Verdict::satisfied;
      else if (p.mass > p.mu)
        row.verdict = Verdict::overshoot;
      else
        row.verdict = Verdict::undershoot;
      if (row.verdict != Verdict::satisfied) report.all_satisfied = false;
    }
    report.rows.push_back(row);
  }
  return report;
}

// --- Multi-step driver.

struct LogNormalPrefs {
  LogNormalParams params;
};

// Preference for rare (t' > 0) or common (t' < 0) names.
struct PowerLawPrefs {
  double t_prime = 0.0;
  double floor = 1e-5;
  std::size_t n_bins = 200;
};

// Rebuilds the table's own frequencies as desires each step (fixed point).
struct DweezilPrefs {};

struct ExplicitPrefs {
  DiscretePrefMass mass;
};

using PreferenceModel =
    std::variant<LogNormalPrefs, PowerLawPrefs, DweezilPrefs, ExplicitPrefs>;

enum class StepMode { deterministic, montecarlo };

struct IterateOptions {
  StepMode mode = StepMode::deterministic;
  std::size_t population = 0;      // parents per step, Monte Carlo only
  std::uint64_t seed = 0;          // root seed, Monte Carlo only
  std::size_t lognormal_bins = 200;  // discretization, deterministic only
  bool record_outcomes = true;
};

struct StepDiagnostics {
  int step = 0;           // index of the table these describe
  double spearman = 0.0;  // vs the previous step
  double top1_share = 0.0;
  double fitted_t = 0.0;
  double r2 = 0.0;
};

struct Trajectory {
  std::vector<NameTable> tables;                     // steps 0..n
  std::vector<StepDiagnostics> diagnostics;          // steps 1..n
  std::vector<std::vector<ParentOutcome>> outcomes;  // per step, MC only
};

namespace detail {

inline DiscretePrefMass resolve_mass(const PreferenceModel& model,
                                     const NameTable& current,
                                     const IterateOptions& options) {
  if (const auto* ln = std::get_if<LogNormalPrefs>(&model))
    return lognormal_pref_mass(ln->params, options.lognormal_bins);
  if (const auto* pl = std::get_if<PowerLawPrefs>(&model))
    return powerlaw_pref_mass(pl->t_prime, pl->floor, pl->n_bins);
  if (std::get_if<DweezilPrefs>(&model)) return dweezil_preferences(current);
  return std::get<ExplicitPrefs>(model).mass;
}

inline double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace detail

// Runs n_steps generations from the initial table (re-stamped to step 0)
// and collects tables, per-step diagnostics, and (in Monte Carlo mode)
// parent outcomes. Diagnostics that are undefined for a given table, such
// as a power-law fit with fewer than two surviving names, come back NaN.
inline Trajectory iterate(const NameTable& initial, const PreferenceModel& model,
                          std::size_t n_steps, const IterateOptions& options) {
  if (options.mode == StepMode::montecarlo && options.population == 0)
    throw invalid_domain("iterate: Monte Carlo mode needs a positive population");
  Trajectory traj;
  traj.tables.push_back(initial.with_step_index(0));
  for (std::size_t k = 0; k < n_steps; ++k) {
    const NameTable& current = traj.tables.back();
    std::vector<ParentOutcome> outcomes;
    NameTable next = [&]() -> NameTable {
      if (options.mode == StepMode::deterministic)
        return step_deterministic(current,
                                  detail::resolve_mass(model, current, options));
      std::uint64_t step_seed = rng::derive(options.seed, k);
      std::uint64_t sample_seed = rng::derive(step_seed, 0);
      std::uint64_t tie_seed = rng::derive(step_seed, 1);
      std::vector<double> prefs;
      if (const auto* ln = std::get_if<LogNormalPrefs>(&model))
        prefs = sample_preferences(ln->params, options.population, sample_seed);
      else
        prefs = expand_quota(detail::resolve_mass(model, current, options),
                             options.population);
      StepResult result = step_montecarlo(current, prefs, tie_seed);
      if (options.record_outcomes) outcomes = std::move(result.outcomes);
      return std::move(result.table);
    }();
    StepDiagnostics diag;
    diag.step = static_cast<int>(k) + 1;
    try {
      diag.spearman = spearman(current, next);
    } catch (const error&) {
      diag.spearman = detail::nan_value();
    }
    diag.top1_share = top_k_share(next, 1);
    try {
      PowerLawFit fit = fit_powerlaw(next);
      diag.fitted_t = fit.t_hat;
      diag.r2 = fit.r2;
    } catch (const error&) {
      diag.fitted_t = detail::nan_value();
      diag.r2 = detail::nan_value();
    }
    traj.diagnostics.push_back(diag);
    traj.outcomes.push_back(std::move(outcomes));
    traj.tables.push_back(std::move(next));
  }
  return traj;
}

// Writes step_0000.csv .. step_NNNN.csv plus diagnostics.csv under dir.
// Output depends only on the trajectory, byte for byte.
inline void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const NameTable& t : traj.tables) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%04d.csv", t.step_index());
    write_table_csv(t, (dir / name).string());
  }
  std::ofstream out(dir / "diagnostics.csv", std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + (dir / "diagnostics.csv").string());
  out << "step,spearman,top1_share,fitted_t,r2\n";
  for (const StepDiagnostics& d : traj.diagnostics)
    out << d.step << ',' << format_double(d.spearman) << ','
        << format_double(d.top1_share) << ',' << format_double(d.fitted_t) << ','
        << format_double(d.r2) << '\n';
  if (!out) throw io_error("write failed: diagnostics.csv");
}

}  // namespace namegame
