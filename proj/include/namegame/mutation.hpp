#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "namegame/errors.hpp"
#include "namegame/population.hpp"

namespace namegame {

// Minimal insertions + deletions + substitutions turning a into b.
inline std::size_t levenshtein(const std::string& a, const std::string& b) {
  if (a.size() < b.size()) return levenshtein(b, a);
  std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

inline std::string default_alphabet() {
  return "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
}

struct MutationConfig {
  double lambda = 0.0;           // cost per edit
  std::string alphabet = default_alphabet();
  std::size_t max_edits = 1;     // candidate search radius
};

namespace detail {

inline void check(const MutationConfig& config) {
  if (config.alphabet.empty()) throw invalid_input("mutation: empty alphabet");
  if (!(config.lambda >= 0.0))
    throw invalid_domain("mutation: lambda must be non-negative");
}

inline void single_edits(const std::string& s, const std::string& alphabet,
                         std::unordered_set<std::string>& out) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::string del = s;
    del.erase(i, 1);
    out.insert(std::move(del));
    for (char c : alphabet)
      if (c != s[i]) {
        std::string sub = s;
        sub[i] = c;
        out.insert(std::move(sub));
      }
  }
  for (std::size_t i = 0; i <= s.size(); ++i)
    for (char c : alphabet) {
      std::string ins = s;
      ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), c);
      out.insert(std::move(ins));
    }
}

}  // namespace detail

// Every string reachable from base within max_edits single-character edits
// over the alphabet, base included, sorted and deduplicated.
inline std::vector<std::string> generate_candidates(const std::string& base,
                                                    const MutationConfig& config) {
  if (base.empty()) throw invalid_input("mutation: empty base name");
  detail::check(config);
  std::unordered_set<std::string> seen{base};
  std::vector<std::string> frontier{base};
  for (std::size_t depth = 0; depth < config.max_edits; ++depth) {
    std::unordered_set<std::string> grown;
    for (const std::string& s : frontier) detail::single_edits(s, config.alphabet, grown);
    frontier.clear();
    for (const std::string& s : grown)
      if (seen.insert(s).second) frontier.push_back(s);
  }
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// The objective a parent minimizes when inventing a name: how far the
// candidate's popularity sits from the wish, plus lambda per edit away
// from the established base. assumed_freq is the candidate's popularity
// (its table frequency if it already exists, 0 for a novel string).
inline double mutation_cost(const std::string& candidate, const std::string& base,
                            double mu, double lambda, double assumed_freq) {
  if (!(lambda >= 0.0))
    throw invalid_domain("mutation: lambda must be non-negative");
  return std::fabs(assumed_freq - mu) +
         lambda * static_cast<double>(levenshtein(base, candidate));
}

struct MutationChoice {
  std::string base;
  std::string candidate;
  double cost = 0.0;
  std::size_t distance = 0;
  double assumed_freq = 0.0;
};

namespace detail {

// Best (mismatch, candidate, base) per edit-distance class. Within a class
// the lambda term is constant, so one champion per class is enough to
// minimize cost for every lambda.
struct ClassChampion {
  bool set = false;
  double mismatch = 0.0;  // |assumed_freq - mu|
  double assumed = 0.0;
  std::string candidate;
  std::string base;
};

inline std::vector<ClassChampion> class_champions(const NameTable& table, double mu,
                                                  const MutationConfig& config) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw invalid_domain("mutation: desired popularity outside [0, 1]");
  check(config);
  std::vector<ClassChampion> champs(config.max_edits + 1);
  for (const NameEntry& entry : table.entries()) {
    for (const std::string& cand : generate_candidates(entry.name, config)) {
      std::size_t d = levenshtein(entry.name, cand);
      double assumed = table.contains(cand) ? table.frequency_of(cand) : 0.0;
      double mismatch = std::fabs(assumed - mu);
      ClassChampion& c = champs[d];
      bool better = !c.set || mismatch < c.mismatch ||
                    (mismatch == c.mismatch &&
                     (cand < c.candidate ||
                      (cand == c.candidate && entry.name < c.base)));
      if (better) c = {true, mismatch, assumed, cand, entry.name};
    }
  }
  return champs;
}

inline MutationChoice pick_for_lambda(const std::vector<ClassChampion>& champs,
                                      double lambda) {
  const ClassChampion* best = nullptr;
  std::size_t best_d = 0;
  double best_cost = 0.0;
  for (std::size_t d = 0; d < champs.size(); ++d) {
    const ClassChampion& c = champs[d];
    if (!c.set) continue;
    double cost = c.mismatch + lambda * static_cast<double>(d);
    bool better =
        !best || cost < best_cost ||
        (cost == best_cost && (d < best_d || (d == best_d &&
                                              (c.candidate < best->candidate ||
                                               (c.candidate == best->candidate &&
                                                c.base < best->base)))));
    if (better) {
      best = &c;
      best_d = d;
      best_cost = cost;
    }
  }
  return {best->base, best->candidate, best_cost, best_d, best->assumed};
}

}  // namespace detail

// Minimizes mutation_cost over every (base in table, candidate within
// max_edits of it). Ties: lower cost, then smaller edit distance, then
// ascending candidate, then ascending base.
inline MutationChoice choose_mutated_name(const NameTable& table, double mu,
                                          const MutationConfig& config) {
  if (!(config.lambda >= 0.0))
    throw invalid_domain("mutation: lambda must be non-negative");
  return detail::pick_for_lambda(detail::class_champions(table, mu, config),
                                 config.lambda);
}

// choose_mutated_name for many lambdas with one candidate enumeration.
inline std::vector<MutationChoice> mutation_sweep(const NameTable& table, double mu,
                                                  std::span<const double> lambdas,
                                                  const MutationConfig& config) {
  auto champs = detail::class_champions(table, mu, config);
  std::vector<MutationChoice> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0))
      throw invalid_domain("mutation: lambda must be non-negative");
    out.push_back(detail::pick_for_lambda(champs, lambda));
  }
  return out;
}

}  // namespace namegame
