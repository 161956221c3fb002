#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "namegame/dynamics.hpp"
#include "namegame/mutation.hpp"
#include "helpers.hpp"

using Catch::Matchers::WithinAbs;
using namegame::MutationConfig;
using namegame::NameTable;

namespace {

// Textbook recursion, exponential but fine for strings up to ~6 chars.
std::size_t lev_slow(const std::string& a, const std::string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::size_t skip = lev_slow(a.substr(1), b.substr(1)) +
                     (a[0] == b[0] ? 0 : 1);
  std::size_t del = lev_slow(a.substr(1), b) + 1;
  std::size_t ins = lev_slow(a, b.substr(1)) + 1;
  return std::min({skip, del, ins});
}

}  // namespace

TEST_CASE("edit distance basics", "[mutation]") {
  REQUIRE(namegame::levenshtein("Kat", "Kat") == 0);
  REQUIRE(namegame::levenshtein("Kat", "Kate") == 1);
  REQUIRE(namegame::levenshtein("Cathy", "Kat") == 3);
  REQUIRE(namegame::levenshtein("", "abc") == 3);
  REQUIRE(namegame::levenshtein("abc", "") == 3);
  REQUIRE(namegame::levenshtein("", "") == 0);
}

TEST_CASE("edit distance is a metric and matches the recursive oracle",
          "[mutation]") {
  std::vector<std::string> words;
  for (std::uint64_t i = 0; i < 24; ++i) words.push_back(test::random_word(600, i, 6));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      std::size_t d = namegame::levenshtein(words[i], words[j]);
      REQUIRE(d == lev_slow(words[i], words[j]));
      REQUIRE(d == namegame::levenshtein(words[j], words[i]));
      REQUIRE((d == 0) == (words[i] == words[j]));
    }
  }
  for (std::uint64_t k = 0; k < 200; ++k) {
    std::string a = test::random_word(601, 3 * k, 5);
    std::string b = test::random_word(601, 3 * k + 1, 5);
    std::string c = test::random_word(601, 3 * k + 2, 5);
    REQUIRE(namegame::levenshtein(a, c) <=
            namegame::levenshtein(a, b) + namegame::levenshtein(b, c));
  }
}

TEST_CASE("candidate generation enumerates the edit ball", "[mutation]") {
  MutationConfig zero;
  zero.max_edits = 0;
  REQUIRE(namegame::generate_candidates("Kat", zero) ==
          std::vector<std::string>{"Kat"});

  MutationConfig tiny;
  tiny.alphabet = "e";
  tiny.max_edits = 1;
  std::vector<std::string> ball = namegame::generate_candidates("Kat", tiny);
  std::vector<std::string> expected = {"Ka",   "Kae",  "Kaet", "Kat", "Kate", "Keat",
                                       "Ket",  "Kt",   "at",   "eKat", "eat"};
  REQUIRE(ball == expected);
  for (const std::string& c : ball) REQUIRE(namegame::levenshtein("Kat", c) <= 1);

  REQUIRE_THROWS_AS(namegame::generate_candidates("", tiny), namegame::invalid_input);
  MutationConfig empty_alpha;
  empty_alpha.alphabet = "";
  REQUIRE_THROWS_AS(namegame::generate_candidates("Kat", empty_alpha),
                    namegame::invalid_input);
}

TEST_CASE("one-edit ball size matches the enumeration count", "[mutation]") {
  // L deletions, L substitutions per usable letter, (L+1)*sigma insertions,
  // plus the base itself, minus duplicates; the generator must agree with a
  // direct duplicate-free enumeration.
  for (std::uint64_t i = 0; i < 12; ++i) {
    std::string base = test::random_word(700, i, 5);
    if (base.empty()) base = "a";
    MutationConfig config;
    config.alphabet = "ab";
    config.max_edits = 1;
    std::vector<std::string> got = namegame::generate_candidates(base, config);
    std::vector<std::string> manual;
    manual.push_back(base);
    for (std::size_t p = 0; p < base.size(); ++p) {
      std::string del = base;
      del.erase(p, 1);
      manual.push_back(del);
      for (char c : config.alphabet)
        if (c != base[p]) {
          std::string sub = base;
          sub[p] = c;
          manual.push_back(sub);
        }
    }
    for (std::size_t p = 0; p <= base.size(); ++p)
      for (char c : config.alphabet) {
        std::string ins = base;
        ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(p), c);
        manual.push_back(ins);
      }
    std::sort(manual.begin(), manual.end());
    manual.erase(std::unique(manual.begin(), manual.end()), manual.end());
    REQUIRE(got == manual);
  }
}

TEST_CASE("mutation cost arithmetic", "[mutation]") {
  REQUIRE(namegame::mutation_cost("Kat", "Kat", 0.1, 5.0, 0.1) == 0.0);
  REQUIRE_THAT(namegame::mutation_cost("Kate", "Kat", 0.02, 0.0, 0.0),
               WithinAbs(0.02, 1e-15));
  REQUIRE_THAT(namegame::mutation_cost("Kate", "Kat", 0.02, 0.01, 0.0),
               WithinAbs(0.03, 1e-15));
  REQUIRE_THROWS_AS(namegame::mutation_cost("Kate", "Kat", 0.02, -1.0, 0.0),
                    namegame::invalid_domain);
}

TEST_CASE("large penalties pin the choice to an existing name", "[mutation]") {
  NameTable t({{"Kat", 0.5}, {"Ann", 0.3}, {"Bob", 0.2}}, 0);
  MutationConfig config;
  config.lambda = 1.5;  // any edit costs more than any frequency gain
  config.max_edits = 2;
  namegame::MutationChoice choice = namegame::choose_mutated_name(t, 0.28, config);
  REQUIRE(choice.distance == 0);
  REQUIRE(choice.candidate == choice.base);
  // Same winner as plain nearest-frequency assignment.
  REQUIRE(choice.candidate == namegame::assign_name(t, 0.28).front());
}

TEST_CASE("zero penalty and zero wish invent a fresh name", "[mutation]") {
  NameTable t({{"Kat", 0.6}, {"Ann", 0.4}}, 0);
  MutationConfig config;
  config.lambda = 0.0;
  config.max_edits = 1;
  namegame::MutationChoice choice = namegame::choose_mutated_name(t, 0.0, config);
  REQUIRE(choice.cost == 0.0);
  REQUIRE(choice.distance >= 1);
  REQUIRE(choice.assumed_freq == 0.0);
  REQUIRE_FALSE(t.contains(choice.candidate));
}

TEST_CASE("ties break by distance then candidate name", "[mutation]") {
  NameTable t({{"Kat", 0.5}, {"Ann", 0.5}}, 0);
  MutationConfig config;
  config.lambda = 0.7;
  namegame::MutationChoice choice = namegame::choose_mutated_name(t, 0.5, config);
  REQUIRE(choice.base == "Ann");
  REQUIRE(choice.candidate == "Ann");
  REQUIRE(choice.cost == 0.0);
  REQUIRE(choice.distance == 0);
}

TEST_CASE("with no edits allowed the choice is the nearest-frequency name",
          "[mutation]") {
  for (std::uint64_t seed : {81u, 82u, 83u}) {
    NameTable t = test::random_table(seed, 12);
    MutationConfig config;
    config.max_edits = 0;
    config.lambda = test::uniform(seed, 9000, 0.0, 2.0);
    for (std::uint64_t i = 0; i < 20; ++i) {
      double mu = test::uniform(seed, 9100 + i, 0.0, 1.0);
      namegame::MutationChoice choice = namegame::choose_mutated_name(t, mu, config);
      REQUIRE(choice.candidate == namegame::assign_name(t, mu).front());
      REQUIRE(choice.distance == 0);
    }
  }
}

TEST_CASE("chosen distance never grows with the penalty", "[mutation]") {
  NameTable t = test::random_table(91, 8);
  MutationConfig config;
  config.max_edits = 2;
  config.alphabet = "abcdef";
  std::vector<double> lambdas;
  for (int i = -6; i <= 2; ++i) lambdas.push_back(std::pow(10.0, i));
  for (double mu : {0.0, 0.037, 0.12, 0.9}) {
    auto choices = namegame::mutation_sweep(t, mu, lambdas, config);
    REQUIRE(choices.size() == lambdas.size());
    for (std::size_t i = 1; i < choices.size(); ++i)
      REQUIRE(choices[i].distance <= choices[i - 1].distance);
    // The sweep answers match one-off calls.
    for (std::size_t i = 0; i < choices.size(); ++i) {
      config.lambda = lambdas[i];
      namegame::MutationChoice lone = namegame::choose_mutated_name(t, mu, config);
      REQUIRE(lone.candidate == choices[i].candidate);
      REQUIRE(lone.base == choices[i].base);
      REQUIRE(lone.cost == choices[i].cost);
      REQUIRE(lone.distance == choices[i].distance);
    }
  }
}

TEST_CASE("mutation rejects out-of-range wishes and penalties", "[mutation]") {
  NameTable t({{"Kat", 1.0}}, 0);
  MutationConfig config;
  REQUIRE_THROWS_AS(namegame::choose_mutated_name(t, 1.5, config),
                    namegame::invalid_domain);
  config.lambda = -0.5;
  REQUIRE_THROWS_AS(namegame::choose_mutated_name(t, 0.5, config),
                    namegame::invalid_domain);
  std::vector<double> bad = {-1.0};
  config.lambda = 0.0;
  REQUIRE_THROWS_AS(namegame::mutation_sweep(t, 0.5, bad, config),
                    namegame::invalid_domain);
}
