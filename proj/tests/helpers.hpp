#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "namegame/distributions.hpp"
#include "namegame/population.hpp"
#include "namegame/rng.hpp"

namespace test {

// Random table with distinct positive frequencies, pre-normalized so the
// constructor keeps the values bit-exact.
inline namegame::NameTable random_table(std::uint64_t seed, std::size_t n,
                                        int step = 0) {
  std::vector<double> vals(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = 0.05 + namegame::rng::to_unit(namegame::rng::stream(seed, i));
    sum += vals[i];
  }
  std::vector<namegame::NameEntry> entries(n);
  std::vector<std::string> labels = namegame::rank_labels(n);
  for (std::size_t i = 0; i < n; ++i) entries[i] = {labels[i], vals[i] / sum};
  return namegame::NameTable(std::move(entries), step);
}

// Uniform double in [lo, hi) from the seeded stream.
inline double uniform(std::uint64_t seed, std::uint64_t index, double lo, double hi) {
  return lo + (hi - lo) * namegame::rng::to_unit(namegame::rng::stream(seed, index));
}

// Random lowercase string of length 0..max_len.
inline std::string random_word(std::uint64_t seed, std::uint64_t index,
                               std::size_t max_len) {
  std::uint64_t bits = namegame::rng::stream(seed, index);
  std::size_t len = bits % (max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i)
    s.push_back(static_cast<char>(
        'a' + namegame::rng::pick(seed, (index << 8) + i + 1, 26)));
  return s;
}

}  // namespace test
