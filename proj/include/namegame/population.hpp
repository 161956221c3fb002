#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "namegame/errors.hpp"
#include "namegame/text.hpp"

namespace namegame {

struct NameEntry {
  std::string name;
  double frequency = 0.0;

  bool operator==(const NameEntry&) const = default;
};

// One parent's round in a Monte Carlo step: what popularity they wanted,
// which name they picked, and the popularity that name ended up with.
struct ParentOutcome {
  double desired = 0.0;
  std::string name;
  double achieved = 0.0;
};

// Immutable frequency table for one simulation step. Entries are kept
// sorted by descending frequency (ties by ascending name), so the entry at
// position r-1 has rank r. Frequencies always sum to 1: inputs summing to
// within [0.999, 1.001] are accepted and renormalized, anything else is
// rejected. Sums already within 1e-12 of 1 are kept bit-exact, so tables
// built from exact shares survive round trips unchanged.
class NameTable {
 public:
  NameTable(std::vector<NameEntry> entries, int step_index = 0)
      : entries_(std::move(entries)), step_(step_index) {
    if (entries_.empty()) throw invalid_input("name table: no entries");
    if (step_ < 0) throw invalid_input("name table: negative step index");
    for (const NameEntry& e : entries_) {
      if (e.name.empty()) throw invalid_input("name table: empty name");
      if (e.name.find_first_of(",\r\n") != std::string::npos)
        throw invalid_input("name table: name contains a separator: '" + e.name + "'");
      if (!std::isfinite(e.frequency))
        throw invalid_input("name table: non-finite frequency for '" + e.name + "'");
      if (e.frequency < 0.0)
        throw invalid_input("name table: negative frequency for '" + e.name + "'");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const NameEntry& a, const NameEntry& b) {
                if (a.frequency != b.frequency) return a.frequency > b.frequency;
                return a.name < b.name;
              });
    double sum = 0.0;
    for (const NameEntry& e : entries_) sum += e.frequency;
    if (!(sum >= 0.999 && sum <= 1.001))
      throw normalization_error("name table: frequencies sum to " +
                                format_double(sum));
    if (std::fabs(sum - 1.0) > 1e-12)
      for (NameEntry& e : entries_) e.frequency /= sum;
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (!index_.emplace(entries_[i].name, i).second)
        throw invalid_input("name table: duplicate name '" + entries_[i].name + "'");
  }

  const std::vector<NameEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int step_index() const { return step_; }

  bool contains(std::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
  }

  double frequency_of(std::string_view name) const {
    return entries_[position_of(name)].frequency;
  }

  // 1-based; rank 1 is the most frequent name.
  std::size_t rank_of(std::string_view name) const {
    return position_of(name) + 1;
  }

  bool same_universe(const NameTable& other) const {
    if (size() != other.size()) return false;
    for (const NameEntry& e : entries_)
      if (!other.contains(e.name)) return false;
    return true;
  }

  NameTable with_step_index(int step_index) const {
    NameTable copy(*this);
    if (step_index < 0) throw invalid_input("name table: negative step index");
    copy.step_ = step_index;
    return copy;
  }

 private:
  std::size_t position_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      throw not_found("name table: no entry '" + std::string(name) + "'");
    return it->second;
  }

  std::vector<NameEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  int step_ = 0;
};

// --- CSV form: header "name,frequency", one row per entry in rank order.

inline void to_csv(const NameTable& table, std::ostream& out) {
  out << "name,frequency\n";
  for (const NameEntry& e : table.entries())
    out << e.name << ',' << format_double(e.frequency) << '\n';
}

inline NameTable from_csv(std::istream& in, int step_index = 0) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error(0, "table csv: empty stream");
  if (trim(line) != "name,frequency")
    throw parse_error(1, "table csv: expected header 'name,frequency'");
  std::vector<NameEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    auto fields = split(row, ',');
    if (fields.size() != 2)
      throw parse_error(line_no, "table csv: expected 2 fields, got " +
                                     std::to_string(fields.size()));
    double freq;
    try {
      freq = parse_proportion(fields[1], "frequency");
    } catch (const error& e) {
      throw parse_error(line_no, e.what());
    }
    entries.push_back({std::string(trim(fields[0])), freq});
  }
  return NameTable(std::move(entries), step_index);
}

// --- JSON form: one object mapping name to frequency. Values may be
// numbers or strings, and strings may carry a percent suffix ("0.1%").

inline nlohmann::ordered_json to_json(const NameTable& table) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const NameEntry& e : table.entries()) obj[e.name] = e.frequency;
  return obj;
}

inline NameTable from_json(const nlohmann::json& obj, int step_index = 0) {
  if (!obj.is_object()) throw invalid_input("table json: expected an object");
  std::vector<NameEntry> entries;
  for (const auto& [name, value] : obj.items()) {
    double freq;
    if (value.is_number())
      freq = value.get<double>();
    else if (value.is_string())
      freq = parse_proportion(value.get<std::string>(), "frequency");
    else
      throw invalid_input("table json: value for '" + name +
                          "' is neither number nor string");
    if (!(freq >= 0.0 && freq <= 1.0))
      throw invalid_domain("table json: frequency for '" + name +
                           "' outside [0, 1]");
    entries.push_back({name, freq});
  }
  return NameTable(std::move(entries), step_index);
}

inline void write_table_csv(const NameTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  to_csv(table, out);
  if (!out) throw io_error("write failed: " + path);
}

inline NameTable read_table_csv(const std::string& path, int step_index = 0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path);
  return from_csv(in, step_index);
}

}  // namespace namegame
