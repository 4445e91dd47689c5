#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

namespace citegraph {

// Year-indexed values with per-year support counts. A year can be present
// with a missing value: that records "no observation contributed here",
// which is not the same thing as zero. Invariant: count == 0 iff the value
// is missing.
class AnnualSeries {
 public:
  struct Entry {
    std::optional<double> value;
    std::uint64_t count = 0;
    bool operator==(const Entry&) const = default;
  };

  void set(int year, double value, std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("AnnualSeries::set: present value needs count > 0");
    entries_[year] = Entry{value, count};
  }

  void set_missing(int year) { entries_[year] = Entry{std::nullopt, 0}; }

  bool contains(int year) const { return entries_.count(year) != 0; }

  const Entry& at(int year) const {
    auto it = entries_.find(year);
    if (it == entries_.end()) throw std::out_of_range("AnnualSeries: no entry for year " + std::to_string(year));
    return it->second;
  }

  bool has_value(int year) const {
    auto it = entries_.find(year);
    return it != entries_.end() && it->second.value.has_value();
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  int first_year() const { return entries_.begin()->first; }
  int last_year() const { return entries_.rbegin()->first; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Entries with year in [from, to], preserving missing markers.
  AnnualSeries slice(int from, int to) const {
    AnnualSeries out;
    for (auto it = entries_.lower_bound(from); it != entries_.end() && it->first <= to; ++it) {
      out.entries_.insert(*it);
    }
    return out;
  }

  bool operator==(const AnnualSeries&) const = default;

 private:
  std::map<int, Entry> entries_;
};

}  // namespace citegraph
