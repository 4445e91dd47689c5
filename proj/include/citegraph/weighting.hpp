#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "citegraph/disruption.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/numeric.hpp"
#include "citegraph/series.hpp"

namespace citegraph {

// How a paper's citation weight c_it is measured. The weighting literature
// leaves the averaging horizon open, so it stays an explicit knob:
//   PerYearAverage — citation count divided by years since publication,
//                    divisor clamped to 1 for papers published at the horizon
//   RawCount       — plain citation count
//   WindowCount    — citations arriving inside the forward window only
enum class WeightMode { PerYearAverage, RawCount, WindowCount };

inline std::string_view to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::PerYearAverage: return "per-year-average";
    case WeightMode::RawCount: return "raw-count";
    case WeightMode::WindowCount: return "window-count";
  }
  return "?";
}

inline std::optional<WeightMode> weight_mode_from_string(std::string_view s) {
  if (s == "per-year-average") return WeightMode::PerYearAverage;
  if (s == "raw-count") return WeightMode::RawCount;
  if (s == "window-count") return WeightMode::WindowCount;
  return std::nullopt;
}

struct CitationWeight {
  PaperId paper = 0;
  Rational value;  // c_it >= 0
  WeightMode mode = WeightMode::PerYearAverage;
};

inline CitationWeight citation_weight(const CitationGraph& g, PaperId paper, int horizon_year,
                                      WeightMode mode, int window = 5,
                                      bool include_same_year = false) {
  const std::uint32_t idx = g.index_of(paper);
  const int year = g.year_at(idx);
  if (horizon_year < year) {
    throw std::invalid_argument("citation weight horizon " + std::to_string(horizon_year) +
                                " precedes publication year of paper " + std::to_string(paper));
  }
  const auto citers = g.in_neighbors(idx);
  CitationWeight w;
  w.paper = paper;
  w.mode = mode;
  switch (mode) {
    case WeightMode::PerYearAverage:
      w.value = Rational(citers.size(), std::max(1, horizon_year - year));
      break;
    case WeightMode::RawCount:
      w.value = static_cast<std::uint64_t>(citers.size());
      break;
    case WeightMode::WindowCount: {
      if (window < 1) throw std::invalid_argument("forward window must be >= 1");
      const int lo = include_same_year ? year : year + 1;
      const int hi = year + window;
      w.value = static_cast<std::uint64_t>(g.in_neighbors_in_years(idx, lo, hi).size());
      break;
    }
  }
  return w;
}

// Weights for every paper, ascending by id. A null horizon means the latest
// publication year in the graph.
inline std::vector<CitationWeight> citation_weights(const CitationGraph& g,
                                                    std::optional<int> horizon_year, WeightMode mode,
                                                    int window = 5, bool include_same_year = false) {
  const int horizon = horizon_year.value_or(g.empty() ? 0 : g.max_year());
  std::vector<CitationWeight> out;
  out.reserve(g.node_count());
  for (PaperId id : g.ids()) {
    out.push_back(citation_weight(g, id, horizon, mode, window, include_same_year));
  }
  return out;
}

// Citation-weighted annual disruption: per year, sum of c_it * CD(i) over
// papers with defined scores, divided by the same papers' total weight C_t.
// Numerator and denominator range over one index set by construction.
// Years where C_t is zero stay missing — a zero there would fabricate a
// neutral-disruption observation. The count is the number of papers that
// actually carry weight into the year.
//
// Both inputs must be ascending by paper id; every defined score needs a
// weight, and all weights must share one mode.
inline AnnualSeries weighted_annual_mcd(std::span<const DisruptionScore> scores,
                                        std::span<const CitationWeight> weights) {
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[i].mode != weights[0].mode) {
      throw std::invalid_argument("citation weights mix modes: " +
                                  std::string(to_string(weights[0].mode)) + " vs " +
                                  std::string(to_string(weights[i].mode)));
    }
  }
  struct YearAcc {
    Rational numerator;
    Rational total_weight;
    std::uint64_t contributing = 0;
  };
  std::map<int, YearAcc> by_year;
  std::size_t wi = 0;
  for (const DisruptionScore& s : scores) {
    auto& acc = by_year[s.year];  // every cohort year present, even if nothing is defined
    if (!s.defined()) continue;
    while (wi < weights.size() && weights[wi].paper < s.paper) ++wi;
    if (wi == weights.size() || weights[wi].paper != s.paper) {
      throw std::invalid_argument("no citation weight for paper " + std::to_string(s.paper));
    }
    const Rational& c = weights[wi].value;
    if (c < 0) throw std::invalid_argument("negative citation weight for paper " + std::to_string(s.paper));
    if (c == 0) continue;  // zero weight cannot move the year either way
    acc.numerator += c * s.value();
    acc.total_weight += c;
    ++acc.contributing;
  }
  AnnualSeries series;
  for (const auto& [year, acc] : by_year) {
    if (acc.total_weight == 0) {
      series.set_missing(year);
    } else {
      series.set(year, to_double(acc.numerator / acc.total_weight), acc.contributing);
    }
  }
  return series;
}

// Annual publication counts N_t and cohort citation totals C_t. C_t sums,
// over papers published in t, the citations each has received. The support
// count on both series is the cohort size.
inline std::pair<AnnualSeries, AnnualSeries> annual_totals(const CitationGraph& g) {
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> by_year;  // year -> (papers, citations)
  for (std::uint32_t idx = 0; idx < g.node_count(); ++idx) {
    auto& [papers, citations] = by_year[g.year_at(idx)];
    ++papers;
    citations += g.in_neighbors(idx).size();
  }
  AnnualSeries n_series;
  AnnualSeries c_series;
  for (const auto& [year, acc] : by_year) {
    const auto& [papers, citations] = acc;
    n_series.set(year, static_cast<double>(papers), papers);
    c_series.set(year, static_cast<double>(citations), papers);
  }
  return {std::move(n_series), std::move(c_series)};
}

}  // namespace citegraph
