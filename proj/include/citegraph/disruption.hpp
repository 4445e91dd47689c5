#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "citegraph/graph.hpp"
#include "citegraph/numeric.hpp"
#include "citegraph/parallel.hpp"
#include "citegraph/series.hpp"

namespace citegraph {

// One future paper's engagement with a focal paper: cites_focal is f,
// cites_predecessor is b. An event only exists when at least one is set.
// The contribution -2fb + f is +1 (cites the focal alone), -1 (cites the
// focal together with its predecessors), or 0 (cites only predecessors).
struct ForwardEvent {
  PaperId paper = 0;
  bool cites_focal = false;
  bool cites_predecessor = false;

  int term() const { return cites_focal ? (cites_predecessor ? -1 : +1) : 0; }
};

// CD index of one focal paper. The sum of event terms is kept as an exact
// integer next to the event count; the division happens on demand, so two
// scores are comparable without any tolerance.
struct DisruptionScore {
  PaperId paper = 0;
  int year = 0;
  std::uint32_t n_events = 0;  // n_t, the forward-window engagement count
  std::int64_t term_sum = 0;

  bool defined() const { return n_events > 0; }

  Rational value() const {
    internal_check(defined(), "CD value of a paper with no forward events");
    return Rational(term_sum, n_events);
  }

  double value_double() const { return to_double(value()); }

  bool operator==(const DisruptionScore&) const = default;
};

namespace detail {

inline bool sorted_contains(std::span<const std::uint32_t> sorted, std::uint32_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline bool sorted_intersects(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else return true;
  }
  return false;
}

// f and b are both read off the candidate's own reference list, which is
// short; the focal paper's citer list can be arbitrarily long.
inline DisruptionScore cd_for_index(const CitationGraph& g, std::uint32_t idx, int window,
                                    bool include_same_year) {
  DisruptionScore score;
  score.paper = g.id_at(idx);
  score.year = g.year_at(idx);
  const auto refs = g.out_neighbors(idx);
  for (std::uint32_t j : g.forward_set_indices(idx, window, include_same_year)) {
    const auto j_refs = g.out_neighbors(j);
    const bool f = sorted_contains(j_refs, idx);
    const bool b = sorted_intersects(j_refs, refs);
    ++score.n_events;
    score.term_sum += f ? (b ? -1 : +1) : 0;
  }
  return score;
}

}  // namespace detail

// Forward events of a focal paper, ascending by the future paper's id.
inline std::vector<ForwardEvent> forward_events(const CitationGraph& g, PaperId focal, int window,
                                                bool include_same_year = false) {
  const std::uint32_t idx = g.index_of(focal);
  const auto refs = g.out_neighbors(idx);
  std::vector<ForwardEvent> events;
  for (std::uint32_t j : g.forward_set_indices(idx, window, include_same_year)) {
    const auto j_refs = g.out_neighbors(j);
    ForwardEvent e;
    e.paper = g.id_at(j);
    e.cites_focal = detail::sorted_contains(j_refs, idx);
    e.cites_predecessor = detail::sorted_intersects(j_refs, refs);
    events.push_back(e);
  }
  return events;
}

inline DisruptionScore cd_index(const CitationGraph& g, PaperId focal, int window,
                                bool include_same_year = false) {
  return detail::cd_for_index(g, g.index_of(focal), window, include_same_year);
}

// Scores every paper, ascending by id. Focal papers are independent, so the
// loop parallelizes over disjoint output slots; the result is identical for
// any thread count.
inline std::vector<DisruptionScore> cd_all(const CitationGraph& g, int window, unsigned threads = 0,
                                           bool include_same_year = false) {
  if (window < 1) throw std::invalid_argument("forward window must be >= 1");
  std::vector<DisruptionScore> scores(g.node_count());
  parallel_for(g.node_count(), threads, [&](std::size_t i) {
    scores[i] = detail::cd_for_index(g, static_cast<std::uint32_t>(i), window, include_same_year);
  });
  return scores;
}

// Unweighted annual mean of defined scores. Papers with no forward events
// are excluded rather than imputed as 0; a cohort year where nothing is
// defined keeps a missing marker so downstream consumers cannot mistake
// absence for neutrality.
inline AnnualSeries annual_mean_cd(std::span<const DisruptionScore> scores) {
  std::map<int, std::pair<Rational, std::uint64_t>> by_year;
  for (const DisruptionScore& s : scores) {
    auto& [sum, defined] = by_year[s.year];
    if (s.defined()) {
      sum += s.value();
      ++defined;
    }
  }
  AnnualSeries series;
  for (const auto& [year, acc] : by_year) {
    const auto& [sum, defined] = acc;
    if (defined == 0) {
      series.set_missing(year);
    } else {
      series.set(year, to_double(sum / defined), defined);
    }
  }
  return series;
}

}  // namespace citegraph
