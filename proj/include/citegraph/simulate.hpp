#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "citegraph/disruption.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/rng.hpp"
#include "citegraph/series.hpp"
#include "citegraph/weighting.hpp"

namespace citegraph {

// Parameters of the synthetic citation network. Cohort t holds
// round(initial_papers * (1+growth)^t) papers; each new paper draws
// refs_per_paper distinct references from strictly earlier cohorts with
// probability proportional to (in-degree + 1)^attach_bias. The +1 keeps
// uncited papers reachable (the usual Price-model smoothing);
// attach_bias = 0 degenerates to uniform selection.
//
// p_disrupt controls the event mix the disruption index sees: per selected
// target, with probability p_disrupt the new paper's remaining reference
// list is purged of that target's own references, forcing a
// cites-the-focal-alone event for it.
struct SimConfig {
  std::uint32_t initial_papers = 100;  // cohort size in year 0
  double growth = 0.05;                // fractional cohort growth per year
  std::uint32_t years = 40;
  std::uint32_t refs_per_paper = 10;
  double attach_bias = 1.0;
  double p_disrupt = 0.3;
  std::uint64_t seed = 1;
};

struct SimResult {
  CitationGraph graph;
  // Papers that wanted more references than earlier papers existed; their
  // draw was clamped to everything available.
  std::uint64_t clamped_papers = 0;
};

namespace detail {

// Fenwick tree over attachment weights: point update and sampling by
// cumulative weight in O(log n). Selection without replacement zeroes a
// chosen slot and restores it afterwards.
class WeightedPicker {
 public:
  explicit WeightedPicker(std::size_t capacity)
      : tree_(capacity + 1, 0.0), weights_(capacity, 0.0) {}

  double total() const { return total_; }
  double weight(std::size_t i) const { return weights_[i]; }

  void set(std::size_t i, double w) {
    add(i, w - weights_[i]);
  }

  // Smallest index whose cumulative weight exceeds target. Targets at or
  // beyond the total (a floating-point corner) fall back to the last
  // positive-weight slot.
  std::size_t pick(double target) const {
    std::size_t pos = 0;
    std::size_t mask = high_bit(tree_.size() - 1);
    double remaining = target;
    while (mask != 0) {
      const std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] <= remaining) {
        pos = next;
        remaining -= tree_[next];
      }
      mask >>= 1;
    }
    if (pos >= weights_.size() || weights_[pos] <= 0.0) {
      while (pos > 0 && (pos >= weights_.size() || weights_[pos] <= 0.0)) --pos;
    }
    return pos;
  }

 private:
  void add(std::size_t i, double delta) {
    total_ += delta;
    weights_[i] += delta;
    for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += delta;
  }

  static std::size_t high_bit(std::size_t n) {
    std::size_t bit = 1;
    while ((bit << 1) <= n) bit <<= 1;
    return bit;
  }

  std::vector<double> tree_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

inline void validate(const SimConfig& config) {
  if (config.initial_papers < 1) throw std::invalid_argument("simulation needs initial_papers >= 1");
  if (config.years < 2) throw std::invalid_argument("simulation needs years >= 2");
  if (config.years > 9999) throw std::invalid_argument("simulation supports at most 9999 years");
  if (!(config.growth > -1.0)) throw std::invalid_argument("growth must exceed -1");
  if (!(config.attach_bias >= 0.0)) throw std::invalid_argument("attach_bias must be >= 0");
  if (!(config.p_disrupt >= 0.0 && config.p_disrupt <= 1.0)) {
    throw std::invalid_argument("p_disrupt must lie in [0,1]");
  }
}

}  // namespace detail

inline std::uint64_t cohort_size(const SimConfig& config, std::uint32_t t) {
  const double raw = static_cast<double>(config.initial_papers) * std::pow(1.0 + config.growth, static_cast<double>(t));
  if (!(raw < 1e15)) throw std::invalid_argument("cohort size overflows at year " + std::to_string(t));
  const long long rounded = std::llround(raw);
  return rounded < 0 ? 0 : static_cast<std::uint64_t>(rounded);
}

// Grows the network one paper at a time on a single seeded stream, so a
// config maps to exactly one graph. Paper ids are assigned in generation
// order; a paper's year is its cohort index.
inline SimResult generate(const SimConfig& config) {
  detail::validate(config);
  std::vector<std::uint64_t> cohorts(config.years);
  std::uint64_t total_papers = 0;
  for (std::uint32_t t = 0; t < config.years; ++t) {
    cohorts[t] = cohort_size(config, t);
    total_papers += cohorts[t];
  }
  if (total_papers == 0) throw std::invalid_argument("simulation produced no papers");
  if (total_papers > 100'000'000) {
    throw std::invalid_argument("simulation produces " + std::to_string(total_papers) +
                                " papers, beyond the supported size");
  }

  Rng rng(config.seed);
  detail::WeightedPicker picker(total_papers);
  std::vector<std::uint32_t> in_degree(total_papers, 0);
  std::vector<std::vector<std::uint32_t>> refs_of(total_papers);  // sorted per paper

  auto attach_weight = [&](std::uint32_t degree) {
    return config.attach_bias == 1.0
               ? static_cast<double>(degree) + 1.0
               : std::pow(static_cast<double>(degree) + 1.0, config.attach_bias);
  };

  SimResult result;
  std::vector<PaperNode> nodes;
  nodes.reserve(total_papers);
  std::vector<CitationEdge> edges;

  std::uint64_t next_paper = 0;
  std::uint64_t eligible = 0;  // papers from cohorts before the current one
  std::vector<std::uint64_t> chosen;
  std::vector<double> saved_weights;
  for (std::uint32_t t = 0; t < config.years; ++t) {
    const std::uint64_t first_of_cohort = next_paper;
    for (std::uint64_t p = 0; p < cohorts[t]; ++p) {
      const std::uint64_t paper = next_paper++;
      nodes.push_back({paper, static_cast<int>(t)});

      std::uint64_t want = config.refs_per_paper;
      if (want > eligible) {
        if (config.refs_per_paper > 0) ++result.clamped_papers;
        want = eligible;
      }

      chosen.clear();
      saved_weights.clear();
      for (std::uint64_t d = 0; d < want; ++d) {
        const double target = rng.next_unit() * picker.total();
        const std::size_t pick = picker.pick(target);
        chosen.push_back(pick);
        saved_weights.push_back(picker.weight(pick));
        picker.set(pick, 0.0);  // without replacement
      }
      for (std::size_t d = 0; d < chosen.size(); ++d) picker.set(chosen[d], saved_weights[d]);

      // Reference pruning: walk targets in selection order; a target still
      // on the list keeps its citer with probability 1, but with
      // probability p_disrupt drops every one of its own references from
      // this paper's list. A target removed by an earlier prune no longer
      // draws a coin.
      std::vector<std::uint32_t> final_refs(chosen.begin(), chosen.end());
      std::sort(final_refs.begin(), final_refs.end());
      for (std::uint64_t target : chosen) {
        if (!std::binary_search(final_refs.begin(), final_refs.end(), static_cast<std::uint32_t>(target))) {
          continue;
        }
        if (config.p_disrupt <= 0.0) continue;
        if (rng.next_unit() >= config.p_disrupt) continue;
        const auto& target_refs = refs_of[target];
        std::erase_if(final_refs, [&](std::uint32_t r) {
          return r != target &&
                 std::binary_search(target_refs.begin(), target_refs.end(), r);
        });
      }

      for (std::uint32_t r : final_refs) {
        edges.push_back({paper, r});
        ++in_degree[r];
        picker.set(r, attach_weight(in_degree[r]));
      }
      refs_of[paper] = std::move(final_refs);
    }
    // The finished cohort becomes eligible for the next one.
    for (std::uint64_t p = first_of_cohort; p < next_paper; ++p) {
      picker.set(p, attach_weight(in_degree[p]));
    }
    eligible = next_paper;
  }

  IngestReport report;
  result.graph = CitationGraph::build(std::move(nodes), edges,
                                      IngestOptions{0, static_cast<int>(config.years - 1), true}, &report);
  internal_check(report.year_bounds_dropped == 0 && report.self_loops_dropped == 0 &&
                     report.dangling_edges_dropped == 0 && report.time_violations_dropped == 0 &&
                     report.duplicates_dropped == 0,
                 "simulator emitted records the ingest rules rejected");
  return result;
}

struct DilutionResult {
  SimResult sim;
  AnnualSeries cd_series;
  AnnualSeries mcd_series;
};

// Generates a network and evaluates both the unweighted annual CD mean and
// the citation-weighted annual index (per-year-average weights, horizon at
// the last simulated year). The output keeps only interior cohorts: the
// seed cohort has nothing to cite, so its scores are structurally +1, and
// trailing cohorts lack a full forward window inside the simulated span.
//
// With a window w and Y simulated years that leaves cohorts 1..Y-2-w, so
// the shortest usable run, Y = w + 3, yields exactly one cohort.
inline DilutionResult dilution_experiment(const SimConfig& config, int window, unsigned threads = 0) {
  if (window < 1) throw std::invalid_argument("forward window must be >= 1");
  if (config.years <= static_cast<std::uint32_t>(window) + 2) {
    throw std::invalid_argument("dilution experiment needs years > window + 2");
  }
  DilutionResult result;
  result.sim = generate(config);
  const auto scores = cd_all(result.sim.graph, window, threads);
  const auto weights =
      citation_weights(result.sim.graph, std::nullopt, WeightMode::PerYearAverage, window);
  const int last_kept = static_cast<int>(config.years) - 2 - window;
  result.cd_series = annual_mean_cd(scores).slice(1, last_kept);
  result.mcd_series = weighted_annual_mcd(scores, weights).slice(1, last_kept);
  return result;
}

}  // namespace citegraph
