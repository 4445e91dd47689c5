#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citegraph/disruption.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/growth.hpp"
#include "citegraph/lexical.hpp"
#include "citegraph/numeric.hpp"
#include "citegraph/series.hpp"
#include "citegraph/weighting.hpp"

// CSV renderers for every format the tools emit. All floating-point fields
// go through format_value (12 significant digits); missing values render as
// empty fields, never as 0.

namespace citegraph {

inline std::string render_scores_csv(std::span<const DisruptionScore> scores) {
  std::string out = "paper_id,year,n_t,cd\n";
  for (const DisruptionScore& s : scores) {
    out += std::to_string(s.paper);
    out += ',';
    out += std::to_string(s.year);
    out += ',';
    out += std::to_string(s.n_events);
    out += ',';
    if (s.defined()) out += format_value(s.value_double());
    out += '\n';
  }
  return out;
}

inline std::string render_series_csv(const AnnualSeries& series) {
  std::string out = "year,value,count\n";
  for (const auto& [year, entry] : series) {
    out += std::to_string(year);
    out += ',';
    if (entry.value) out += format_value(*entry.value);
    out += ',';
    out += std::to_string(entry.count);
    out += '\n';
  }
  return out;
}

inline std::string render_weights_csv(std::span<const CitationWeight> weights) {
  std::string out = "paper_id,c_it,mode\n";
  for (const CitationWeight& w : weights) {
    out += std::to_string(w.paper);
    out += ',';
    out += format_value(to_double(w.value));
    out += ',';
    out += to_string(w.mode);
    out += '\n';
  }
  return out;
}

inline std::string render_report_kv(const IngestReport& r) {
  std::string out;
  out += "nodes_read=" + std::to_string(r.nodes_read);
  out += " edges_read=" + std::to_string(r.edges_read);
  out += " year_bounds_dropped=" + std::to_string(r.year_bounds_dropped);
  out += " self_loops_dropped=" + std::to_string(r.self_loops_dropped);
  out += " dangling_edges_dropped=" + std::to_string(r.dangling_edges_dropped);
  out += " time_violations_dropped=" + std::to_string(r.time_violations_dropped);
  out += " duplicates_dropped=" + std::to_string(r.duplicates_dropped);
  return out;
}

inline std::string render_report_csv(const IngestReport& r) {
  std::string out =
      "nodes_read,edges_read,year_bounds_dropped,self_loops_dropped,"
      "dangling_edges_dropped,time_violations_dropped,duplicates_dropped\n";
  out += std::to_string(r.nodes_read) + ',' + std::to_string(r.edges_read) + ',' +
         std::to_string(r.year_bounds_dropped) + ',' + std::to_string(r.self_loops_dropped) + ',' +
         std::to_string(r.dangling_edges_dropped) + ',' +
         std::to_string(r.time_violations_dropped) + ',' + std::to_string(r.duplicates_dropped) +
         '\n';
  return out;
}

inline std::string render_nodes_csv(const CitationGraph& g) {
  std::string out = "paper_id,year\n";
  for (std::uint32_t idx = 0; idx < g.node_count(); ++idx) {
    out += std::to_string(g.id_at(idx));
    out += ',';
    out += std::to_string(g.year_at(idx));
    out += '\n';
  }
  return out;
}

inline std::string render_edges_csv(const CitationGraph& g) {
  std::string out = "citing_id,cited_id\n";
  for (const auto& [citing, cited] : g.edge_list()) {
    out += std::to_string(citing);
    out += ',';
    out += std::to_string(cited);
    out += '\n';
  }
  return out;
}

inline std::string render_growth_fit_csv(const GrowthFit& fit) {
  std::string out = "rate,log_intercept,r_squared,years_used,years_skipped,degenerate\n";
  out += format_value(fit.rate) + ',' + format_value(fit.log_intercept) + ',' +
         format_value(fit.r_squared) + ',' + std::to_string(fit.years_used) + ',' +
         std::to_string(fit.years_skipped) + ',' + (fit.degenerate ? "1" : "0") + '\n';
  return out;
}

inline std::string render_lex_series_csv(const LexSeries& series) {
  std::string out = "year,total_tokens,vocabulary,hapax,hapax_fraction,ttr\n";
  for (const auto& [year, stats] : series) {
    out += std::to_string(year) + ',' + std::to_string(stats.total_tokens) + ',' +
           std::to_string(stats.vocabulary) + ',' + std::to_string(stats.hapax) + ',' +
           format_value(stats.hapax_fraction()) + ',' + format_value(stats.ttr()) + '\n';
  }
  return out;
}

inline std::string render_dilution_csv(
    std::span<const std::pair<std::uint64_t, LexStats>> rows) {
  std::string out = "tokens,vocabulary,hapax,hapax_fraction,ttr\n";
  for (const auto& [tokens, stats] : rows) {
    out += std::to_string(tokens) + ',' + std::to_string(stats.vocabulary) + ',' +
           std::to_string(stats.hapax) + ',' + format_value(stats.hapax_fraction()) + ',' +
           format_value(stats.ttr()) + '\n';
  }
  return out;
}

}  // namespace citegraph
