#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citegraph/csv.hpp"
#include "citegraph/error.hpp"

namespace citegraph {

using PaperId = std::uint64_t;

struct PaperNode {
  PaperId id = 0;
  int year = 0;
  bool operator==(const PaperNode&) const = default;
};

struct CitationEdge {
  PaperId citing = 0;
  PaperId cited = 0;
  bool operator==(const CitationEdge&) const = default;
};

struct IngestOptions {
  int min_year = 0;
  int max_year = 9999;
  // Edges whose citing paper predates the cited paper are noise in real
  // bibliographic dumps; dropped unless explicitly retained.
  bool drop_time_violations = true;
};

// Accounting for one load. Every input row ends up either retained or in
// exactly one drop counter:
//   nodes_read == retained nodes + year_bounds_dropped
//   edges_read == retained edges + self_loops_dropped + dangling_edges_dropped
//                 + time_violations_dropped + duplicates_dropped
struct IngestReport {
  std::uint64_t nodes_read = 0;
  std::uint64_t edges_read = 0;
  std::uint64_t year_bounds_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t dangling_edges_dropped = 0;
  std::uint64_t time_violations_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
  bool operator==(const IngestReport&) const = default;
};

// Immutable directed citation graph. Nodes are papers with publication
// years; an edge (citing -> cited) is a reference. Both adjacency
// directions are kept in CSR form, sorted, so every query is deterministic
// and safe for unrestricted concurrent reads after construction.
class CitationGraph {
 public:
  CitationGraph() = default;

  // Builds from raw records, applying the ingest rules. Node rows outside
  // the year bounds are dropped and counted. Edge rows are classified in
  // order: self-loop, dangling endpoint, time violation, duplicate; the
  // first matching rule wins, so each row increments one counter at most.
  // Duplicate node ids are an error: they would make years ambiguous.
  static CitationGraph build(std::vector<PaperNode> nodes,
                             const std::vector<CitationEdge>& edges,
                             const IngestOptions& options = {},
                             IngestReport* report = nullptr) {
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    rep = IngestReport{};
    rep.nodes_read = nodes.size();
    rep.edges_read = edges.size();

    std::erase_if(nodes, [&](const PaperNode& n) {
      const bool out = n.year < options.min_year || n.year > options.max_year;
      if (out) ++rep.year_bounds_dropped;
      return out;
    });
    std::sort(nodes.begin(), nodes.end(),
              [](const PaperNode& a, const PaperNode& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (nodes[i].id == nodes[i - 1].id) {
        throw IngestError("duplicate paper id " + std::to_string(nodes[i].id) + " in nodes input");
      }
    }
    if (nodes.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw IngestError("node count exceeds supported graph size");
    }

    CitationGraph g;
    g.ids_.reserve(nodes.size());
    g.years_.reserve(nodes.size());
    for (const PaperNode& n : nodes) {
      g.ids_.push_back(n.id);
      g.years_.push_back(n.year);
    }
    if (!g.ids_.empty()) {
      auto [lo, hi] = std::minmax_element(g.years_.begin(), g.years_.end());
      g.min_year_ = *lo;
      g.max_year_ = *hi;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> retained;
    retained.reserve(edges.size());
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size());
    for (const CitationEdge& e : edges) {
      if (e.citing == e.cited) {
        ++rep.self_loops_dropped;
        continue;
      }
      const auto src = g.find_index(e.citing);
      const auto dst = g.find_index(e.cited);
      if (!src || !dst) {
        ++rep.dangling_edges_dropped;
        continue;
      }
      if (options.drop_time_violations && g.years_[*src] < g.years_[*dst]) {
        ++rep.time_violations_dropped;
        continue;
      }
      const std::uint64_t key = (static_cast<std::uint64_t>(*src) << 32) | *dst;
      if (!seen.insert(key).second) {
        ++rep.duplicates_dropped;
        continue;
      }
      retained.emplace_back(*src, *dst);
    }
    g.build_adjacency(retained);
    return g;
  }

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }
  bool empty() const { return ids_.empty(); }

  // Publication year range over retained nodes; meaningless on an empty graph.
  int min_year() const { return min_year_; }
  int max_year() const { return max_year_; }

  bool contains(PaperId id) const { return find_index(id).has_value(); }

  std::optional<std::uint32_t> find_index(PaperId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - ids_.begin());
  }

  std::uint32_t index_of(PaperId id) const {
    const auto idx = find_index(id);
    if (!idx) throw std::out_of_range("unknown paper id " + std::to_string(id));
    return *idx;
  }

  PaperId id_at(std::uint32_t idx) const { return ids_[idx]; }
  int year_at(std::uint32_t idx) const { return years_[idx]; }
  int year_of(PaperId id) const { return years_[index_of(id)]; }

  const std::vector<PaperId>& ids() const { return ids_; }

  // Out-neighbors: the papers this one references. Ascending by index.
  std::span<const std::uint32_t> out_neighbors(std::uint32_t idx) const {
    return {out_targets_.data() + out_offsets_[idx], out_targets_.data() + out_offsets_[idx + 1]};
  }

  // In-neighbors: the papers citing this one. Sorted by (year, index) so a
  // publication-year window maps to one contiguous range.
  std::span<const std::uint32_t> in_neighbors(std::uint32_t idx) const {
    return {in_sources_.data() + in_offsets_[idx], in_sources_.data() + in_offsets_[idx + 1]};
  }

  // Citers of idx published in [year_lo, year_hi].
  std::span<const std::uint32_t> in_neighbors_in_years(std::uint32_t idx, int year_lo,
                                                       int year_hi) const {
    const auto* years_begin = in_source_years_.data() + in_offsets_[idx];
    const auto* years_end = in_source_years_.data() + in_offsets_[idx + 1];
    const auto lo = std::lower_bound(years_begin, years_end, year_lo);
    const auto hi = std::upper_bound(lo, years_end, year_hi);
    const auto* sources = in_sources_.data() + in_offsets_[idx];
    return {sources + (lo - years_begin), sources + (hi - years_begin)};
  }

  std::vector<PaperId> references_of(PaperId id) const {
    return to_ids(out_neighbors(index_of(id)));
  }

  std::vector<PaperId> citers_of(PaperId id) const {
    auto out = to_ids(in_neighbors(index_of(id)));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Future papers that engage with the focal paper: every j with
  // year(i) < year(j) <= year(i) + window (lower bound relaxed to
  // year(i) <= year(j) when include_same_year is set) that cites i or cites
  // at least one of i's references. The focal paper itself never counts.
  std::vector<std::uint32_t> forward_set_indices(std::uint32_t idx, int window,
                                                 bool include_same_year = false) const {
    if (window < 1) throw std::invalid_argument("forward window must be >= 1");
    const int lo = include_same_year ? years_[idx] : years_[idx] + 1;
    const int hi = years_[idx] + window;
    std::vector<std::uint32_t> out;
    for (std::uint32_t j : in_neighbors_in_years(idx, lo, hi)) {
      if (j != idx) out.push_back(j);
    }
    for (std::uint32_t ref : out_neighbors(idx)) {
      for (std::uint32_t j : in_neighbors_in_years(ref, lo, hi)) {
        if (j != idx) out.push_back(j);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<PaperId> forward_set(PaperId id, int window, bool include_same_year = false) const {
    return to_ids_owned(forward_set_indices(index_of(id), window, include_same_year));
  }

  // Retained edges as (citing, cited) id pairs, ascending.
  std::vector<std::pair<PaperId, PaperId>> edge_list() const {
    std::vector<std::pair<PaperId, PaperId>> out;
    out.reserve(edge_count());
    for (std::uint32_t src = 0; src < ids_.size(); ++src) {
      for (std::uint32_t dst : out_neighbors(src)) out.emplace_back(ids_[src], ids_[dst]);
    }
    return out;
  }

  bool operator==(const CitationGraph&) const = default;

 private:
  void build_adjacency(std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    const std::size_t n = ids_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const auto& [src, dst] : edges) {
      ++out_offsets_[src + 1];
      ++in_offsets_[dst + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      out_offsets_[i + 1] += out_offsets_[i];
      in_offsets_[i + 1] += in_offsets_[i];
    }
    out_targets_.resize(edges.size());
    in_sources_.resize(edges.size());
    in_source_years_.resize(edges.size());
    std::vector<std::uint32_t> out_cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::uint32_t> in_cursor(in_offsets_.begin(), in_offsets_.end() - 1);
    std::sort(edges.begin(), edges.end());
    for (const auto& [src, dst] : edges) {
      out_targets_[out_cursor[src]++] = dst;
    }
    std::stable_sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
      return std::tuple(a.second, years_[a.first], a.first) <
             std::tuple(b.second, years_[b.first], b.first);
    });
    for (const auto& [src, dst] : edges) {
      in_source_years_[in_cursor[dst]] = years_[src];
      in_sources_[in_cursor[dst]++] = src;
    }
  }

  std::vector<PaperId> to_ids(std::span<const std::uint32_t> indices) const {
    std::vector<PaperId> out;
    out.reserve(indices.size());
    for (std::uint32_t i : indices) out.push_back(ids_[i]);
    return out;
  }

  std::vector<PaperId> to_ids_owned(const std::vector<std::uint32_t>& indices) const {
    return to_ids(std::span<const std::uint32_t>(indices));
  }

  std::vector<PaperId> ids_;  // ascending; position is the dense node index
  std::vector<int> years_;
  std::vector<std::uint32_t> out_offsets_;
  std::vector<std::uint32_t> out_targets_;
  std::vector<std::uint32_t> in_offsets_;
  std::vector<std::uint32_t> in_sources_;     // per row: sorted by (year, index)
  std::vector<int> in_source_years_;          // years_[in_sources_[k]], kept adjacent for range scans
  int min_year_ = 0;
  int max_year_ = 0;
};

struct LoadResult {
  CitationGraph graph;
  IngestReport report;
};

// Loads nodes.csv (header `paper_id,year`) and edges.csv (header
// `citing_id,cited_id`). Unparseable rows and duplicate node ids fail fast
// with a file:line diagnostic; recoverable noise (dangling, duplicate,
// time-violating edges, out-of-bounds years) is dropped and counted.
inline LoadResult load_graph(const std::filesystem::path& nodes_path,
                             const std::filesystem::path& edges_path,
                             const IngestOptions& options = {}) {
  std::vector<PaperNode> nodes;
  {
    CsvReader reader(nodes_path, "paper_id,year");
    std::vector<std::string> fields;
    std::unordered_set<PaperId> ids;
    while (reader.next_row(fields)) {
      reader.require_fields(fields, 2);
      PaperNode n;
      n.id = reader.parse_u64(fields[0], "paper_id");
      const long long year = reader.parse_i64(fields[1], "year");
      if (year < std::numeric_limits<int>::min() || year > std::numeric_limits<int>::max()) {
        reader.fail("year out of representable range");
      }
      n.year = static_cast<int>(year);
      if (!ids.insert(n.id).second) {
        reader.fail("duplicate paper_id " + fields[0]);
      }
      nodes.push_back(n);
    }
  }
  std::vector<CitationEdge> edges;
  {
    CsvReader reader(edges_path, "citing_id,cited_id");
    std::vector<std::string> fields;
    while (reader.next_row(fields)) {
      reader.require_fields(fields, 2);
      edges.push_back({reader.parse_u64(fields[0], "citing_id"),
                       reader.parse_u64(fields[1], "cited_id")});
    }
  }
  LoadResult result;
  result.graph = CitationGraph::build(std::move(nodes), edges, options, &result.report);
  return result;
}

}  // namespace citegraph
