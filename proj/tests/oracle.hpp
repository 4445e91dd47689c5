#pragma once

// Brute-force reference implementations used only by tests. Everything here
// works on flat node/edge lists with linear scans — no adjacency indexes, no
// shared code with the library's metric path — so agreement between the two
// is meaningful.

#include <cstdint>
#include <utility>
#include <vector>

#include "citegraph/graph.hpp"

namespace oracle {

struct RawGraph {
  std::vector<citegraph::PaperNode> nodes;
  std::vector<std::pair<citegraph::PaperId, citegraph::PaperId>> edges;  // (citing, cited)
};

inline RawGraph raw_from(const citegraph::CitationGraph& g) {
  RawGraph raw;
  for (std::uint32_t idx = 0; idx < g.node_count(); ++idx) {
    raw.nodes.push_back({g.id_at(idx), g.year_at(idx)});
  }
  raw.edges = g.edge_list();
  return raw;
}

inline int year_of(const RawGraph& g, citegraph::PaperId id) {
  for (const auto& n : g.nodes) {
    if (n.id == id) return n.year;
  }
  throw std::out_of_range("oracle: unknown paper");
}

inline std::vector<citegraph::PaperId> references_of(const RawGraph& g, citegraph::PaperId id) {
  std::vector<citegraph::PaperId> refs;
  for (const auto& [citing, cited] : g.edges) {
    if (citing == id) refs.push_back(cited);
  }
  return refs;
}

inline bool cites(const RawGraph& g, citegraph::PaperId citing, citegraph::PaperId cited) {
  for (const auto& e : g.edges) {
    if (e.first == citing && e.second == cited) return true;
  }
  return false;
}

struct Event {
  citegraph::PaperId paper;
  bool cites_focal;
  bool cites_predecessor;
};

// Every node is scanned against the forward-window definition; each edge of
// a candidate is scanned against the focal paper and each of its references.
inline std::vector<Event> forward_events(const RawGraph& g, citegraph::PaperId focal, int window,
                                         bool include_same_year = false) {
  const int focal_year = year_of(g, focal);
  const auto refs = references_of(g, focal);
  const int lo = include_same_year ? focal_year : focal_year + 1;
  const int hi = focal_year + window;
  std::vector<Event> events;
  for (const auto& node : g.nodes) {
    if (node.id == focal) continue;
    if (node.year < lo || node.year > hi) continue;
    const bool f = cites(g, node.id, focal);
    bool b = false;
    for (const auto& r : refs) {
      if (cites(g, node.id, r)) {
        b = true;
        break;
      }
    }
    if (f || b) events.push_back({node.id, f, b});
  }
  return events;
}

struct Score {
  std::uint64_t n = 0;
  std::int64_t sum = 0;
};

inline Score cd_index(const RawGraph& g, citegraph::PaperId focal, int window,
                      bool include_same_year = false) {
  Score s;
  for (const Event& e : forward_events(g, focal, window, include_same_year)) {
    ++s.n;
    if (e.cites_focal) s.sum += e.cites_predecessor ? -1 : +1;
  }
  return s;
}

}  // namespace oracle
