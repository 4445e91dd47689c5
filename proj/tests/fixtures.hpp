#pragma once

// Shared test fixtures: a small hand-checked citation graph and a seeded
// random-graph generator for property-style checks.

#include <cstdint>
#include <utility>
#include <vector>

#include "citegraph/graph.hpp"
#include "citegraph/rng.hpp"

namespace fixtures {

// Focal paper 10 (year 2000) references 1 and 2 (1999). Forward papers:
//   20 (2001) cites 10 alone            -> f=1,b=0, term +1
//   21 (2002) cites 10 and 1            -> f=1,b=1, term -1
//   22 (2003) cites 1 alone             -> f=0,b=1, term  0
//   23 (2009) cites 10, outside window 5
//   24 (2000) cites 10, same year as focal (excluded by default)
inline citegraph::CitationGraph hand_graph(citegraph::IngestReport* report = nullptr) {
  std::vector<citegraph::PaperNode> nodes{
      {1, 1999}, {2, 1999}, {10, 2000}, {20, 2001}, {21, 2002}, {22, 2003}, {23, 2009}, {24, 2000},
  };
  std::vector<citegraph::CitationEdge> edges{
      {10, 1}, {10, 2}, {20, 10}, {21, 10}, {21, 1}, {22, 1}, {23, 10}, {24, 10},
  };
  return citegraph::CitationGraph::build(std::move(nodes), edges, {}, report);
}

struct RandomGraphParams {
  std::uint32_t max_nodes = 50;
  std::uint32_t max_edges = 300;
  int base_year = 2000;
  int year_span = 12;
};

// Node ids are spread over a large range so the id->index mapping is
// exercised; raw edges may contain self-loops, duplicates, dangling
// endpoints and time violations, which the build rules must absorb.
inline citegraph::CitationGraph random_graph(std::uint64_t seed,
                                             const RandomGraphParams& params = {},
                                             citegraph::IngestReport* report = nullptr) {
  citegraph::Rng rng(seed);
  const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.next_index(params.max_nodes - 1));
  std::vector<citegraph::PaperNode> nodes;
  std::vector<citegraph::PaperId> ids;
  for (std::uint32_t i = 0; i < n; ++i) {
    const citegraph::PaperId id = rng.next_u64() % 1'000'000;
    const int year = params.base_year + static_cast<int>(rng.next_index(params.year_span));
    nodes.push_back({id, year});
    ids.push_back(id);
  }
  // Duplicate ids would be rejected; regenerate instead.
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    return random_graph(seed + 0x9E3779B97F4A7C15ULL, params, report);
  }
  const std::uint64_t m = rng.next_index(params.max_edges + 1);
  std::vector<citegraph::CitationEdge> edges;
  for (std::uint64_t e = 0; e < m; ++e) {
    citegraph::PaperId citing = ids[rng.next_index(ids.size())];
    citegraph::PaperId cited = ids[rng.next_index(ids.size())];
    if (rng.next_unit() < 0.02) citing = cited;              // occasional self-loop
    if (rng.next_unit() < 0.02) cited = rng.next_u64();      // occasional dangling endpoint
    edges.push_back({citing, cited});
  }
  return citegraph::CitationGraph::build(std::move(nodes), edges, {}, report);
}

}  // namespace fixtures
