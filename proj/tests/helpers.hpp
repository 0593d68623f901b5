#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "graph.hpp"

namespace ddgp::testing {

// Five-vertex fixture: edges 12,13,15,23,24,34,45 with weights
// d12=d15=d23=d45=1, d13=sqrt(2), d24=sqrt(5), d34=2, realizable in the plane
// by (1,0),(2,0),(2,1),(0,1),(0,0).
inline WeightedGraph five_vertex_graph(double d24 = std::sqrt(5.0),
                                       double d34 = 2.0) {
  return WeightedGraph(5, {{1, 2, 1.0},
                           {1, 3, std::sqrt(2.0)},
                           {1, 5, 1.0},
                           {2, 3, 1.0},
                           {2, 4, d24},
                           {3, 4, d34},
                           {4, 5, 1.0}});
}

inline DiscretizationScheme five_vertex_scheme() {
  return DiscretizationScheme(2, {1, 2, 3, 4, 5},
                              {{3, {1, 2}}, {4, {2, 3}}, {5, {1, 4}}});
}

// Planted points for a generic planar chain; nothing collinear, no mirror
// coincidences.
inline const double kChain5Points[5][2] = {
    {0.0, 0.0}, {1.3, 0.0}, {1.71, 1.24}, {2.9, 0.8}, {3.2, 2.1}};

inline double chain5_distance(int i, int j) {
  const double dx = kChain5Points[i - 1][0] - kChain5Points[j - 1][0];
  const double dy = kChain5Points[i - 1][1] - kChain5Points[j - 1][1];
  return std::sqrt(dx * dx + dy * dy);
}

// A chain whose clusters are the two immediate predecessors and whose edge
// set is exactly the pairs at order distance <= 2.
inline WeightedGraph chain5_graph() {
  std::vector<WeightedEdge> edges;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5 && j - i <= 2; ++j) {
      edges.push_back({i, j, chain5_distance(i, j)});
    }
  }
  return WeightedGraph(5, std::move(edges));
}

inline DiscretizationScheme chain5_scheme() {
  return DiscretizationScheme(2, {1, 2, 3, 4, 5},
                              {{3, {1, 2}}, {4, {2, 3}}, {5, {3, 4}}});
}

}  // namespace ddgp::testing
