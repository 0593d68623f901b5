#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ddgp {

namespace {

std::string pair_text(int i, int j) {
  std::ostringstream os;
  os << "{" << i << "," << j << "}";
  return os.str();
}

// Visits all k-subsets of {0,..,n-1} in lexicographic order until fn returns
// false.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

std::uint64_t WeightedGraph::key(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

WeightedGraph::WeightedGraph(int n, std::vector<WeightedEdge> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
  adjacency_.assign(static_cast<std::size_t>(n) + 1, {});
  edges_.reserve(edges.size());
  for (WeightedEdge e : edges) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n) {
      throw std::invalid_argument("edge " + pair_text(e.i, e.j) +
                                  " has a vertex outside 1.." +
                                  std::to_string(n));
    }
    if (e.i == e.j) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.i));
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge " + pair_text(e.i, e.j) +
                                  " has nonpositive or nonfinite weight");
    }
    if (!weight_by_pair_.emplace(key(e.i, e.j), e.weight).second) {
      throw std::invalid_argument("duplicate edge " + pair_text(e.i, e.j));
    }
    edges_.push_back(e);
    adjacency_[e.i].push_back(e.j);
    adjacency_[e.j].push_back(e.i);
  }
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool WeightedGraph::has_edge(int i, int j) const {
  return weight_by_pair_.count(key(i, j)) > 0;
}

double WeightedGraph::weight(int i, int j) const {
  auto it = weight_by_pair_.find(key(i, j));
  if (it == weight_by_pair_.end()) {
    throw std::out_of_range("no edge " + pair_text(i, j));
  }
  return it->second;
}

const std::vector<int>& WeightedGraph::neighbors(int v) const {
  if (v < 1 || v > n_) throw std::out_of_range("vertex out of range");
  return adjacency_[static_cast<std::size_t>(v)];
}

DiscretizationScheme::DiscretizationScheme(
    int dimension, std::vector<int> order,
    std::map<int, std::vector<int>> clusters)
    : k_(dimension), order_(std::move(order)), clusters_(std::move(clusters)) {
  if (k_ < 1) throw std::invalid_argument("dimension must be at least 1");
  if (order_.empty()) throw std::invalid_argument("order must not be empty");
  for (std::size_t r = 0; r < order_.size(); ++r) {
    int v = order_[r];
    if (v < 1) throw std::invalid_argument("order contains nonpositive label");
    if (!rank_.emplace(v, static_cast<int>(r) + 1).second) {
      throw std::invalid_argument("order repeats vertex " + std::to_string(v));
    }
  }
  for (auto& [v, members] : clusters_) {
    std::sort(members.begin(), members.end(), [this](int a, int b) {
      int ra = rank_of(a), rb = rank_of(b);
      return std::tie(ra, a) < std::tie(rb, b);
    });
  }
}

int DiscretizationScheme::rank_of(int vertex) const {
  auto it = rank_.find(vertex);
  return it == rank_.end() ? 0 : it->second;
}

const std::vector<int>& DiscretizationScheme::cluster(int vertex) const {
  auto it = clusters_.find(vertex);
  if (it == clusters_.end()) {
    throw std::out_of_range("no cluster for vertex " + std::to_string(vertex));
  }
  return it->second;
}

int DiscretizationScheme::latest_cluster_vertex(int vertex) const {
  const auto& members = cluster(vertex);
  if (members.empty()) throw std::out_of_range("empty cluster");
  return members.back();
}

const char* instance_kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::NotDiscretizable:
      return "not_discretizable";
    case InstanceKind::Ddgp:
      return "ddgp";
    case InstanceKind::CombinatorialDdgp:
      return "combinatorial_ddgp";
    case InstanceKind::Dmdgp:
      return "dmdgp";
  }
  return "unknown";
}

ValidationReport validate_scheme(const WeightedGraph& graph,
                                 const DiscretizationScheme& scheme) {
  ValidationReport report;
  auto flag = [&report](const std::string& text) {
    report.ok = false;
    report.violations.push_back(text);
  };

  const int n = graph.vertex_count();
  const int k = scheme.dimension();
  const auto& order = scheme.order();

  if (static_cast<int>(order.size()) != n) {
    flag("order lists " + std::to_string(order.size()) + " vertices, graph has " +
         std::to_string(n));
    return report;
  }
  for (int v : order) {
    if (v < 1 || v > n) {
      flag("order contains vertex " + std::to_string(v) + " outside 1.." +
           std::to_string(n));
      return report;
    }
  }
  if (k > n) {
    flag("dimension " + std::to_string(k) + " exceeds vertex count " +
         std::to_string(n));
    return report;
  }

  // Condition (i): the first K ordered vertices induce a clique.
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      int u = scheme.vertex_at_rank(a), v = scheme.vertex_at_rank(b);
      if (!graph.has_edge(u, v)) {
        flag("initial " + std::to_string(k) + "-set is not a clique: missing edge " +
             pair_text(std::min(u, v), std::max(u, v)));
      }
    }
  }

  // Condition (ii): each later vertex has a cluster of K adjacent predecessors.
  for (int r = k + 1; r <= n; ++r) {
    int v = scheme.vertex_at_rank(r);
    if (!scheme.has_cluster(v)) {
      flag("no cluster given for vertex " + std::to_string(v));
      continue;
    }
    const auto& members = scheme.cluster(v);
    std::set<int> unique(members.begin(), members.end());
    if (unique.size() != members.size()) {
      flag("cluster of vertex " + std::to_string(v) + " repeats a member");
    }
    if (static_cast<int>(unique.size()) != k) {
      flag("cluster of vertex " + std::to_string(v) + " has size " +
           std::to_string(unique.size()) + ", expected " + std::to_string(k));
    }
    for (int u : unique) {
      int ru = scheme.rank_of(u);
      if (ru == 0) {
        flag("cluster member " + std::to_string(u) + " of vertex " +
             std::to_string(v) + " is not in the order");
        continue;
      }
      if (ru >= r) {
        flag("cluster member " + std::to_string(u) + " does not precede vertex " +
             std::to_string(v));
      }
      if (!graph.has_edge(u, v)) {
        flag("cluster member " + std::to_string(u) + " is not adjacent to vertex " +
             std::to_string(v));
      }
    }
  }

  // Clusters attached to initial-clique vertices are meaningless.
  for (const auto& [v, members] : scheme.clusters()) {
    int rv = scheme.rank_of(v);
    if (rv == 0) {
      flag("cluster given for vertex " + std::to_string(v) +
           " which is not in the order");
    } else if (rv <= k) {
      flag("cluster given for vertex " + std::to_string(v) +
           " at rank " + std::to_string(rv) + " <= " + std::to_string(k));
    }
  }
  return report;
}

EdgePartition partition_edges(const WeightedGraph& graph,
                              const DiscretizationScheme& scheme) {
  ValidationReport report = validate_scheme(graph, scheme);
  if (!report.ok) {
    throw std::invalid_argument("scheme invalid: " + report.violations.front());
  }
  const int n = graph.vertex_count();
  const int k = scheme.dimension();
  std::set<std::pair<int, int>> discretization;
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      int u = scheme.vertex_at_rank(a), v = scheme.vertex_at_rank(b);
      discretization.emplace(std::min(u, v), std::max(u, v));
    }
  }
  for (int r = k + 1; r <= n; ++r) {
    int v = scheme.vertex_at_rank(r);
    for (int u : scheme.cluster(v)) {
      discretization.emplace(std::min(u, v), std::max(u, v));
    }
  }
  EdgePartition partition;
  for (const auto& e : graph.edges()) {
    if (discretization.count({e.i, e.j})) {
      partition.discretization.emplace_back(e.i, e.j);
    } else {
      partition.pruning.emplace_back(e.i, e.j);
    }
  }
  return partition;
}

InstanceClassification classify(const WeightedGraph& graph,
                                const DiscretizationScheme& scheme) {
  ValidationReport report = validate_scheme(graph, scheme);
  if (!report.ok) {
    throw std::invalid_argument("scheme invalid: " + report.violations.front());
  }
  const int n = graph.vertex_count();
  const int k = scheme.dimension();

  bool immediate = true;
  bool cliques = true;
  for (int r = k + 1; r <= n; ++r) {
    int v = scheme.vertex_at_rank(r);
    const auto& members = scheme.cluster(v);
    for (int u : members) {
      if (scheme.rank_of(u) < r - k) immediate = false;
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (!graph.has_edge(members[a], members[b])) cliques = false;
      }
    }
  }

  InstanceClassification result;
  if (immediate && cliques) {
    result.kind = InstanceKind::Dmdgp;
  } else if (cliques) {
    result.kind = InstanceKind::CombinatorialDdgp;
  } else {
    result.kind = InstanceKind::Ddgp;
  }
  result.pruning_free = partition_edges(graph, scheme).pruning.empty();
  return result;
}

namespace {

// Cluster preference: most adjacent pairs inside the set, then
// lexicographically smallest member list.
std::vector<int> best_cluster(const WeightedGraph& graph, int vertex,
                              const std::vector<int>& candidates, int k) {
  std::vector<int> best;
  int best_pairs = -1;
  for_each_combination(
      static_cast<int>(candidates.size()), k, [&](const std::vector<int>& idx) {
        std::vector<int> members;
        members.reserve(idx.size());
        for (int i : idx) members.push_back(candidates[static_cast<std::size_t>(i)]);
        int pairs = 0;
        for (std::size_t a = 0; a < members.size(); ++a) {
          for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (graph.has_edge(members[a], members[b])) ++pairs;
          }
        }
        if (pairs > best_pairs || (pairs == best_pairs && members < best)) {
          best_pairs = pairs;
          best = members;
        }
        return true;
      });
  (void)vertex;
  return best;
}

}  // namespace

FindOrderResult find_order(const WeightedGraph& graph, int dimension,
                           std::uint64_t budget) {
  if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
  const int n = graph.vertex_count();
  const int k = dimension;
  if (k > n) return {FindOrderStatus::NoneExists, std::nullopt};

  std::uint64_t steps = 0;
  bool out_of_budget = false;

  FindOrderResult result{FindOrderStatus::NoneExists, std::nullopt};
  for_each_combination(n, k, [&](const std::vector<int>& idx) {
    if (++steps > budget) {
      out_of_budget = true;
      return false;
    }
    std::vector<int> seed;
    seed.reserve(idx.size());
    for (int i : idx) seed.push_back(i + 1);
    for (std::size_t a = 0; a < seed.size(); ++a) {
      for (std::size_t b = a + 1; b < seed.size(); ++b) {
        if (!graph.has_edge(seed[a], seed[b])) return true;  // not a clique
      }
    }

    std::vector<int> order = seed;
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    for (int v : seed) placed[static_cast<std::size_t>(v)] = true;
    std::vector<int> placed_neighbors(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v) {
      for (int u : graph.neighbors(v)) {
        if (placed[static_cast<std::size_t>(u)]) ++placed_neighbors[v];
      }
    }
    while (static_cast<int>(order.size()) < n) {
      if (++steps > budget) {
        out_of_budget = true;
        return false;
      }
      int next = 0;
      for (int v = 1; v <= n; ++v) {
        if (!placed[static_cast<std::size_t>(v)] && placed_neighbors[v] >= k) {
          next = v;
          break;
        }
      }
      if (next == 0) break;  // closure smaller than V; try next seed
      placed[static_cast<std::size_t>(next)] = true;
      order.push_back(next);
      for (int u : graph.neighbors(next)) ++placed_neighbors[u];
    }
    if (static_cast<int>(order.size()) < n) return true;

    std::map<int, std::vector<int>> clusters;
    std::vector<bool> before(static_cast<std::size_t>(n) + 1, false);
    for (int r = 0; r < n; ++r) {
      int v = order[static_cast<std::size_t>(r)];
      if (r >= k) {
        std::vector<int> candidates;
        for (int u : graph.neighbors(v)) {
          if (before[static_cast<std::size_t>(u)]) candidates.push_back(u);
        }
        clusters[v] = best_cluster(graph, v, candidates, k);
      }
      before[static_cast<std::size_t>(v)] = true;
    }
    result = {FindOrderStatus::Found,
              DiscretizationScheme(k, order, std::move(clusters))};
    return false;
  });

  if (result.status == FindOrderStatus::Found) return result;
  if (out_of_budget) return {FindOrderStatus::BudgetExceeded, std::nullopt};
  return {FindOrderStatus::NoneExists, std::nullopt};
}

}  // namespace ddgp
