#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ddgp {

// One weighted edge; endpoints are stored with i < j.
struct WeightedEdge {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

// Simple undirected graph on vertices 1..n with positive finite edge weights
// (plain distances, not squared). Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<WeightedEdge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted by (i, j).
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  // Throws std::out_of_range if {i,j} is not an edge.
  double weight(int i, int j) const;
  // Neighbourhood N(v), ascending vertex labels.
  const std::vector<int>& neighbors(int v) const;

 private:
  static std::uint64_t key(int i, int j);

  int n_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<int>> adjacency_;  // index 0 unused
  std::unordered_map<std::uint64_t, double> weight_by_pair_;
};

// Vertex order plus, for each vertex after the first K, its reference set U_j
// of K earlier vertices. Clusters are keyed by vertex label and stored sorted
// by rank, so the last member is the latest-ordered one.
class DiscretizationScheme {
 public:
  DiscretizationScheme(int dimension, std::vector<int> order,
                       std::map<int, std::vector<int>> clusters);

  int dimension() const { return k_; }
  const std::vector<int>& order() const { return order_; }
  int vertex_at_rank(int rank) const { return order_.at(rank - 1); }
  // 0 when the vertex does not appear in the order.
  int rank_of(int vertex) const;
  bool has_cluster(int vertex) const { return clusters_.count(vertex) > 0; }
  // Members sorted by rank ascending. Throws std::out_of_range if absent.
  const std::vector<int>& cluster(int vertex) const;
  const std::map<int, std::vector<int>>& clusters() const { return clusters_; }
  // The latest-ordered member of U_j.
  int latest_cluster_vertex(int vertex) const;

 private:
  int k_;
  std::vector<int> order_;
  std::map<int, std::vector<int>> clusters_;
  std::unordered_map<int, int> rank_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

struct EdgePartition {
  // Normalized (i < j) pairs, sorted.
  std::vector<std::pair<int, int>> discretization;
  std::vector<std::pair<int, int>> pruning;
};

enum class InstanceKind { NotDiscretizable, Ddgp, CombinatorialDdgp, Dmdgp };

struct InstanceClassification {
  InstanceKind kind = InstanceKind::Ddgp;
  bool pruning_free = false;
};

const char* instance_kind_name(InstanceKind kind);

// Checks the discretization conditions: the first K ordered vertices induce a
// clique, and every later vertex has a cluster of exactly K adjacent,
// earlier-ranked vertices. Violations are report entries, not failures.
ValidationReport validate_scheme(const WeightedGraph& graph,
                                 const DiscretizationScheme& scheme);

// Splits E into discretization edges (initial-clique pairs and pairs {u, j}
// with u in U_j) and pruning edges (the rest). Requires a valid scheme.
EdgePartition partition_edges(const WeightedGraph& graph,
                              const DiscretizationScheme& scheme);

// Most specific class of the instance under this scheme. Requires a valid
// scheme; NotDiscretizable is produced by callers when validation fails.
InstanceClassification classify(const WeightedGraph& graph,
                                const DiscretizationScheme& scheme);

enum class FindOrderStatus { Found, NoneExists, BudgetExceeded };

struct FindOrderResult {
  FindOrderStatus status = FindOrderStatus::NoneExists;
  std::optional<DiscretizationScheme> scheme;
};

// Searches for a discretization order: every K-clique is tried as a seed and
// extended greedily by repeatedly placing the smallest vertex that has K
// already-placed neighbours. Eligibility only grows as vertices are placed,
// so the reachable closure of a seed is unique and greedy extension is
// exhaustive per seed; NoneExists is therefore a certificate. Clusters are
// chosen to maximize the number of adjacent pairs inside U_j, ties broken by
// the lexicographically smallest vertex set. budget caps the total number of
// placement steps across seeds.
FindOrderResult find_order(const WeightedGraph& graph, int dimension,
                           std::uint64_t budget = 10'000'000);

}  // namespace ddgp
