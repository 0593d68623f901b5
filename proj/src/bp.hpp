#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"

namespace ddgp {

struct BpConfig {
  double tol_trilateration = 1e-9;
  // Relative feasibility tolerance on pruning-edge distances.
  double tol_prune = 1e-6;
  std::uint64_t max_nodes = 10'000'000;
  bool collect_all = true;
  // Accepted for interface stability; the search currently explores the tree
  // sequentially, which already meets the determinism contract.
  int threads = 1;
};

// Per-rank search statistics. a[r] (1-based rank r) counts the distinct
// positions found for the vertex at rank r that extend to at least one full
// realization. Positions, not tree nodes: branches that differ only outside
// the vertex's ancestor cone reproduce the same point and count once, which
// is what makes a_j <= 2 a_l(j) hold for non-contiguous clusters.
struct BpStats {
  std::vector<std::uint64_t> a;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t max_width_observed = 0;
  int depth_reached = 0;
};

struct DegenerateEvent {
  int vertex = 0;
  int rank = 0;
  std::string branch_prefix;
  std::string reason;
};

enum class SolveStatus { Yes, No, BudgetExceeded };

struct Solution {
  // One char per rank K+1..n over {+,-,=}; '=' marks a tangency node.
  std::string branch;
  Eigen::MatrixXd coords;  // n x K, row v-1 holds vertex v
};

struct SolveResult {
  SolveStatus status = SolveStatus::No;
  // Sorted by branch string; branch strings are pairwise distinct.
  std::vector<Solution> solutions;
  BpStats stats;
  std::vector<DegenerateEvent> degenerate;
  bool clique_infeasible = false;
};

// Canonical placement of the first K ordered vertices: vertex 1 at the
// origin, vertex m in the span of the first m-1 axes with its (m-1)-th
// coordinate nonnegative (strictly positive unless the clique is degenerate).
// Returns nullopt when the clique's EDM is not a valid EDM, which certifies a
// NO instance.
std::optional<Eigen::MatrixXd> realize_initial_clique(
    const WeightedGraph& graph, const DiscretizationScheme& scheme,
    double tol = 1e-9);

// Depth-first enumeration of all incongruent realizations. The initial clique
// is placed canonically and both trilateration branches are kept at every
// level, so solutions are counted modulo translations and rotations with
// mirror images distinct. Candidates violating a pruning-edge distance by
// more than tol_prune (relative) are cut. Degenerate trilateration aborts the
// subtree and is surfaced in `degenerate`.
SolveResult solve(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const BpConfig& config = {});

// Max over all edges of | ||x_i - x_j|| - d_ij | / d_ij.
double max_relative_residual(const WeightedGraph& graph,
                             const Eigen::MatrixXd& coords);

}  // namespace ddgp
