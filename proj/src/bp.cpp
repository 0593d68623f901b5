#include "bp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "edm.hpp"
#include "trilateration.hpp"

namespace ddgp {

std::optional<Eigen::MatrixXd> realize_initial_clique(
    const WeightedGraph& graph, const DiscretizationScheme& scheme, double tol) {
  const int k = scheme.dimension();
  std::vector<int> verts(static_cast<std::size_t>(k));
  for (int r = 1; r <= k; ++r) verts[static_cast<std::size_t>(r - 1)] = scheme.vertex_at_rank(r);

  Eigen::MatrixXd d2(k, k);
  for (int a = 0; a < k; ++a) {
    d2(a, a) = 0.0;
    for (int b = a + 1; b < k; ++b) {
      const double w = graph.weight(verts[static_cast<std::size_t>(a)],
                                    verts[static_cast<std::size_t>(b)]);
      d2(a, b) = w * w;
      d2(b, a) = w * w;
    }
  }
  if (!is_valid_edm(SquaredEdm{d2}, k, tol)) return std::nullopt;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(k, k);
  const double scale = k > 1 ? d2.maxCoeff() : 1.0;
  for (int m = 1; m < k; ++m) {
    // Unknown coordinates u_0..u_{m-1} of point m; u_q = 0 for q >= m.
    // The equation against point 0 fixes the squared norm; each later point p
    // (which lies in the span of the first p coordinates) fixes one more
    // coordinate in turn.
    for (int p = 1; p < m; ++p) {
      double rhs = (x.row(p).squaredNorm() + d2(0, m) - d2(p, m)) / 2.0;
      for (int q = 0; q < p - 1; ++q) rhs -= x(p, q) * x(m, q);
      const double divisor = x(p, p - 1);
      if (std::abs(divisor) <= 1e-12 * std::sqrt(scale)) {
        // Degenerate clique: the coordinate is underdetermined; pick the
        // representative 0. Downstream trilateration reports Degenerate.
        x(m, p - 1) = 0.0;
      } else {
        x(m, p - 1) = rhs / divisor;
      }
    }
    double radicand = d2(0, m) - x.row(m).squaredNorm();
    if (radicand < 0.0) radicand = 0.0;  // valid EDM: tiny negatives only
    x(m, m - 1) = std::sqrt(radicand);
  }
  return x;
}

namespace {

struct PruneCheck {
  int vertex_row;  // 0-based row of the earlier endpoint
  double distance;
};

struct Search {
  const WeightedGraph& graph;
  const DiscretizationScheme& scheme;
  const BpConfig& config;

  int n;
  int k;
  Eigen::MatrixXd coords;                       // n x K, rows by vertex-1
  std::vector<std::vector<PruneCheck>> prune;   // by rank (1-based)
  std::vector<std::vector<int>> base_rows;      // cluster rows by rank
  std::string branch;

  SolveResult result;
  std::vector<std::uint64_t> width;
  // Distinct extending positions per rank; exact comparison is the right
  // dedup because equal positions arise from bitwise-identical arithmetic.
  std::vector<std::set<std::vector<double>>> viable_positions;
  bool budget_hit = false;
  bool stop = false;

  Search(const WeightedGraph& g, const DiscretizationScheme& s, const BpConfig& c)
      : graph(g), scheme(s), config(c), n(g.vertex_count()), k(s.dimension()) {
    coords = Eigen::MatrixXd::Zero(n, k);
    result.stats.a.assign(static_cast<std::size_t>(n) + 1, 0);
    width.assign(static_cast<std::size_t>(n) + 1, 0);
    viable_positions.assign(static_cast<std::size_t>(n) + 1, {});
    prune.assign(static_cast<std::size_t>(n) + 1, {});
    base_rows.assign(static_cast<std::size_t>(n) + 1, {});

    EdgePartition partition = partition_edges(graph, scheme);
    for (const auto& [i, j] : partition.pruning) {
      const int ri = scheme.rank_of(i), rj = scheme.rank_of(j);
      const int later = ri > rj ? ri : rj;
      const int earlier_vertex = ri > rj ? j : i;
      prune[static_cast<std::size_t>(later)].push_back(
          {earlier_vertex - 1, graph.weight(i, j)});
    }
    for (int r = k + 1; r <= n; ++r) {
      for (int u : scheme.cluster(scheme.vertex_at_rank(r))) {
        base_rows[static_cast<std::size_t>(r)].push_back(u - 1);
      }
    }
  }

  bool count_node(int rank) {
    if (result.stats.nodes_expanded >= config.max_nodes) {
      budget_hit = true;
      stop = true;
      return false;
    }
    ++result.stats.nodes_expanded;
    ++width[static_cast<std::size_t>(rank)];
    result.stats.depth_reached = std::max(result.stats.depth_reached, rank);
    return true;
  }

  void record_leaf() {
    if (config.collect_all || result.solutions.empty()) {
      result.solutions.push_back({branch, coords});
    }
    if (!config.collect_all) stop = true;
  }

  // Expands the node currently placed at `rank`; returns true if the subtree
  // reaches a leaf at rank n.
  bool expand(int rank) {
    if (rank == n) {
      record_leaf();
      return true;
    }
    const int next_rank = rank + 1;
    const int vertex = scheme.vertex_at_rank(next_rank);
    const auto& rows = base_rows[static_cast<std::size_t>(next_rank)];

    Eigen::MatrixXd base(k, k);
    Eigen::VectorXd dist(k);
    for (int i = 0; i < k; ++i) {
      base.row(i) = coords.row(rows[static_cast<std::size_t>(i)]);
      dist(i) = graph.weight(rows[static_cast<std::size_t>(i)] + 1, vertex);
    }

    TrilaterationResult tri = trilaterate(base, dist, config.tol_trilateration);
    if (tri.kind == TrilaterationResult::Kind::Degenerate) {
      result.degenerate.push_back({vertex, next_rank, branch, tri.degenerate_reason});
      return false;
    }
    if (tri.kind == TrilaterationResult::Kind::NoPosition) return false;

    struct Candidate {
      const Eigen::VectorXd* y;
      char label;
    };
    Candidate candidates[2];
    int count = 0;
    if (tri.kind == TrilaterationResult::Kind::TwoPositions) {
      candidates[count++] = {&tri.y_plus, '+'};
      candidates[count++] = {&tri.y_minus, '-'};
    } else {
      candidates[count++] = {&tri.y, '='};
    }

    bool found = false;
    for (int ci = 0; ci < count && !stop; ++ci) {
      const Eigen::VectorXd& y = *candidates[ci].y;
      bool feasible = true;
      for (const PruneCheck& check : prune[static_cast<std::size_t>(next_rank)]) {
        const double dist_now = (coords.row(check.vertex_row).transpose() - y).norm();
        if (std::abs(dist_now - check.distance) > config.tol_prune * check.distance) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      if (!count_node(next_rank)) return found;

      coords.row(vertex - 1) = y;
      branch.push_back(candidates[ci].label);
      const bool child_found = expand(next_rank);
      branch.pop_back();
      if (child_found) {
        viable_positions[static_cast<std::size_t>(next_rank)].insert(
            {y.data(), y.data() + y.size()});
        found = true;
      }
    }
    return found;
  }
};

}  // namespace

SolveResult solve(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const BpConfig& config) {
  if (config.max_nodes < 1) throw std::invalid_argument("max_nodes must be at least 1");
  if (!(config.tol_prune > 0.0) || !(config.tol_trilateration > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }

  const int n = graph.vertex_count();
  const int k = scheme.dimension();

  SolveResult result;
  result.stats.a.assign(static_cast<std::size_t>(n) + 1, 0);

  std::optional<Eigen::MatrixXd> clique = realize_initial_clique(
      graph, scheme, config.tol_trilateration);
  if (!clique) {
    result.status = SolveStatus::No;
    result.clique_infeasible = true;
    result.stats.a.erase(result.stats.a.begin());
    return result;
  }

  Search search(graph, scheme, config);
  for (int r = 1; r <= k; ++r) {
    search.coords.row(scheme.vertex_at_rank(r) - 1) = clique->row(r - 1);
  }
  // The fully placed clique is the root node.
  search.count_node(k);
  const bool found = search.expand(k);

  result = std::move(search.result);
  if (found) {
    for (int r = 1; r <= k; ++r) result.stats.a[static_cast<std::size_t>(r)] = 1;
  }
  for (int r = k + 1; r <= n; ++r) {
    result.stats.a[static_cast<std::size_t>(r)] =
        search.viable_positions[static_cast<std::size_t>(r)].size();
  }
  result.stats.max_width_observed = 0;
  for (std::uint64_t w : search.width) {
    result.stats.max_width_observed = std::max(result.stats.max_width_observed, w);
  }
  // A budget hit leaves the enumeration incomplete, so it overrides Yes.
  result.status = search.budget_hit ? SolveStatus::BudgetExceeded
                  : found           ? SolveStatus::Yes
                                    : SolveStatus::No;

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const Solution& a, const Solution& b) { return a.branch < b.branch; });
  // Drop the unused rank-0 slot so a[0] is a_1.
  result.stats.a.erase(result.stats.a.begin());
  return result;
}

double max_relative_residual(const WeightedGraph& graph,
                             const Eigen::MatrixXd& coords) {
  if (coords.rows() != graph.vertex_count()) {
    throw std::invalid_argument("coordinate row count does not match vertex count");
  }
  double worst = 0.0;
  for (const auto& e : graph.edges()) {
    const double dist = (coords.row(e.i - 1) - coords.row(e.j - 1)).norm();
    worst = std::max(worst, std::abs(dist - e.weight) / e.weight);
  }
  return worst;
}

}  // namespace ddgp
