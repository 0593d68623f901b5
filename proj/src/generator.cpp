#include "generator.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "edm.hpp"
#include "rng.hpp"

namespace ddgp {

namespace {

constexpr int kPointRetries = 100;
constexpr int kClassRetries = 64;

// Checks general position incrementally: all subsets of size <= K+1 that
// contain the newly added point must be affinely independent. Earlier
// subsets were verified when their own last point was added.
bool new_point_in_general_position(const Eigen::MatrixXd& points, int count,
                                   int dimension) {
  const int newest = count - 1;
  const int max_size = std::min(count, dimension + 1);
  std::vector<int> idx;
  // Recursive enumeration of (size-1)-subsets of {0..newest-1}.
  auto check = [&](auto&& self, int size, int start) -> bool {
    if (static_cast<int>(idx.size()) == size - 1) {
      Eigen::MatrixXd sub(size, points.cols());
      for (int r = 0; r < size - 1; ++r) {
        sub.row(r) = points.row(idx[static_cast<std::size_t>(r)]);
      }
      sub.row(size - 1) = points.row(newest);
      return affine_rank(sub) == size - 1;
    }
    for (int i = start; i < newest; ++i) {
      idx.push_back(i);
      const bool ok = self(self, size, i + 1);
      idx.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int size = 2; size <= max_size; ++size) {
    if (!check(check, size, 0)) return false;
  }
  return true;
}

// Uniformly random K-element subset of the pool, ascending.
std::vector<int> random_subset(Rng& rng, std::vector<int> pool, int k) {
  std::vector<int> chosen;
  for (int pick = 0; pick < k; ++pick) {
    const auto at = rng.below(static_cast<std::uint64_t>(pool.size()));
    chosen.push_back(pool[static_cast<std::size_t>(at)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> range_vector(int lo, int hi) {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

}  // namespace

GeneratedInstance generate(const GenSpec& spec) {
  const int n = spec.n;
  const int k = spec.dimension;
  if (k < 1) throw std::invalid_argument("dimension must be at least 1");
  if (n <= k) throw std::invalid_argument("need n > K");
  if (spec.pruning_edge_prob < 0.0 || spec.pruning_edge_prob > 1.0) {
    throw std::invalid_argument("pruning_edge_prob must lie in [0,1]");
  }
  if (!(spec.box > 0.0)) throw std::invalid_argument("box must be positive");
  if (spec.class_target == InstanceKind::NotDiscretizable) {
    throw std::invalid_argument("cannot target a non-discretizable instance");
  }

  Rng rng(spec.seed);
  for (int attempt = 0; attempt < kClassRetries; ++attempt) {
    Eigen::MatrixXd points(n, k);
    for (int m = 0; m < n; ++m) {
      bool placed = false;
      for (int retry = 0; retry < kPointRetries; ++retry) {
        for (int c = 0; c < k; ++c) {
          points(m, c) = rng.uniform(-spec.box, spec.box);
        }
        if (new_point_in_general_position(points, m + 1, k)) {
          placed = true;
          break;
        }
      }
      if (!placed) {
        throw UnsatisfiableSpec(
            "could not keep sampled points in general position");
      }
    }

    std::map<std::pair<int, int>, double> weights;
    auto add_edge = [&](int i, int j) {
      if (i > j) std::swap(i, j);
      weights.emplace(std::make_pair(i, j),
                      (points.row(i - 1) - points.row(j - 1)).norm());
    };

    for (int a = 1; a <= k; ++a) {
      for (int b = a + 1; b <= k; ++b) add_edge(a, b);
    }

    std::map<int, std::vector<int>> clusters;
    // Known cliques to draw combinatorial clusters from: the initial K-set
    // plus each U_j united with j. Picking K members of any of these yields a
    // set that is already pairwise connected, so no pruning edges appear.
    std::vector<std::vector<int>> cliques = {range_vector(1, k)};
    for (int j = k + 1; j <= n; ++j) {
      std::vector<int> members;
      switch (spec.class_target) {
        case InstanceKind::Dmdgp:
          members = range_vector(j - k, j - 1);
          break;
        case InstanceKind::CombinatorialDdgp: {
          const auto& pool =
              cliques[static_cast<std::size_t>(rng.below(cliques.size()))];
          members = pool.size() == static_cast<std::size_t>(k)
                        ? pool
                        : random_subset(rng, pool, k);
          break;
        }
        case InstanceKind::Ddgp:
          members = random_subset(rng, range_vector(1, j - 1), k);
          break;
        case InstanceKind::NotDiscretizable:
          break;
      }
      for (int u : members) add_edge(u, j);
      if (spec.class_target == InstanceKind::CombinatorialDdgp) {
        std::vector<int> grown = members;
        grown.push_back(j);
        cliques.push_back(std::move(grown));
      }
      clusters[j] = std::move(members);
    }

    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) {
        if (weights.count({i, j})) continue;
        if (rng.bernoulli(spec.pruning_edge_prob)) add_edge(i, j);
      }
    }

    std::vector<WeightedEdge> edges;
    edges.reserve(weights.size());
    for (const auto& [pair, w] : weights) {
      edges.push_back({pair.first, pair.second, w});
    }
    WeightedGraph graph(n, std::move(edges));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) order[static_cast<std::size_t>(v - 1)] = v;
    DiscretizationScheme scheme(k, std::move(order), std::move(clusters));

    if (!validate_scheme(graph, scheme).ok) continue;
    if (classify(graph, scheme).kind != spec.class_target) continue;
    return {std::move(graph), std::move(scheme), std::move(points)};
  }
  throw UnsatisfiableSpec("class target not reached within the retry budget");
}

}  // namespace ddgp
