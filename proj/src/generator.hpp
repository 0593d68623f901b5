#pragma once

#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "graph.hpp"

namespace ddgp {

struct UnsatisfiableSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  int n = 0;
  int dimension = 0;
  InstanceKind class_target = InstanceKind::Dmdgp;
  double pruning_edge_prob = 0.0;
  std::uint64_t seed = 0;
  // Points are sampled uniformly in [-box, box]^K.
  double box = 10.0;
};

struct GeneratedInstance {
  WeightedGraph graph;
  DiscretizationScheme scheme;
  Eigen::MatrixXd planted;  // n x K witness realization
};

// Produces a YES instance of the requested class with the sampled realization
// as witness. Points are resampled (up to 100 tries each) until the prefix
// stays in general position, clusters are built per class_target, and every
// remaining backward pair becomes a pruning edge with the given probability.
// Weights are the exact distances of the planted points. Equal seeds give
// bit-identical instances. Throws UnsatisfiableSpec when the class target
// cannot be met within the retry budget.
GeneratedInstance generate(const GenSpec& spec);

}  // namespace ddgp
