#include <doctest.h>

#include "bp.hpp"
#include "generator.hpp"
#include "instance_io.hpp"

using namespace ddgp;

TEST_CASE("dmdgp generation example") {
  GenSpec spec;
  spec.n = 5;
  spec.dimension = 2;
  spec.class_target = InstanceKind::Dmdgp;
  spec.seed = 42;
  GeneratedInstance gen = generate(spec);
  CHECK(validate_scheme(gen.graph, gen.scheme).ok);
  InstanceClassification cls = classify(gen.graph, gen.scheme);
  CHECK(cls.kind == InstanceKind::Dmdgp);
  CHECK(cls.pruning_free);
  CHECK(max_relative_residual(gen.graph, gen.planted) <= 1e-12);
}

TEST_CASE("combinatorial generation gives clique clusters and 2^(n-K) solutions") {
  GenSpec spec;
  spec.n = 7;
  spec.dimension = 2;
  spec.class_target = InstanceKind::CombinatorialDdgp;
  spec.seed = 3;
  GeneratedInstance gen = generate(spec);
  for (int r = 3; r <= 7; ++r) {
    const auto& members = gen.scheme.cluster(gen.scheme.vertex_at_rank(r));
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        CHECK(gen.graph.has_edge(members[a], members[b]));
      }
    }
  }
  SolveResult solved = solve(gen.graph, gen.scheme);
  REQUIRE(solved.status == SolveStatus::Yes);
  CHECK(solved.solutions.size() == 32);
}

TEST_CASE("probability one turns every backward pair into an edge") {
  GenSpec spec;
  spec.n = 6;
  spec.dimension = 2;
  spec.class_target = InstanceKind::Dmdgp;
  spec.pruning_edge_prob = 1.0;
  spec.seed = 9;
  GeneratedInstance gen = generate(spec);
  CHECK(gen.graph.edge_count() == 15);  // complete graph on 6 vertices
  SolveResult solved = solve(gen.graph, gen.scheme);
  REQUIRE(solved.status == SolveStatus::Yes);
  CHECK(solved.solutions.size() <= 16);
  // Fully constrained: only the planted realization and its mirror survive.
  CHECK(solved.solutions.size() == 2);
}

TEST_CASE("equal seeds are bit-identical") {
  GenSpec spec;
  spec.n = 8;
  spec.dimension = 3;
  spec.class_target = InstanceKind::CombinatorialDdgp;
  spec.pruning_edge_prob = 0.4;
  spec.seed = 77;
  GeneratedInstance first = generate(spec);
  GeneratedInstance second = generate(spec);
  CHECK(write_instance({first.graph, 3, first.scheme}) ==
        write_instance({second.graph, 3, second.scheme}));
  CHECK((first.planted - second.planted).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("class targets are met across seeds") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    for (InstanceKind target : {InstanceKind::Dmdgp, InstanceKind::CombinatorialDdgp,
                                InstanceKind::Ddgp}) {
      GenSpec spec;
      spec.n = 8;
      spec.dimension = seed % 2 == 0 ? 2 : 3;
      spec.class_target = target;
      spec.pruning_edge_prob = 0.15;
      spec.seed = seed;
      GeneratedInstance gen = generate(spec);
      CHECK(validate_scheme(gen.graph, gen.scheme).ok);
      CHECK(classify(gen.graph, gen.scheme).kind == target);
      CHECK(max_relative_residual(gen.graph, gen.planted) <= 1e-12);
    }
  }
}

TEST_CASE("planted realizations are YES witnesses for the solver") {
  GenSpec spec;
  spec.n = 9;
  spec.dimension = 2;
  spec.class_target = InstanceKind::Ddgp;
  spec.pruning_edge_prob = 0.5;
  spec.seed = 12;
  GeneratedInstance gen = generate(spec);
  SolveResult solved = solve(gen.graph, gen.scheme);
  CHECK(solved.status == SolveStatus::Yes);
  bool planted_found = false;
  for (const Solution& solution : solved.solutions) {
    // The planted points appear up to the canonical rigid motion, so compare
    // through the distance residual instead of coordinates.
    if (max_relative_residual(gen.graph, solution.coords) < 1e-9) {
      planted_found = true;
    }
  }
  CHECK(planted_found);
}

TEST_CASE("invalid specs are rejected") {
  GenSpec spec;
  spec.n = 3;
  spec.dimension = 3;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.n = 5;
  spec.dimension = 2;
  spec.pruning_edge_prob = 1.5;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  // A DDGP target with every backward pair present is impossible: all
  // clusters become cliques.
  GenSpec impossible;
  impossible.n = 6;
  impossible.dimension = 2;
  impossible.class_target = InstanceKind::Ddgp;
  impossible.pruning_edge_prob = 1.0;
  impossible.seed = 1;
  CHECK_THROWS_AS(generate(impossible), UnsatisfiableSpec);
}
