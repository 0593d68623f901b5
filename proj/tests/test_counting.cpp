#include <doctest.h>

#include "bp.hpp"
#include "counting.hpp"
#include "generator.hpp"
#include "helpers.hpp"

using namespace ddgp;
using namespace ddgp::testing;

TEST_CASE("prediction on a pruning-free chain") {
  GenSpec spec;
  spec.n = 10;
  spec.dimension = 3;
  spec.class_target = InstanceKind::Dmdgp;
  spec.seed = 4;
  GeneratedInstance gen = generate(spec);
  CountPrediction prediction = predict_count(gen.graph, gen.scheme);
  CHECK(prediction.kind == CountPrediction::Kind::ExactPowerOfTwo);
  REQUIRE(prediction.value.has_value());
  CHECK(*prediction.value == 128);
}

TEST_CASE("prediction refuses the five-vertex instance") {
  CountPrediction prediction =
      predict_count(five_vertex_graph(), five_vertex_scheme());
  CHECK(prediction.kind == CountPrediction::Kind::NotApplicable);
  CHECK_FALSE(prediction.value.has_value());
  // The rationale pinpoints the non-clique cluster of vertex 5.
  CHECK(prediction.rationale.find("vertex 5") != std::string::npos);
  CHECK(prediction.rationale.find("{1,4}") != std::string::npos);
}

TEST_CASE("a pruning edge downgrades the prediction to an upper bound") {
  GenSpec spec;
  spec.n = 8;
  spec.dimension = 2;
  spec.class_target = InstanceKind::CombinatorialDdgp;
  spec.pruning_edge_prob = 1.0;
  spec.seed = 11;
  GeneratedInstance gen = generate(spec);
  REQUIRE_FALSE(partition_edges(gen.graph, gen.scheme).pruning.empty());
  CountPrediction prediction = predict_count(gen.graph, gen.scheme);
  CHECK(prediction.kind == CountPrediction::Kind::UpperBoundOnly);
  REQUIRE(prediction.value.has_value());
  CHECK(*prediction.value == 64);

  SolveResult solved = solve(gen.graph, gen.scheme);
  REQUIRE(solved.status == SolveStatus::Yes);
  CHECK(solved.solutions.size() <= *prediction.value);
}

TEST_CASE("recurrence holds on the five-vertex run") {
  SolveResult solved = solve(five_vertex_graph(), five_vertex_scheme());
  REQUIRE(solved.status == SolveStatus::Yes);
  RecurrenceReport report =
      check_recurrence(solved.stats, five_vertex_graph(), five_vertex_scheme());
  CHECK(report.holds);
  CHECK(report.violations.empty());
}

TEST_CASE("pruning-free chain doubles at every rank") {
  WeightedGraph g = chain5_graph();
  DiscretizationScheme scheme = chain5_scheme();
  SolveResult solved = solve(g, scheme);
  REQUIRE(solved.status == SolveStatus::Yes);
  for (int rank = 3; rank <= 5; ++rank) {
    CHECK(solved.stats.a[static_cast<std::size_t>(rank - 1)] ==
          (std::uint64_t{1} << (rank - 2)));
  }
  RecurrenceReport report = check_recurrence(solved.stats, g, scheme);
  CHECK(report.holds);
}

TEST_CASE("fabricated stats trip the inequality") {
  BpStats fake;
  fake.a = {1, 1, 2, 2, 5};  // a_5 = 5 > 2 * a_4 = 4
  RecurrenceReport report =
      check_recurrence(fake, five_vertex_graph(), five_vertex_scheme());
  CHECK_FALSE(report.holds);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations.front().find("a_5 = 5") != std::string::npos);
  CHECK(report.violations.front().find("exceeds") != std::string::npos);
}

TEST_CASE("equality violations are reported on pruning-free clique instances") {
  WeightedGraph g = chain5_graph();
  DiscretizationScheme scheme = chain5_scheme();
  BpStats fake;
  fake.a = {1, 1, 2, 2, 4};  // a_4 should be 4 on this instance
  RecurrenceReport report = check_recurrence(fake, g, scheme);
  CHECK_FALSE(report.holds);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(report.violations.front().find("requires") != std::string::npos);
}

TEST_CASE("prediction equals enumeration on random combinatorial instances") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.n = 8 + static_cast<int>(seed % 5);
    spec.dimension = 2 + static_cast<int>(seed % 2);
    spec.class_target = InstanceKind::CombinatorialDdgp;
    spec.seed = seed;
    GeneratedInstance gen = generate(spec);

    CountPrediction prediction = predict_count(gen.graph, gen.scheme);
    REQUIRE(prediction.kind == CountPrediction::Kind::ExactPowerOfTwo);

    SolveResult solved = solve(gen.graph, gen.scheme);
    REQUIRE(solved.status == SolveStatus::Yes);
    CHECK(solved.solutions.size() == *prediction.value);

    RecurrenceReport report = check_recurrence(solved.stats, gen.graph, gen.scheme);
    CHECK(report.holds);
  }
}

TEST_CASE("recurrence inequality on pruned clique-cluster instances") {
  // The bound a_j <= 2 a_l(j) is a theorem when every cluster induces a
  // clique (with or without pruning edges): the cluster distances pin each
  // member to at most one partner per position of l(j).
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    GenSpec spec;
    spec.n = 9;
    spec.dimension = 2 + static_cast<int>(seed % 2);
    spec.class_target = InstanceKind::CombinatorialDdgp;
    spec.pruning_edge_prob = 0.3;
    spec.seed = seed;
    GeneratedInstance gen = generate(spec);
    SolveResult solved = solve(gen.graph, gen.scheme);
    REQUIRE(solved.status == SolveStatus::Yes);
    RecurrenceReport report = check_recurrence(solved.stats, gen.graph, gen.scheme);
    CHECK(report.holds);
  }
}

TEST_CASE("non-clique clusters can break the doubling bound") {
  // U_5 = {3,4} is not an edge, so vertex-5 positions multiply over the
  // co-occurring (x3, x4) pairs instead of doubling per position of vertex 4.
  // check_recurrence reports this instead of asserting it away.
  auto planted = [](int i) {
    static const double pts[5][2] = {
        {0.0, 0.0}, {1.3, 0.0}, {0.9, 1.1}, {2.2, 0.7}, {1.8, 1.9}};
    return Eigen::Vector2d(pts[i - 1][0], pts[i - 1][1]);
  };
  auto dist = [&](int i, int j) { return (planted(i) - planted(j)).norm(); };
  WeightedGraph g(5, {{1, 2, dist(1, 2)},
                      {1, 3, dist(1, 3)},
                      {2, 3, dist(2, 3)},
                      {1, 4, dist(1, 4)},
                      {2, 4, dist(2, 4)},
                      {3, 5, dist(3, 5)},
                      {4, 5, dist(4, 5)}});
  DiscretizationScheme scheme(2, {1, 2, 3, 4, 5},
                              {{3, {1, 2}}, {4, {1, 2}}, {5, {3, 4}}});
  SolveResult solved = solve(g, scheme);
  REQUIRE(solved.status == SolveStatus::Yes);
  CHECK(solved.stats.a[3] == 2);  // vertex 4 reuses the same two positions
  CHECK(solved.stats.a[4] == 8);  // all four (x3, x4) pairs extend twice
  RecurrenceReport report = check_recurrence(solved.stats, g, scheme);
  CHECK_FALSE(report.holds);
}
