#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "generator.hpp"
#include "graph.hpp"
#include "helpers.hpp"
#include "instance_io.hpp"

using namespace ddgp;
using namespace ddgp::testing;

TEST_CASE("weighted graph rejects malformed input") {
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 2, 1.0}, {2, 1, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 2, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{1, 2, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{1, 3, 1.0}}), std::invalid_argument);
}

TEST_CASE("weight access is symmetric") {
  WeightedGraph g(3, {{1, 2, 2.5}});
  CHECK(g.weight(1, 2) == 2.5);
  CHECK(g.weight(2, 1) == 2.5);
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK_THROWS_AS(g.weight(1, 3), std::out_of_range);
}

TEST_CASE("five-vertex scheme validates") {
  WeightedGraph g = five_vertex_graph();
  ValidationReport report = validate_scheme(g, five_vertex_scheme());
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("non-adjacent cluster member is reported") {
  WeightedGraph g = five_vertex_graph();
  DiscretizationScheme bad(2, {1, 2, 3, 4, 5},
                           {{3, {1, 2}}, {4, {2, 3}}, {5, {2, 3}}});
  ValidationReport report = validate_scheme(g, bad);
  CHECK_FALSE(report.ok);
  bool mentions_adjacency = false;
  for (const auto& v : report.violations) {
    if (v.find("not adjacent") != std::string::npos) mentions_adjacency = true;
  }
  CHECK(mentions_adjacency);
}

TEST_CASE("missing initial clique edge is reported") {
  // Same graph with edge {1,2} removed.
  WeightedGraph g(5, {{1, 3, std::sqrt(2.0)},
                      {1, 5, 1.0},
                      {2, 3, 1.0},
                      {2, 4, std::sqrt(5.0)},
                      {3, 4, 2.0},
                      {4, 5, 1.0}});
  ValidationReport report = validate_scheme(g, five_vertex_scheme());
  CHECK_FALSE(report.ok);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(report.violations.front().find("clique") != std::string::npos);
}

TEST_CASE("five-vertex partition has no pruning edges") {
  WeightedGraph g = five_vertex_graph();
  EdgePartition partition = partition_edges(g, five_vertex_scheme());
  CHECK(partition.discretization.size() == 7);
  CHECK(partition.pruning.empty());
}

TEST_CASE("the only valid clusters of the five-vertex graph are the fixture's") {
  WeightedGraph g = five_vertex_graph();
  // Vertex 5 is adjacent to exactly {1,4}; vertex 4 to {2,3} among its
  // predecessors. Any other choice fails validation.
  CHECK(g.neighbors(5) == std::vector<int>{1, 4});
  DiscretizationScheme alternative(2, {1, 2, 3, 4, 5},
                                   {{3, {1, 2}}, {4, {1, 3}}, {5, {1, 4}}});
  CHECK_FALSE(validate_scheme(g, alternative).ok);
}

TEST_CASE("extra backward edge becomes a pruning edge") {
  // chain5 plus the chord {1,4}, weighted from the planted points.
  std::vector<WeightedEdge> edges;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5 && j - i <= 2; ++j) {
      edges.push_back({i, j, chain5_distance(i, j)});
    }
  }
  edges.push_back({1, 4, chain5_distance(1, 4)});
  WeightedGraph g(5, std::move(edges));
  EdgePartition partition = partition_edges(g, chain5_scheme());
  REQUIRE(partition.pruning.size() == 1);
  CHECK(partition.pruning.front() == std::pair<int, int>{1, 4});
}

TEST_CASE("classification distinguishes the three classes") {
  InstanceClassification five = classify(five_vertex_graph(), five_vertex_scheme());
  CHECK(five.kind == InstanceKind::Ddgp);  // {1,4} of U_5 is not an edge
  CHECK(five.pruning_free);

  InstanceClassification chain = classify(chain5_graph(), chain5_scheme());
  CHECK(chain.kind == InstanceKind::Dmdgp);
  CHECK(chain.pruning_free);

  // Clique clusters, one of them non-contiguous: combinatorial but not DMDGP.
  WeightedGraph g(4, {{1, 2, 1.0},
                      {1, 3, 1.2},
                      {2, 3, 1.1},
                      {1, 4, 0.9},
                      {3, 4, 1.3}});
  DiscretizationScheme scheme(2, {1, 2, 3, 4}, {{3, {1, 2}}, {4, {1, 3}}});
  InstanceClassification cls = classify(g, scheme);
  CHECK(cls.kind == InstanceKind::CombinatorialDdgp);
}

TEST_CASE("classification is monotone on generated instances") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenSpec spec;
    spec.n = 9;
    spec.dimension = 2 + static_cast<int>(seed % 2);
    spec.class_target = seed % 3 == 0   ? InstanceKind::Dmdgp
                        : seed % 3 == 1 ? InstanceKind::CombinatorialDdgp
                                        : InstanceKind::Ddgp;
    spec.seed = seed;
    GeneratedInstance gen = generate(spec);
    InstanceClassification cls = classify(gen.graph, gen.scheme);
    CHECK(cls.kind == spec.class_target);
    if (cls.kind == InstanceKind::Dmdgp) {
      // DMDGP instances are combinatorial by definition: every cluster is a
      // clique.
      for (int r = spec.dimension + 1; r <= spec.n; ++r) {
        const auto& members = gen.scheme.cluster(gen.scheme.vertex_at_rank(r));
        for (std::size_t a = 0; a < members.size(); ++a) {
          for (std::size_t b = a + 1; b < members.size(); ++b) {
            CHECK(gen.graph.has_edge(members[a], members[b]));
          }
        }
      }
    }
  }
}

TEST_CASE("find_order recovers a scheme for the five-vertex graph") {
  WeightedGraph g = five_vertex_graph();
  FindOrderResult result = find_order(g, 2);
  REQUIRE(result.status == FindOrderStatus::Found);
  CHECK(validate_scheme(g, *result.scheme).ok);
  CHECK(result.scheme->order() == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("find_order certifies non-existence on a star") {
  // K_{1,3}: leaves have a single neighbour, so no vertex after the first
  // two can ever have two placed neighbours.
  WeightedGraph g(4, {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}});
  FindOrderResult result = find_order(g, 2);
  CHECK(result.status == FindOrderStatus::NoneExists);
  CHECK_FALSE(result.scheme.has_value());
}

TEST_CASE("find_order succeeds on a complete graph") {
  std::vector<WeightedEdge> edges;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) edges.push_back({i, j, 1.0});
  }
  WeightedGraph g(5, edges);
  FindOrderResult result = find_order(g, 3);
  REQUIRE(result.status == FindOrderStatus::Found);
  CHECK(validate_scheme(g, *result.scheme).ok);
}

TEST_CASE("find_order respects its budget") {
  WeightedGraph g = five_vertex_graph();
  CHECK(find_order(g, 2, 1).status == FindOrderStatus::BudgetExceeded);
}

TEST_CASE("instance text round-trips") {
  Instance instance{five_vertex_graph(), 2, five_vertex_scheme()};
  std::string text = write_instance(instance);
  Instance parsed = read_instance(text);
  CHECK(parsed.graph.vertex_count() == 5);
  CHECK(parsed.dimension == 2);
  REQUIRE(parsed.scheme.has_value());
  CHECK(parsed.scheme->order() == instance.scheme->order());
  CHECK(parsed.scheme->cluster(5) == std::vector<int>{1, 4});
  REQUIRE(parsed.graph.edge_count() == instance.graph.edge_count());
  for (const auto& e : instance.graph.edges()) {
    CHECK(parsed.graph.weight(e.i, e.j) == e.weight);  // bitwise round-trip
  }
  CHECK(write_instance(parsed) == text);
}

TEST_CASE("parser reports offending lines") {
  CHECK_THROWS_WITH_AS(read_instance("dgp 2 1\ne 1 2 -1\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(read_instance("dgp 2 1\ne 1 2 1\ne 2 1 1\n"),
                       doctest::Contains("duplicate edge"), ParseError);
  CHECK_THROWS_WITH_AS(read_instance("dgp 2 1\ne 1 3 1\n"),
                       doctest::Contains("outside"), ParseError);
  CHECK_THROWS_WITH_AS(read_instance("e 1 2 1\n"), doctest::Contains("header"),
                       ParseError);
  CHECK_THROWS_WITH_AS(read_instance("dgp 3 2\ne 1 2 1\ncluster 3 1 2\n"),
                       doctest::Contains("order"), ParseError);
  // Order present but a cluster is missing.
  CHECK_THROWS_WITH_AS(
      read_instance("dgp 3 2\ne 1 2 1\ne 1 3 1\ne 2 3 1\norder 1 2 3\n"),
      doctest::Contains("missing cluster"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  Instance parsed = read_instance(
      "# a comment\n\ndgp 2 1\n# another\ne 1 2 0.5\n");
  CHECK(parsed.graph.edge_count() == 1);
  CHECK_FALSE(parsed.scheme.has_value());
}

TEST_CASE("bare graphs round-trip and CRLF input parses") {
  Instance bare{five_vertex_graph(), 2, std::nullopt};
  std::string text = write_instance(bare);
  Instance parsed = read_instance(text);
  CHECK_FALSE(parsed.scheme.has_value());
  CHECK(write_instance(parsed) == text);

  Instance crlf = read_instance("dgp 2 1\r\ne 1 2 0.5\r\n");
  CHECK(crlf.graph.weight(1, 2) == 0.5);
}

TEST_CASE("mangled input is rejected, never accepted or crashed on") {
  const std::string base =
      "dgp 5 2\ne 1 2 1\ne 1 3 1.5\ne 2 3 1\ne 2 4 2\ne 3 4 2\ne 4 5 1\n"
      "e 1 5 1\norder 1 2 3 4 5\ncluster 3 1 2\ncluster 4 2 3\ncluster 5 1 4\n";
  const char junk[] = {'x', '9', '-', ' ', '#', 'e', '.', '\t'};
  std::mt19937_64 rng(2024);
  int rejected = 0;
  for (int i = 0; i < 200; ++i) {
    std::string mutated = base;
    const int edits = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      mutated[rng() % mutated.size()] =
          junk[rng() % (sizeof junk / sizeof junk[0])];
    }
    try {
      Instance parsed = read_instance(mutated);
      // A mutation may still be a well-formed instance; it must at least
      // round-trip through the writer.
      CHECK(write_instance(parsed).size() > 0);
    } catch (const ParseError&) {
      ++rejected;
    } catch (const std::invalid_argument&) {
      ++rejected;
    }
  }
  CHECK(rejected > 100);
}

TEST_CASE("find_order output always validates on generated graphs") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    GenSpec spec;
    spec.n = 8;
    spec.dimension = 2;
    spec.class_target = InstanceKind::CombinatorialDdgp;
    spec.pruning_edge_prob = 0.2;
    spec.seed = seed;
    GeneratedInstance gen = generate(spec);
    FindOrderResult result = find_order(gen.graph, 2);
    REQUIRE(result.status == FindOrderStatus::Found);
    CHECK(validate_scheme(gen.graph, *result.scheme).ok);

    // Partition invariants: every edge lands in exactly one side and every
    // cluster pair is a discretization edge.
    EdgePartition partition = partition_edges(gen.graph, *result.scheme);
    CHECK(partition.discretization.size() + partition.pruning.size() ==
          gen.graph.edge_count());
    std::set<std::pair<int, int>> discretization(partition.discretization.begin(),
                                                 partition.discretization.end());
    for (int r = 3; r <= 8; ++r) {
      const int v = result.scheme->vertex_at_rank(r);
      for (int u : result.scheme->cluster(v)) {
        CHECK(discretization.count({std::min(u, v), std::max(u, v)}) == 1);
      }
    }
  }
}
