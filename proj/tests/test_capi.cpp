#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddgp/ddgp.h"

namespace {

const char* kFiveVertexText =
    "dgp 5 2\n"
    "e 1 2 1\n"
    "e 1 3 1.4142135623730951\n"
    "e 1 5 1\n"
    "e 2 3 1\n"
    "e 2 4 2.2360679774997896\n"
    "e 3 4 2\n"
    "e 4 5 1\n"
    "order 1 2 3 4 5\n"
    "cluster 3 1 2\n"
    "cluster 4 2 3\n"
    "cluster 5 1 4\n";

struct Instance {
  ddgp_instance* handle = nullptr;
  ~Instance() { ddgp_instance_free(handle); }
};

std::string take(char* text) {
  std::string out = text ? text : "";
  ddgp_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("version and error strings exist") {
  CHECK(ddgp_version() != nullptr);
  CHECK(ddgp_last_error() != nullptr);
}

TEST_CASE("parse, inspect, write round-trip") {
  Instance instance;
  REQUIRE(ddgp_instance_parse(kFiveVertexText, &instance.handle) == DDGP_OK);
  CHECK(ddgp_instance_vertex_count(instance.handle) == 5);
  CHECK(ddgp_instance_dimension(instance.handle) == 2);
  CHECK(ddgp_instance_edge_count(instance.handle) == 7);
  CHECK(ddgp_instance_has_scheme(instance.handle) == 1);

  char* text = nullptr;
  REQUIRE(ddgp_instance_write(instance.handle, &text) == DDGP_OK);
  std::string first = take(text);

  Instance reparsed;
  REQUIRE(ddgp_instance_parse(first.c_str(), &reparsed.handle) == DDGP_OK);
  char* second_text = nullptr;
  REQUIRE(ddgp_instance_write(reparsed.handle, &second_text) == DDGP_OK);
  CHECK(take(second_text) == first);
}

TEST_CASE("parse errors carry line information") {
  ddgp_instance* handle = nullptr;
  CHECK(ddgp_instance_parse("dgp 2 1\ne 1 2 -1\n", &handle) == DDGP_ERR_PARSE);
  CHECK(std::string(ddgp_last_error()).find("line 2") != std::string::npos);
  CHECK(handle == nullptr);
}

TEST_CASE("solve through the C API") {
  Instance instance;
  REQUIRE(ddgp_instance_parse(kFiveVertexText, &instance.handle) == DDGP_OK);

  ddgp_solve_options options;
  ddgp_solve_options_init(&options);
  ddgp_solve_result* result = nullptr;
  REQUIRE(ddgp_solve(instance.handle, &options, &result) == DDGP_OK);

  CHECK(ddgp_solve_result_status(result) == DDGP_SOLVE_YES);
  CHECK(ddgp_solve_result_count(result) == 4);
  CHECK(ddgp_solve_result_vertex_count(result) == 5);
  CHECK(ddgp_solve_result_dimension(result) == 2);
  CHECK(ddgp_solve_result_a(result, 1) == 1);
  CHECK(ddgp_solve_result_a(result, 3) == 2);
  CHECK(ddgp_solve_result_a(result, 4) == 2);
  CHECK(ddgp_solve_result_a(result, 5) >= 3);
  CHECK(ddgp_solve_result_a(result, 5) <= 4);
  CHECK(ddgp_solve_result_depth(result) == 5);
  CHECK(ddgp_solve_result_width(result) == 4);
  CHECK(ddgp_solve_result_degenerate_count(result) == 0);
  CHECK(ddgp_solve_result_max_residual(result) < 1e-9);

  const char* branch = ddgp_solve_result_branch(result, 0);
  REQUIRE(branch != nullptr);
  CHECK(std::strlen(branch) == 3);
  CHECK(ddgp_solve_result_branch(result, 99) == nullptr);

  std::vector<double> coords(5 * 2, 0.0);
  REQUIRE(ddgp_solve_result_coords(result, 0, coords.data()) == DDGP_OK);
  CHECK(coords[0] == 0.0);  // vertex 1 at the origin
  CHECK(coords[2] == doctest::Approx(1.0));

  char* json = nullptr;
  REQUIRE(ddgp_solve_report_json(result, &json) == DDGP_OK);
  nlohmann::json report = nlohmann::json::parse(take(json));
  CHECK(report.at("status") == "YES");
  CHECK(report.at("count") == 4);
  const auto& a = report.at("stats").at("a");
  REQUIRE(a.size() == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(a[i] == nlohmann::json({1, 1, 2, 2})[i]);
  }
  CHECK(report.at("solutions").size() == 4);

  char* csv = nullptr;
  REQUIRE(ddgp_solve_csv(result, &csv) == DDGP_OK);
  std::string csv_text = take(csv);
  CHECK(csv_text.rfind("solution,branch,vertex,x1,x2", 0) == 0);
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 1 + 4 * 5);

  ddgp_solve_result_free(result);
}

TEST_CASE("classify and count reports") {
  Instance instance;
  REQUIRE(ddgp_instance_parse(kFiveVertexText, &instance.handle) == DDGP_OK);

  char* classify_json = nullptr;
  REQUIRE(ddgp_classify_report_json(instance.handle, &classify_json) == DDGP_OK);
  nlohmann::json classify = nlohmann::json::parse(take(classify_json));
  CHECK(classify.at("valid") == true);
  CHECK(classify.at("class") == "ddgp");
  CHECK(classify.at("pruning_free") == true);
  CHECK(classify.at("scheme_source") == "file");

  char* count_json = nullptr;
  REQUIRE(ddgp_count_report_json(instance.handle, nullptr, &count_json) == DDGP_OK);
  nlohmann::json count = nlohmann::json::parse(take(count_json));
  CHECK(count.at("prediction").at("kind") == "not_applicable");
  CHECK(count.at("enumerated") == 4);
  CHECK(count.at("recurrence").at("holds") == true);
}

TEST_CASE("order search through the C API") {
  // Same weighted graph, no order lines.
  const char* bare =
      "dgp 5 2\n"
      "e 1 2 1\n"
      "e 1 3 1.4142135623730951\n"
      "e 1 5 1\n"
      "e 2 3 1\n"
      "e 2 4 2.2360679774997896\n"
      "e 3 4 2\n"
      "e 4 5 1\n";
  Instance instance;
  REQUIRE(ddgp_instance_parse(bare, &instance.handle) == DDGP_OK);
  CHECK(ddgp_instance_has_scheme(instance.handle) == 0);

  char* json = nullptr;
  ddgp_instance* augmented = nullptr;
  REQUIRE(ddgp_order_report_json(instance.handle, 0, 0, &json, &augmented) ==
          DDGP_OK);
  nlohmann::json report = nlohmann::json::parse(take(json));
  CHECK(report.at("found") == true);
  CHECK(report.at("order") == nlohmann::json({1, 2, 3, 4, 5}));
  REQUIRE(augmented != nullptr);
  CHECK(ddgp_instance_has_scheme(augmented) == 1);

  // Solving the bare instance derives the same order internally.
  ddgp_solve_result* result = nullptr;
  REQUIRE(ddgp_solve(instance.handle, nullptr, &result) == DDGP_OK);
  CHECK(ddgp_solve_result_count(result) == 4);
  ddgp_solve_result_free(result);
  ddgp_instance_free(augmented);
}

TEST_CASE("no order exists for a star") {
  const char* star =
      "dgp 4 2\n"
      "e 1 2 1\n"
      "e 1 3 1\n"
      "e 1 4 1\n";
  Instance instance;
  REQUIRE(ddgp_instance_parse(star, &instance.handle) == DDGP_OK);
  ddgp_solve_result* result = nullptr;
  CHECK(ddgp_solve(instance.handle, nullptr, &result) == DDGP_ERR_NO_ORDER);
  CHECK(result == nullptr);
}

TEST_CASE("generate and verify through the C API") {
  ddgp_generate_options options;
  ddgp_generate_options_init(&options);
  options.n = 8;
  options.dimension = 2;
  options.class_target = DDGP_CLASS_COMBINATORIAL;
  options.seed = 5;

  ddgp_instance* raw = nullptr;
  char* witness_raw = nullptr;
  REQUIRE(ddgp_generate(&options, &raw, &witness_raw) == DDGP_OK);
  Instance instance;
  instance.handle = raw;
  nlohmann::json witness = nlohmann::json::parse(take(witness_raw));
  REQUIRE(witness.at("coords").size() == 8);

  std::vector<double> coords;
  for (const auto& row : witness.at("coords")) {
    for (const auto& value : row) coords.push_back(value.get<double>());
  }
  double residual = -1.0;
  REQUIRE(ddgp_verify(instance.handle, coords.data(), &residual) == DDGP_OK);
  CHECK(residual <= 1e-12);

  char* verify_json = nullptr;
  REQUIRE(ddgp_verify_report_json(instance.handle, coords.data(), 1e-6,
                                  &verify_json) == DDGP_OK);
  nlohmann::json verify = nlohmann::json::parse(take(verify_json));
  CHECK(verify.at("ok") == true);

  ddgp_solve_result* result = nullptr;
  REQUIRE(ddgp_solve(instance.handle, nullptr, &result) == DDGP_OK);
  CHECK(ddgp_solve_result_count(result) == 64);  // 2^(8-2)
  ddgp_solve_result_free(result);
}

TEST_CASE("trilateration through the C API") {
  const double base[4] = {2, 0, 2, 1};
  const double dist[2] = {std::sqrt(5.0), 2.0};
  ddgp_trilat_kind kind;
  double plus[2], minus[2];
  REQUIRE(ddgp_trilaterate(2, base, dist, 1e-9, &kind, plus, minus) == DDGP_OK);
  CHECK(kind == DDGP_TRILAT_TWO_POSITIONS);
  CHECK(plus[0] == doctest::Approx(4.0));
  CHECK(plus[1] == doctest::Approx(1.0));
  CHECK(minus[0] == doctest::Approx(0.0));
  CHECK(minus[1] == doctest::Approx(1.0));

  const double collinear[9] = {0, 0, 0, 2, 0, 0, 1, 0, 0};
  const double dist3[3] = {2, 2, std::sqrt(3.0)};
  REQUIRE(ddgp_trilaterate(3, collinear, dist3, 1e-9, &kind, nullptr, nullptr) ==
          DDGP_OK);
  CHECK(kind == DDGP_TRILAT_DEGENERATE);
  CHECK(std::string(ddgp_last_error()).find("affinely dependent") !=
        std::string::npos);
}

TEST_CASE("family event and analytic probabilities") {
  double p0 = 0, p1 = 0, p2 = 0;
  ddgp_analytic_probabilities(&p0, &p1, &p2);
  CHECK(std::abs(p0 + p1 + p2 - 1.0) < 1e-12);

  int event = -1;
  REQUIRE(ddgp_family_event(std::sqrt(5.0), 2.0, 1e-9, &event) == DDGP_OK);
  CHECK(event == 1);
  CHECK(ddgp_family_event(2.0, 1.0, 1e-9, &event) == DDGP_ERR_DEGENERATE);
}

TEST_CASE("utopia reports through the C API") {
  ddgp_utopia_options options;
  ddgp_utopia_options_init(&options);
  options.samples = 2000;
  options.seed = 3;
  options.threads = 4;

  char* json = nullptr;
  REQUIRE(ddgp_utopia_report_json(&options, &json) == DDGP_OK);
  nlohmann::json report = nlohmann::json::parse(take(json));
  CHECK(report.at("samples") == 2000);
  CHECK(report.at("counts").at("event0").get<std::uint64_t>() > 0);

  char* csv = nullptr;
  REQUIRE(ddgp_utopia_csv(&options, &csv) == DDGP_OK);
  std::string csv_text = take(csv);
  CHECK(csv_text.rfind("sample,d24,d34,event", 0) == 0);
  CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 2001);
}
