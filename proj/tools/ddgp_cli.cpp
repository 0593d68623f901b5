// Command line front end for the DDGP solver library. All computation and
// report rendering happens behind the C API in libddgp; this tool only parses
// flags, moves bytes between files and streams, and maps outcomes to exit
// codes (0 success including a clean NO, 1 infeasible or invalid input,
// 2 usage error).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddgp/ddgp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
  void operator()(char* s) const { ddgp_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct InstanceDeleter {
  void operator()(ddgp_instance* i) const { ddgp_instance_free(i); }
};
using InstancePtr = std::unique_ptr<ddgp_instance, InstanceDeleter>;

struct ResultDeleter {
  void operator()(ddgp_solve_result* r) const { ddgp_solve_result_free(r); }
};
using ResultPtr = std::unique_ptr<ddgp_solve_result, ResultDeleter>;

int fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitFailure;
}

int fail_api(const std::string& context) {
  std::cerr << "error: " << context << ": " << ddgp_last_error() << "\n";
  return kExitFailure;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

// Report goes to stdout unless an output path was given.
int emit(const std::string& report, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << report;
    return kExitOk;
  }
  if (!write_file(output_path, report)) {
    return fail("cannot write " + output_path);
  }
  return kExitOk;
}

InstancePtr parse_instance_file(const std::string& path, int& exit_code) {
  exit_code = kExitOk;
  std::optional<std::string> text = read_file(path);
  if (!text) {
    exit_code = fail("cannot read " + path);
    return nullptr;
  }
  ddgp_instance* instance = nullptr;
  if (ddgp_instance_parse(text->c_str(), &instance) != DDGP_OK) {
    exit_code = fail_api(path);
    return nullptr;
  }
  return InstancePtr(instance);
}

struct SolveFlags {
  double tol_prune = 0.0;
  double tol_trilat = 0.0;
  std::uint64_t max_nodes = 0;
  int threads = 0;

  void attach(CLI::App* cmd) {
    ddgp_solve_options defaults;
    ddgp_solve_options_init(&defaults);
    tol_prune = defaults.tol_prune;
    tol_trilat = defaults.tol_trilateration;
    max_nodes = defaults.max_nodes;
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    cmd->add_option("--tol-prune", tol_prune,
                    "relative pruning-edge feasibility tolerance")
        ->capture_default_str();
    cmd->add_option("--tol-trilat", tol_trilat, "trilateration tolerance")
        ->capture_default_str();
    cmd->add_option("--max-nodes", max_nodes, "tree-node budget")
        ->capture_default_str();
    cmd->add_option("--threads", threads, "internal parallelism cap")
        ->capture_default_str();
  }

  ddgp_solve_options options() const {
    ddgp_solve_options out;
    ddgp_solve_options_init(&out);
    out.tol_prune = tol_prune;
    out.tol_trilateration = tol_trilat;
    out.max_nodes = max_nodes;
    out.threads = threads;
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discretizable distance geometry toolkit: enumerates all "
               "incongruent realizations by Branch-and-Prune, predicts "
               "solution counts for clique-cluster instances, and runs the "
               "weight-dependence experiment on the five-vertex family"};
  app.set_version_flag("--version", ddgp_version());
  app.require_subcommand(1);

  // --- solve ------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand(
      "solve", "enumerate all realizations of an instance");
  std::string solve_input, solve_output, solve_csv_path;
  SolveFlags solve_flags;
  solve_cmd->add_option("--input", solve_input, "instance file")->required();
  solve_cmd->add_option("--output", solve_output, "write the JSON report here");
  solve_cmd->add_option("--csv", solve_csv_path,
                        "write solution coordinates as CSV here");
  solve_flags.attach(solve_cmd);

  // --- classify ----------------------------------------------------------
  auto* classify_cmd = app.add_subcommand(
      "classify", "validate a scheme and report the instance class");
  std::string classify_input, classify_output;
  classify_cmd->add_option("--input", classify_input, "instance file")->required();
  classify_cmd->add_option("--output", classify_output, "write the JSON report here");

  // --- order -------------------------------------------------------------
  auto* order_cmd = app.add_subcommand(
      "order", "search for a discretization order");
  std::string order_input, order_output, order_instance_out;
  int order_k = 0;
  std::uint64_t order_budget = 10'000'000;
  order_cmd->add_option("--input", order_input, "instance file")->required();
  order_cmd->add_option("--k", order_k,
                        "embedding dimension (default: the instance header)");
  order_cmd->add_option("--max-nodes", order_budget, "search step budget")
      ->capture_default_str();
  order_cmd->add_option("--output", order_output, "write the JSON report here");
  order_cmd->add_option("--write-instance", order_instance_out,
                        "write the instance augmented with the found order here");

  // --- count ---------------------------------------------------------------
  auto* count_cmd = app.add_subcommand(
      "count", "predict the solution count and compare with enumeration");
  std::string count_input, count_output;
  SolveFlags count_flags;
  count_cmd->add_option("--input", count_input, "instance file")->required();
  count_cmd->add_option("--output", count_output, "write the JSON report here");
  count_flags.attach(count_cmd);

  // --- generate ------------------------------------------------------------
  auto* generate_cmd = app.add_subcommand(
      "generate", "produce a random YES instance of a prescribed class");
  int gen_n = 10, gen_k = 3;
  std::string gen_class = "dmdgp", gen_output, gen_report_output;
  double gen_prob = 0.0, gen_box = 10.0;
  std::uint64_t gen_seed = 0;
  generate_cmd->add_option("--n", gen_n, "vertex count")->capture_default_str();
  generate_cmd->add_option("--k", gen_k, "embedding dimension")->capture_default_str();
  generate_cmd
      ->add_option("--class", gen_class, "dmdgp | combinatorial | ddgp")
      ->capture_default_str();
  generate_cmd->add_option("--prune-prob", gen_prob,
                           "probability of each extra backward pair")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  generate_cmd->add_option("--box", gen_box, "coordinate sampling half-width")
      ->capture_default_str();
  generate_cmd->add_option(
      "--output", gen_output,
      "write the instance here (witness goes to <output>.witness.json)");
  generate_cmd->add_option("--report-output", gen_report_output,
                           "write the JSON report here instead of stdout");

  // --- verify ---------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "check a realization against an instance's distances");
  std::string verify_input, verify_coords, verify_output;
  double verify_tol = 1e-6;
  verify_cmd->add_option("--input", verify_input, "instance file")->required();
  verify_cmd
      ->add_option("--coords", verify_coords,
                   "realization JSON file ({\"coords\": [[...], ...]})")
      ->required();
  verify_cmd->add_option("--tol-prune", verify_tol, "acceptance tolerance")
      ->capture_default_str();
  verify_cmd->add_option("--output", verify_output, "write the JSON report here");

  // --- utopia ----------------------------------------------------------------
  auto* utopia_cmd = app.add_subcommand(
      "utopia", "Monte Carlo over the five-vertex family weights");
  std::uint64_t utopia_samples = 100000, utopia_seed = 0;
  std::string utopia_model = "independent", utopia_output, utopia_csv_path;
  double utopia_tol = 1e-9;
  int utopia_threads =
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  utopia_cmd->add_option("--samples", utopia_samples, "sample count")
      ->capture_default_str();
  utopia_cmd->add_option("--seed", utopia_seed, "random seed")->capture_default_str();
  utopia_cmd->add_option("--model", utopia_model, "independent | coupled")
      ->capture_default_str();
  utopia_cmd->add_option("--tol-trilat", utopia_tol, "trilateration tolerance")
      ->capture_default_str();
  utopia_cmd->add_option("--threads", utopia_threads, "worker thread count")
      ->capture_default_str();
  utopia_cmd->add_option("--output", utopia_output, "write the JSON report here");
  utopia_cmd->add_option("--csv", utopia_csv_path, "write per-sample CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (solve_cmd->parsed()) {
    int exit_code = 0;
    InstancePtr instance = parse_instance_file(solve_input, exit_code);
    if (!instance) return exit_code;
    ddgp_solve_options options = solve_flags.options();
    ddgp_solve_result* raw = nullptr;
    if (ddgp_solve(instance.get(), &options, &raw) != DDGP_OK) {
      return fail_api("solve");
    }
    ResultPtr result(raw);
    char* json = nullptr;
    if (ddgp_solve_report_json(result.get(), &json) != DDGP_OK) {
      return fail_api("solve report");
    }
    CString report(json);
    if (!solve_csv_path.empty()) {
      char* csv = nullptr;
      if (ddgp_solve_csv(result.get(), &csv) != DDGP_OK) {
        return fail_api("solve csv");
      }
      CString csv_text(csv);
      if (!write_file(solve_csv_path, csv_text.get())) {
        return fail("cannot write " + solve_csv_path);
      }
    }
    int code = emit(report.get(), solve_output);
    if (code != kExitOk) return code;
    return ddgp_solve_result_status(result.get()) == DDGP_SOLVE_BUDGET_EXCEEDED
               ? kExitFailure
               : kExitOk;
  }

  if (classify_cmd->parsed()) {
    int exit_code = 0;
    InstancePtr instance = parse_instance_file(classify_input, exit_code);
    if (!instance) return exit_code;
    char* json = nullptr;
    if (ddgp_classify_report_json(instance.get(), &json) != DDGP_OK) {
      return fail_api("classify");
    }
    CString report(json);
    return emit(report.get(), classify_output);
  }

  if (order_cmd->parsed()) {
    int exit_code = 0;
    InstancePtr instance = parse_instance_file(order_input, exit_code);
    if (!instance) return exit_code;
    char* json = nullptr;
    ddgp_instance* augmented_raw = nullptr;
    if (ddgp_order_report_json(instance.get(), order_k, order_budget, &json,
                               &augmented_raw) != DDGP_OK) {
      return fail_api("order");
    }
    CString report(json);
    InstancePtr augmented(augmented_raw);
    if (!order_instance_out.empty()) {
      if (!augmented) return fail("no order found, nothing to write");
      char* text = nullptr;
      if (ddgp_instance_write(augmented.get(), &text) != DDGP_OK) {
        return fail_api("order instance");
      }
      CString instance_text(text);
      if (!write_file(order_instance_out, instance_text.get())) {
        return fail("cannot write " + order_instance_out);
      }
    }
    int code = emit(report.get(), order_output);
    if (code != kExitOk) return code;
    nlohmann::json parsed = nlohmann::json::parse(report.get());
    return parsed.at("status") == "budget_exceeded" ? kExitFailure : kExitOk;
  }

  if (count_cmd->parsed()) {
    int exit_code = 0;
    InstancePtr instance = parse_instance_file(count_input, exit_code);
    if (!instance) return exit_code;
    ddgp_solve_options options = count_flags.options();
    char* json = nullptr;
    if (ddgp_count_report_json(instance.get(), &options, &json) != DDGP_OK) {
      return fail_api("count");
    }
    CString report(json);
    int code = emit(report.get(), count_output);
    if (code != kExitOk) return code;
    nlohmann::json parsed = nlohmann::json::parse(report.get());
    return parsed.at("solve_status") == "BUDGET_EXCEEDED" ? kExitFailure : kExitOk;
  }

  if (generate_cmd->parsed()) {
    ddgp_generate_options options;
    ddgp_generate_options_init(&options);
    options.n = gen_n;
    options.dimension = gen_k;
    if (gen_class == "dmdgp") {
      options.class_target = DDGP_CLASS_DMDGP;
    } else if (gen_class == "combinatorial") {
      options.class_target = DDGP_CLASS_COMBINATORIAL;
    } else if (gen_class == "ddgp") {
      options.class_target = DDGP_CLASS_DDGP;
    } else {
      std::cerr << "error: unknown class '" << gen_class << "'\n";
      return kExitUsage;
    }
    options.pruning_edge_prob = gen_prob;
    options.seed = gen_seed;
    options.box = gen_box;

    const char* instance_path = gen_output.empty() ? nullptr : gen_output.c_str();
    std::string witness_path_text;
    const char* witness_path = nullptr;
    if (!gen_output.empty()) {
      witness_path_text = gen_output + ".witness.json";
      witness_path = witness_path_text.c_str();
    }

    if (!gen_output.empty()) {
      ddgp_instance* raw = nullptr;
      char* witness = nullptr;
      if (ddgp_generate(&options, &raw, &witness) != DDGP_OK) {
        return fail_api("generate");
      }
      InstancePtr instance(raw);
      CString witness_text(witness);
      char* text = nullptr;
      if (ddgp_instance_write(instance.get(), &text) != DDGP_OK) {
        return fail_api("generate instance");
      }
      CString instance_text(text);
      if (!write_file(gen_output, instance_text.get())) {
        return fail("cannot write " + gen_output);
      }
      if (!write_file(witness_path_text, witness_text.get())) {
        return fail("cannot write " + witness_path_text);
      }
    }
    char* json = nullptr;
    if (ddgp_generate_report_json(&options, instance_path, witness_path, &json) !=
        DDGP_OK) {
      return fail_api("generate report");
    }
    CString report(json);
    return emit(report.get(), gen_report_output);
  }

  if (verify_cmd->parsed()) {
    int exit_code = 0;
    InstancePtr instance = parse_instance_file(verify_input, exit_code);
    if (!instance) return exit_code;
    std::optional<std::string> coords_text = read_file(verify_coords);
    if (!coords_text) return fail("cannot read " + verify_coords);
    nlohmann::json coords_json;
    try {
      coords_json = nlohmann::json::parse(*coords_text);
    } catch (const nlohmann::json::exception& e) {
      return fail(verify_coords + ": " + e.what());
    }
    if (!coords_json.contains("coords") || !coords_json["coords"].is_array()) {
      return fail(verify_coords + ": missing 'coords' array");
    }
    const int n = ddgp_instance_vertex_count(instance.get());
    const int k = ddgp_instance_dimension(instance.get());
    const auto& rows = coords_json["coords"];
    if (static_cast<int>(rows.size()) != n) {
      return fail(verify_coords + ": expected " + std::to_string(n) +
                  " coordinate rows, found " + std::to_string(rows.size()));
    }
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != k) {
        return fail(verify_coords + ": each row needs " + std::to_string(k) +
                    " coordinates");
      }
      for (const auto& value : row) coords.push_back(value.get<double>());
    }
    char* json = nullptr;
    if (ddgp_verify_report_json(instance.get(), coords.data(), verify_tol,
                                &json) != DDGP_OK) {
      return fail_api("verify");
    }
    CString report(json);
    return emit(report.get(), verify_output);
  }

  if (utopia_cmd->parsed()) {
    ddgp_utopia_options options;
    ddgp_utopia_options_init(&options);
    options.samples = utopia_samples;
    options.seed = utopia_seed;
    if (utopia_model == "independent") {
      options.model = DDGP_UTOPIA_INDEPENDENT;
    } else if (utopia_model == "coupled") {
      options.model = DDGP_UTOPIA_COUPLED;
    } else {
      std::cerr << "error: unknown model '" << utopia_model << "'\n";
      return kExitUsage;
    }
    options.tol = utopia_tol;
    options.threads = utopia_threads;

    if (!utopia_csv_path.empty()) {
      char* csv = nullptr;
      if (ddgp_utopia_csv(&options, &csv) != DDGP_OK) {
        return fail_api("utopia csv");
      }
      CString csv_text(csv);
      if (!write_file(utopia_csv_path, csv_text.get())) {
        return fail("cannot write " + utopia_csv_path);
      }
    }
    char* json = nullptr;
    if (ddgp_utopia_report_json(&options, &json) != DDGP_OK) {
      return fail_api("utopia");
    }
    CString report(json);
    return emit(report.get(), utopia_output);
  }

  return kExitUsage;
}
