#include "reports.hpp"

#include <cstdio>

namespace ddgp {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json coords_json(const Eigen::MatrixXd& coords) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < coords.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < coords.cols(); ++c) row.push_back(coords(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* prediction_kind_name(CountPrediction::Kind kind) {
  switch (kind) {
    case CountPrediction::Kind::ExactPowerOfTwo:
      return "exact_power_of_two";
    case CountPrediction::Kind::UpperBoundOnly:
      return "upper_bound_only";
    case CountPrediction::Kind::NotApplicable:
      return "not_applicable";
  }
  return "unknown";
}

}  // namespace

std::string render(const Json& value) { return value.dump(2) + "\n"; }

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Yes:
      return "YES";
    case SolveStatus::No:
      return "NO";
    case SolveStatus::BudgetExceeded:
      return "BUDGET_EXCEEDED";
  }
  return "unknown";
}

Json classify_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                     bool scheme_from_file) {
  Json report;
  ValidationReport validation = validate_scheme(graph, scheme);
  report["valid"] = validation.ok;
  report["violations"] = validation.violations;
  if (!validation.ok) {
    report["class"] = instance_kind_name(InstanceKind::NotDiscretizable);
    report["pruning_free"] = nullptr;
    report["edges"] = nullptr;
  } else {
    InstanceClassification cls = classify(graph, scheme);
    EdgePartition partition = partition_edges(graph, scheme);
    report["class"] = instance_kind_name(cls.kind);
    report["pruning_free"] = cls.pruning_free;
    Json edges;
    edges["discretization"] = partition.discretization.size();
    edges["pruning"] = partition.pruning.size();
    report["edges"] = std::move(edges);
  }
  report["scheme_source"] = scheme_from_file ? "file" : "derived";
  return report;
}

Json not_discretizable_report(const ValidationReport& validation,
                              const char* scheme_source) {
  Json report;
  report["valid"] = false;
  report["violations"] = validation.violations;
  report["class"] = instance_kind_name(InstanceKind::NotDiscretizable);
  report["pruning_free"] = nullptr;
  report["edges"] = nullptr;
  report["scheme_source"] = scheme_source;
  return report;
}

Json solve_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const SolveResult& result) {
  (void)scheme;
  Json report;
  report["status"] = solve_status_name(result.status);
  report["count"] = result.solutions.size();
  Json stats;
  stats["a"] = result.stats.a;
  stats["nodes"] = result.stats.nodes_expanded;
  stats["width"] = result.stats.max_width_observed;
  stats["depth"] = result.stats.depth_reached;
  report["stats"] = std::move(stats);
  Json solutions = Json::array();
  double max_residual = 0.0;
  for (const Solution& solution : result.solutions) {
    Json entry;
    entry["branch"] = solution.branch;
    entry["coords"] = coords_json(solution.coords);
    solutions.push_back(std::move(entry));
    max_residual = std::max(max_residual,
                            max_relative_residual(graph, solution.coords));
  }
  report["solutions"] = std::move(solutions);
  report["max_residual"] =
      result.solutions.empty() ? Json(nullptr) : Json(max_residual);
  Json degenerate = Json::array();
  for (const DegenerateEvent& event : result.degenerate) {
    Json entry;
    entry["vertex"] = event.vertex;
    entry["rank"] = event.rank;
    entry["branch_prefix"] = event.branch_prefix;
    entry["reason"] = event.reason;
    degenerate.push_back(std::move(entry));
  }
  report["degenerate"] = std::move(degenerate);
  report["clique_infeasible"] = result.clique_infeasible;
  return report;
}

std::string solve_csv(const SolveResult& result, int dimension) {
  std::string out = "solution,branch,vertex";
  for (int c = 1; c <= dimension; ++c) out += ",x" + std::to_string(c);
  out += "\n";
  for (std::size_t s = 0; s < result.solutions.size(); ++s) {
    const Solution& solution = result.solutions[s];
    for (Eigen::Index v = 0; v < solution.coords.rows(); ++v) {
      out += std::to_string(s) + "," + solution.branch + "," + std::to_string(v + 1);
      for (Eigen::Index c = 0; c < solution.coords.cols(); ++c) {
        out += "," + fmt17(solution.coords(v, c));
      }
      out += "\n";
    }
  }
  return out;
}

Json count_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const SolveResult& solved) {
  Json report;
  CountPrediction prediction = predict_count(graph, scheme);
  Json pred;
  pred["kind"] = prediction_kind_name(prediction.kind);
  pred["value"] = prediction.value ? Json(*prediction.value) : Json(nullptr);
  pred["rationale"] = prediction.rationale;
  report["prediction"] = std::move(pred);
  report["solve_status"] = solve_status_name(solved.status);

  if (solved.status == SolveStatus::BudgetExceeded) {
    report["enumerated"] = nullptr;
    report["match"] = nullptr;
    report["recurrence"] = nullptr;
    return report;
  }

  const std::uint64_t enumerated = solved.solutions.size();
  report["enumerated"] = enumerated;
  if (prediction.kind == CountPrediction::Kind::ExactPowerOfTwo) {
    report["match"] = enumerated == *prediction.value;
  } else if (prediction.kind == CountPrediction::Kind::UpperBoundOnly) {
    report["match"] = enumerated <= *prediction.value;
  } else {
    report["match"] = nullptr;
  }

  if (solved.status == SolveStatus::Yes) {
    RecurrenceReport recurrence = check_recurrence(solved.stats, graph, scheme);
    Json rec;
    rec["holds"] = recurrence.holds;
    rec["violations"] = recurrence.violations;
    report["recurrence"] = std::move(rec);
  } else {
    report["recurrence"] = nullptr;
  }
  return report;
}

Json order_report(const FindOrderResult& result, int dimension) {
  Json report;
  switch (result.status) {
    case FindOrderStatus::Found:
      report["found"] = true;
      report["status"] = "found";
      break;
    case FindOrderStatus::NoneExists:
      report["found"] = false;
      report["status"] = "none_exists";
      break;
    case FindOrderStatus::BudgetExceeded:
      report["found"] = false;
      report["status"] = "budget_exceeded";
      break;
  }
  report["k"] = dimension;
  if (result.scheme) {
    report["order"] = result.scheme->order();
    Json clusters = Json::array();
    const int n = static_cast<int>(result.scheme->order().size());
    for (int r = result.scheme->dimension() + 1; r <= n; ++r) {
      const int v = result.scheme->vertex_at_rank(r);
      Json entry;
      entry["vertex"] = v;
      entry["cluster"] = result.scheme->cluster(v);
      clusters.push_back(std::move(entry));
    }
    report["clusters"] = std::move(clusters);
  } else {
    report["order"] = nullptr;
    report["clusters"] = nullptr;
  }
  return report;
}

Json verify_report(const WeightedGraph& graph, double max_residual, double tol) {
  Json report;
  report["edges"] = graph.edge_count();
  report["max_residual"] = max_residual;
  report["tolerance"] = tol;
  report["ok"] = max_residual <= tol;
  return report;
}

Json utopia_report(const UtopiaReport& report) {
  Json json;
  json["model"] = report.model == SamplingModel::IndependentUniform
                      ? "independent"
                      : "coupled";
  json["samples"] = report.samples;
  json["seed"] = report.seed;
  Json analytic;
  analytic["p0"] = report.analytic.p0;
  analytic["p1"] = report.analytic.p1;
  analytic["p2"] = report.analytic.p2;
  json["analytic"] = std::move(analytic);
  Json empirical;
  empirical["f0"] = report.f0;
  empirical["f1"] = report.f1;
  empirical["f2"] = report.f2;
  json["empirical"] = std::move(empirical);
  Json counts;
  counts["event0"] = report.count0;
  counts["event1"] = report.count1;
  counts["event2"] = report.count2;
  counts["degenerate"] = report.degenerate;
  json["counts"] = std::move(counts);
  Json thresholds;
  thresholds["epsilon_star"] = report.thresholds.epsilon_star;
  thresholds["d24_star"] = report.thresholds.d24_star;
  json["thresholds"] = std::move(thresholds);
  json["note"] =
      "analytic values follow the printed closed forms; empirical frequencies "
      "under either sampling model need not match p1 and p2, only their "
      "positivity is model-independent";
  return json;
}

std::string utopia_csv(const std::vector<UtopiaSample>& samples) {
  std::string out = "sample,d24,d34,event\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const UtopiaSample& sample = samples[i];
    out += std::to_string(i) + "," + fmt17(sample.d24) + "," + fmt17(sample.d34) +
           "," + (sample.event == 3 ? std::string("degenerate")
                                    : std::to_string(sample.event)) +
           "\n";
  }
  return out;
}

Json witness_json(const GeneratedInstance& generated, std::uint64_t seed) {
  Json witness;
  witness["n"] = generated.graph.vertex_count();
  witness["k"] = generated.scheme.dimension();
  witness["seed"] = seed;
  witness["coords"] = coords_json(generated.planted);
  return witness;
}

Json generate_report(const GenSpec& spec, const GeneratedInstance& generated,
                     const std::optional<std::string>& instance_path,
                     const std::optional<std::string>& witness_path) {
  Json report;
  report["n"] = spec.n;
  report["k"] = spec.dimension;
  report["class"] = instance_kind_name(spec.class_target);
  report["pruning_edge_prob"] = spec.pruning_edge_prob;
  report["seed"] = spec.seed;
  report["box"] = spec.box;
  report["edges"] = generated.graph.edge_count();
  if (instance_path) {
    report["instance_path"] = *instance_path;
    report["instance"] = nullptr;
  } else {
    report["instance_path"] = nullptr;
    report["instance"] =
        write_instance({generated.graph, generated.scheme.dimension(),
                        generated.scheme});
  }
  if (witness_path) {
    report["witness_path"] = *witness_path;
    report["witness"] = nullptr;
  } else {
    report["witness_path"] = nullptr;
    report["witness"] = witness_json(generated, spec.seed);
  }
  return report;
}

}  // namespace ddgp
