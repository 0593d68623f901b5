#include "ddgp/ddgp.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "bp.hpp"
#include "counting.hpp"
#include "edm.hpp"
#include "generator.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "reports.hpp"
#include "trilateration.hpp"
#include "utopia.hpp"

using namespace ddgp;

namespace {

thread_local std::string g_last_error;

ddgp_status fail(ddgp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Maps core exceptions onto status codes.
template <typename Fn>
ddgp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(DDGP_ERR_PARSE, e.what());
  } catch (const UnsatisfiableSpec& e) {
    return fail(DDGP_ERR_UNSATISFIABLE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DDGP_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DDGP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DDGP_ERR_INTERNAL, e.what());
  }
}

BpConfig to_config(const ddgp_solve_options* options) {
  BpConfig config;
  if (options) {
    config.tol_trilateration = options->tol_trilateration;
    config.tol_prune = options->tol_prune;
    config.max_nodes = options->max_nodes;
    config.collect_all = options->collect_all != 0;
    config.threads = options->threads;
  }
  return config;
}

GenSpec to_spec(const ddgp_generate_options* options) {
  GenSpec spec;
  spec.n = options->n;
  spec.dimension = options->dimension;
  switch (options->class_target) {
    case DDGP_CLASS_DMDGP:
      spec.class_target = InstanceKind::Dmdgp;
      break;
    case DDGP_CLASS_COMBINATORIAL:
      spec.class_target = InstanceKind::CombinatorialDdgp;
      break;
    case DDGP_CLASS_DDGP:
      spec.class_target = InstanceKind::Ddgp;
      break;
    default:
      throw std::invalid_argument("unknown class target");
  }
  spec.pruning_edge_prob = options->pruning_edge_prob;
  spec.seed = options->seed;
  spec.box = options->box;
  return spec;
}

}  // namespace

struct ddgp_instance {
  Instance instance;
};

struct ddgp_solve_result {
  Instance instance;  // the instance actually solved (scheme included)
  SolveResult result;
  double max_residual = 0.0;
};

namespace {

// Returns the instance itself when it carries a scheme, otherwise derives an
// order for the header dimension.
ddgp_status with_scheme(const ddgp_instance* instance, Instance& out) {
  if (instance->instance.scheme) {
    out = instance->instance;
    return DDGP_OK;
  }
  FindOrderResult found =
      find_order(instance->instance.graph, instance->instance.dimension);
  if (found.status == FindOrderStatus::BudgetExceeded) {
    return fail(DDGP_ERR_BUDGET, "order search budget exhausted");
  }
  if (found.status != FindOrderStatus::Found) {
    return fail(DDGP_ERR_NO_ORDER,
                "no discretization order exists for dimension " +
                    std::to_string(instance->instance.dimension));
  }
  out = Instance{instance->instance.graph, instance->instance.dimension,
                 std::move(found.scheme)};
  return DDGP_OK;
}

ddgp_status require_valid(const Instance& instance) {
  ValidationReport report =
      validate_scheme(instance.graph, *instance.scheme);
  if (!report.ok) {
    return fail(DDGP_ERR_INVALID_SCHEME, report.violations.front());
  }
  return DDGP_OK;
}

}  // namespace

extern "C" {

const char* ddgp_version(void) { return "0.1.0"; }

const char* ddgp_last_error(void) { return g_last_error.c_str(); }

void ddgp_string_free(char* text) { delete[] text; }

ddgp_status ddgp_instance_parse(const char* text, ddgp_instance** out) {
  if (!text || !out) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    Instance parsed = read_instance(text);
    *out = new ddgp_instance{std::move(parsed)};
    return DDGP_OK;
  });
}

ddgp_status ddgp_instance_write(const ddgp_instance* instance, char** out_text) {
  if (!instance || !out_text) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = copy_string(write_instance(instance->instance));
    return DDGP_OK;
  });
}

void ddgp_instance_free(ddgp_instance* instance) { delete instance; }

int ddgp_instance_vertex_count(const ddgp_instance* instance) {
  return instance ? instance->instance.graph.vertex_count() : 0;
}

int ddgp_instance_dimension(const ddgp_instance* instance) {
  return instance ? instance->instance.dimension : 0;
}

int ddgp_instance_edge_count(const ddgp_instance* instance) {
  return instance ? static_cast<int>(instance->instance.graph.edge_count()) : 0;
}

int ddgp_instance_has_scheme(const ddgp_instance* instance) {
  return instance && instance->instance.scheme ? 1 : 0;
}

ddgp_status ddgp_instance_find_order(const ddgp_instance* instance, int dimension,
                                     uint64_t budget, ddgp_instance** out) {
  if (!instance || !out) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    const int k = dimension > 0 ? dimension : instance->instance.dimension;
    FindOrderResult found = find_order(instance->instance.graph, k,
                                       budget > 0 ? budget : 10'000'000);
    if (found.status == FindOrderStatus::BudgetExceeded) {
      return fail(DDGP_ERR_BUDGET, "order search budget exhausted");
    }
    if (found.status != FindOrderStatus::Found) {
      return fail(DDGP_ERR_NO_ORDER,
                  "no discretization order exists for dimension " +
                      std::to_string(k));
    }
    *out = new ddgp_instance{
        Instance{instance->instance.graph, k, std::move(found.scheme)}};
    return DDGP_OK;
  });
}

ddgp_status ddgp_classify_report_json(const ddgp_instance* instance,
                                      char** out_json) {
  if (!instance || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    Json report;
    if (instance->instance.scheme) {
      report = classify_report(instance->instance.graph,
                               *instance->instance.scheme, true);
    } else {
      FindOrderResult found =
          find_order(instance->instance.graph, instance->instance.dimension);
      if (found.status == FindOrderStatus::Found) {
        report = classify_report(instance->instance.graph, *found.scheme, false);
      } else {
        ValidationReport validation;
        validation.ok = false;
        validation.violations.push_back(
            "no discretization order exists for dimension " +
            std::to_string(instance->instance.dimension));
        report = not_discretizable_report(validation, "derived");
      }
    }
    *out_json = copy_string(render(report));
    return DDGP_OK;
  });
}

void ddgp_solve_options_init(ddgp_solve_options* options) {
  if (!options) return;
  BpConfig defaults;
  options->tol_trilateration = defaults.tol_trilateration;
  options->tol_prune = defaults.tol_prune;
  options->max_nodes = defaults.max_nodes;
  options->collect_all = defaults.collect_all ? 1 : 0;
  options->threads = defaults.threads;
}

ddgp_status ddgp_solve(const ddgp_instance* instance,
                       const ddgp_solve_options* options,
                       ddgp_solve_result** out) {
  if (!instance || !out) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    Instance prepared{WeightedGraph(1, {}), 1, std::nullopt};
    if (ddgp_status status = with_scheme(instance, prepared); status != DDGP_OK) {
      return status;
    }
    if (ddgp_status status = require_valid(prepared); status != DDGP_OK) {
      return status;
    }
    SolveResult result =
        solve(prepared.graph, *prepared.scheme, to_config(options));
    double max_residual = 0.0;
    for (const Solution& solution : result.solutions) {
      max_residual = std::max(max_residual,
                              max_relative_residual(prepared.graph, solution.coords));
    }
    *out = new ddgp_solve_result{std::move(prepared), std::move(result),
                                 max_residual};
    return DDGP_OK;
  });
}

void ddgp_solve_result_free(ddgp_solve_result* result) { delete result; }

ddgp_solve_status ddgp_solve_result_status(const ddgp_solve_result* r) {
  if (!r) return DDGP_SOLVE_NO;
  switch (r->result.status) {
    case SolveStatus::Yes:
      return DDGP_SOLVE_YES;
    case SolveStatus::BudgetExceeded:
      return DDGP_SOLVE_BUDGET_EXCEEDED;
    case SolveStatus::No:
      break;
  }
  return DDGP_SOLVE_NO;
}

uint64_t ddgp_solve_result_count(const ddgp_solve_result* r) {
  return r ? r->result.solutions.size() : 0;
}

int ddgp_solve_result_vertex_count(const ddgp_solve_result* r) {
  return r ? r->instance.graph.vertex_count() : 0;
}

int ddgp_solve_result_dimension(const ddgp_solve_result* r) {
  return r ? r->instance.dimension : 0;
}

uint64_t ddgp_solve_result_a(const ddgp_solve_result* r, int rank) {
  if (!r || rank < 1 || rank > static_cast<int>(r->result.stats.a.size())) return 0;
  return r->result.stats.a[static_cast<std::size_t>(rank - 1)];
}

uint64_t ddgp_solve_result_nodes(const ddgp_solve_result* r) {
  return r ? r->result.stats.nodes_expanded : 0;
}

uint64_t ddgp_solve_result_width(const ddgp_solve_result* r) {
  return r ? r->result.stats.max_width_observed : 0;
}

int ddgp_solve_result_depth(const ddgp_solve_result* r) {
  return r ? r->result.stats.depth_reached : 0;
}

uint64_t ddgp_solve_result_degenerate_count(const ddgp_solve_result* r) {
  return r ? r->result.degenerate.size() : 0;
}

const char* ddgp_solve_result_branch(const ddgp_solve_result* r, uint64_t index) {
  if (!r || index >= r->result.solutions.size()) return nullptr;
  return r->result.solutions[static_cast<std::size_t>(index)].branch.c_str();
}

ddgp_status ddgp_solve_result_coords(const ddgp_solve_result* r, uint64_t index,
                                     double* buffer) {
  if (!r || !buffer) return fail(DDGP_ERR_ARGUMENT, "null argument");
  if (index >= r->result.solutions.size()) {
    return fail(DDGP_ERR_ARGUMENT, "solution index out of range");
  }
  const Eigen::MatrixXd& coords =
      r->result.solutions[static_cast<std::size_t>(index)].coords;
  for (Eigen::Index row = 0; row < coords.rows(); ++row) {
    for (Eigen::Index col = 0; col < coords.cols(); ++col) {
      buffer[row * coords.cols() + col] = coords(row, col);
    }
  }
  return DDGP_OK;
}

double ddgp_solve_result_max_residual(const ddgp_solve_result* r) {
  return r ? r->max_residual : 0.0;
}

ddgp_status ddgp_solve_report_json(const ddgp_solve_result* r, char** out_json) {
  if (!r || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = copy_string(
        render(solve_report(r->instance.graph, *r->instance.scheme, r->result)));
    return DDGP_OK;
  });
}

ddgp_status ddgp_solve_csv(const ddgp_solve_result* r, char** out_csv) {
  if (!r || !out_csv) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_csv = copy_string(solve_csv(r->result, r->instance.dimension));
    return DDGP_OK;
  });
}

ddgp_status ddgp_count_report_json(const ddgp_instance* instance,
                                   const ddgp_solve_options* options,
                                   char** out_json) {
  if (!instance || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    Instance prepared{WeightedGraph(1, {}), 1, std::nullopt};
    if (ddgp_status status = with_scheme(instance, prepared); status != DDGP_OK) {
      return status;
    }
    if (ddgp_status status = require_valid(prepared); status != DDGP_OK) {
      return status;
    }
    BpConfig config = to_config(options);
    config.collect_all = true;  // the comparison needs the full enumeration
    SolveResult solved = solve(prepared.graph, *prepared.scheme, config);
    *out_json = copy_string(
        render(count_report(prepared.graph, *prepared.scheme, solved)));
    return DDGP_OK;
  });
}

ddgp_status ddgp_order_report_json(const ddgp_instance* instance, int dimension,
                                   uint64_t budget, char** out_json,
                                   ddgp_instance** out_instance) {
  if (!instance || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    const int k = dimension > 0 ? dimension : instance->instance.dimension;
    FindOrderResult found = find_order(instance->instance.graph, k,
                                       budget > 0 ? budget : 10'000'000);
    *out_json = copy_string(render(order_report(found, k)));
    if (out_instance) {
      *out_instance = nullptr;
      if (found.status == FindOrderStatus::Found) {
        *out_instance = new ddgp_instance{
            Instance{instance->instance.graph, k, std::move(found.scheme)}};
      }
    }
    return DDGP_OK;
  });
}

ddgp_status ddgp_verify(const ddgp_instance* instance, const double* coords,
                        double* out_max_residual) {
  if (!instance || !coords || !out_max_residual) {
    return fail(DDGP_ERR_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const int n = instance->instance.graph.vertex_count();
    const int k = instance->instance.dimension;
    Eigen::MatrixXd x(n, k);
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < k; ++col) x(row, col) = coords[row * k + col];
    }
    *out_max_residual = max_relative_residual(instance->instance.graph, x);
    return DDGP_OK;
  });
}

ddgp_status ddgp_verify_report_json(const ddgp_instance* instance,
                                    const double* coords, double tol,
                                    char** out_json) {
  if (!instance || !coords || !out_json) {
    return fail(DDGP_ERR_ARGUMENT, "null argument");
  }
  return guarded([&]() -> ddgp_status {
    double max_residual = 0.0;
    if (ddgp_status status = ddgp_verify(instance, coords, &max_residual);
        status != DDGP_OK) {
      return status;
    }
    *out_json = copy_string(
        render(verify_report(instance->instance.graph, max_residual, tol)));
    return DDGP_OK;
  });
}

void ddgp_generate_options_init(ddgp_generate_options* options) {
  if (!options) return;
  options->n = 10;
  options->dimension = 3;
  options->class_target = DDGP_CLASS_DMDGP;
  options->pruning_edge_prob = 0.0;
  options->seed = 0;
  options->box = 10.0;
}

ddgp_status ddgp_generate(const ddgp_generate_options* options,
                          ddgp_instance** out_instance, char** out_witness_json) {
  if (!options || !out_instance) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    GeneratedInstance generated = generate(to_spec(options));
    Json witness = witness_json(generated, options->seed);
    *out_instance = new ddgp_instance{Instance{
        std::move(generated.graph), options->dimension, std::move(generated.scheme)}};
    if (out_witness_json) *out_witness_json = copy_string(render(witness));
    return DDGP_OK;
  });
}

ddgp_status ddgp_generate_report_json(const ddgp_generate_options* options,
                                      const char* instance_path,
                                      const char* witness_path, char** out_json) {
  if (!options || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    GenSpec spec = to_spec(options);
    GeneratedInstance generated = generate(spec);
    std::optional<std::string> ipath, wpath;
    if (instance_path) ipath = instance_path;
    if (witness_path) wpath = witness_path;
    *out_json =
        copy_string(render(generate_report(spec, generated, ipath, wpath)));
    return DDGP_OK;
  });
}

ddgp_status ddgp_trilaterate(int dimension, const double* base, const double* dist,
                             double tol, ddgp_trilat_kind* out_kind, double* y_plus,
                             double* y_minus) {
  if (!base || !dist || !out_kind) return fail(DDGP_ERR_ARGUMENT, "null argument");
  if (dimension < 1) return fail(DDGP_ERR_ARGUMENT, "dimension must be at least 1");
  return guarded([&] {
    Eigen::MatrixXd b(dimension, dimension);
    Eigen::VectorXd d(dimension);
    for (int row = 0; row < dimension; ++row) {
      d(row) = dist[row];
      for (int col = 0; col < dimension; ++col) {
        b(row, col) = base[row * dimension + col];
      }
    }
    TrilaterationResult result = trilaterate(b, d, tol);
    auto copy_point = [&](const Eigen::VectorXd& y, double* buffer) {
      if (!buffer) return;
      for (int i = 0; i < dimension; ++i) buffer[i] = y(i);
    };
    switch (result.kind) {
      case TrilaterationResult::Kind::NoPosition:
        *out_kind = DDGP_TRILAT_NO_POSITION;
        break;
      case TrilaterationResult::Kind::TwoPositions:
        *out_kind = DDGP_TRILAT_TWO_POSITIONS;
        copy_point(result.y_plus, y_plus);
        copy_point(result.y_minus, y_minus);
        break;
      case TrilaterationResult::Kind::SinglePosition:
        *out_kind = DDGP_TRILAT_SINGLE_POSITION;
        copy_point(result.y, y_plus);
        break;
      case TrilaterationResult::Kind::Degenerate:
        *out_kind = DDGP_TRILAT_DEGENERATE;
        g_last_error = result.degenerate_reason;
        break;
    }
    return DDGP_OK;
  });
}

void ddgp_analytic_probabilities(double* p0, double* p1, double* p2) {
  AnalyticProbabilities p = analytic_probabilities();
  if (p0) *p0 = p.p0;
  if (p1) *p1 = p.p1;
  if (p2) *p2 = p.p2;
}

ddgp_status ddgp_family_event(double d24, double d34, double tol, int* out_event) {
  if (!out_event) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&]() -> ddgp_status {
    EventResult result = classify_instance(d24, d34, tol);
    if (result.kind == EventResult::Kind::Exceptional) {
      return fail(DDGP_ERR_DEGENERATE, result.reason);
    }
    *out_event = result.event;
    return DDGP_OK;
  });
}

void ddgp_utopia_options_init(ddgp_utopia_options* options) {
  if (!options) return;
  options->samples = 100000;
  options->seed = 0;
  options->model = DDGP_UTOPIA_INDEPENDENT;
  options->tol = 1e-9;
  options->threads = 1;
}

ddgp_status ddgp_utopia_report_json(const ddgp_utopia_options* options,
                                    char** out_json) {
  if (!options || !out_json) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    UtopiaConfig config;
    config.samples = options->samples;
    config.seed = options->seed;
    config.model = options->model == DDGP_UTOPIA_COUPLED
                       ? SamplingModel::CoupledEpsilon
                       : SamplingModel::IndependentUniform;
    config.tol = options->tol;
    config.threads = options->threads;
    UtopiaReport report = monte_carlo(config);
    *out_json = copy_string(render(utopia_report(report)));
    return DDGP_OK;
  });
}

ddgp_status ddgp_utopia_csv(const ddgp_utopia_options* options, char** out_csv) {
  if (!options || !out_csv) return fail(DDGP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    UtopiaConfig config;
    config.samples = options->samples;
    config.seed = options->seed;
    config.model = options->model == DDGP_UTOPIA_COUPLED
                       ? SamplingModel::CoupledEpsilon
                       : SamplingModel::IndependentUniform;
    config.tol = options->tol;
    config.threads = options->threads;
    std::vector<UtopiaSample> samples;
    monte_carlo(config, &samples);
    *out_csv = copy_string(utopia_csv(samples));
    return DDGP_OK;
  });
}

}  // extern "C"
