#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bp.hpp"
#include "counting.hpp"
#include "generator.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "utopia.hpp"

namespace ddgp {

// All reports are rendered from ordered JSON with a fixed field order, so a
// given input always produces byte-identical text.
using Json = nlohmann::ordered_json;

std::string render(const Json& value);

const char* solve_status_name(SolveStatus status);

Json classify_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                     bool scheme_from_file);
Json not_discretizable_report(const ValidationReport& validation,
                              const char* scheme_source);

Json solve_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const SolveResult& result);
std::string solve_csv(const SolveResult& result, int dimension);

Json count_report(const WeightedGraph& graph, const DiscretizationScheme& scheme,
                  const SolveResult& solved);

Json order_report(const FindOrderResult& result, int dimension);

Json verify_report(const WeightedGraph& graph, double max_residual, double tol);

Json utopia_report(const UtopiaReport& report);
std::string utopia_csv(const std::vector<UtopiaSample>& samples);

Json witness_json(const GeneratedInstance& generated, std::uint64_t seed);
Json generate_report(const GenSpec& spec, const GeneratedInstance& generated,
                     const std::optional<std::string>& instance_path,
                     const std::optional<std::string>& witness_path);

}  // namespace ddgp
