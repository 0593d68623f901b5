#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graph.hpp"

namespace ddgp {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

struct Instance {
  WeightedGraph graph;
  int dimension;
  std::optional<DiscretizationScheme> scheme;
};

// Text format, one record per line:
//   dgp <n> <K>                 header, required first
//   e <i> <j> <d>               one edge with its distance
//   order <v1> ... <vn>         optional vertex order
//   cluster <j> <u1> ... <uK>   reference set of vertex j (requires order)
// Lines starting with '#' are comments. If an order is present, a cluster
// line is required for every vertex ranked after the first K.
Instance read_instance(std::string_view text);

// Inverse of read_instance; weights are printed with 17 significant digits so
// doubles round-trip exactly.
std::string write_instance(const Instance& instance);

}  // namespace ddgp
