#include "instance_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace ddgp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string& tok, int line, const std::string& field) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, field + " '" + tok + "' is not an integer");
  }
  if (pos != tok.size()) {
    throw ParseError(line, field + " '" + tok + "' is not an integer");
  }
  if (value < -1000000000L || value > 1000000000L) {
    throw ParseError(line, field + " '" + tok + "' is out of range");
  }
  return static_cast<int>(value);
}

double parse_weight(const std::string& tok, int line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "weight '" + tok + "' is not a number");
  }
  if (pos != tok.size()) {
    throw ParseError(line, "weight '" + tok + "' is not a number");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParseError(line, "weight '" + tok + "' must be a positive finite number");
  }
  return value;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Instance read_instance(std::string_view text) {
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;

  bool have_header = false;
  int n = 0, k = 0;
  std::vector<WeightedEdge> edges;
  std::set<std::pair<int, int>> seen_edges;
  std::optional<std::vector<int>> order;
  int order_line = 0;
  std::map<int, std::vector<int>> clusters;
  std::map<int, int> cluster_lines;

  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const std::string& kind = tokens.front();

    if (!have_header) {
      if (kind != "dgp") {
        throw ParseError(line_no, "expected header 'dgp <n> <K>', got '" + kind + "'");
      }
      if (tokens.size() != 3) {
        throw ParseError(line_no, "header must be 'dgp <n> <K>'");
      }
      n = parse_int(tokens[1], line_no, "vertex count");
      k = parse_int(tokens[2], line_no, "dimension");
      if (n < 1) throw ParseError(line_no, "vertex count must be at least 1");
      if (k < 1) throw ParseError(line_no, "dimension must be at least 1");
      if (k > n) {
        throw ParseError(line_no, "dimension " + std::to_string(k) +
                                      " exceeds vertex count " + std::to_string(n));
      }
      have_header = true;
      continue;
    }

    if (kind == "dgp") {
      throw ParseError(line_no, "duplicate header");
    } else if (kind == "e") {
      if (tokens.size() != 4) {
        throw ParseError(line_no, "edge line must be 'e <i> <j> <d>'");
      }
      int i = parse_int(tokens[1], line_no, "vertex");
      int j = parse_int(tokens[2], line_no, "vertex");
      if (i < 1 || i > n || j < 1 || j > n) {
        throw ParseError(line_no, "edge endpoint outside 1.." + std::to_string(n));
      }
      if (i == j) throw ParseError(line_no, "self-loop at vertex " + std::to_string(i));
      double w = parse_weight(tokens[3], line_no);
      auto key = std::minmax(i, j);
      if (!seen_edges.insert({key.first, key.second}).second) {
        throw ParseError(line_no, "duplicate edge {" + std::to_string(key.first) +
                                      "," + std::to_string(key.second) + "}");
      }
      edges.push_back({key.first, key.second, w});
    } else if (kind == "order") {
      if (order) throw ParseError(line_no, "duplicate order line");
      if (static_cast<int>(tokens.size()) != n + 1) {
        throw ParseError(line_no, "order must list exactly " + std::to_string(n) +
                                      " vertices");
      }
      std::vector<int> values;
      std::set<int> unique;
      for (int t = 1; t <= n; ++t) {
        int v = parse_int(tokens[static_cast<std::size_t>(t)], line_no, "vertex");
        if (v < 1 || v > n) {
          throw ParseError(line_no, "order vertex " + std::to_string(v) +
                                        " outside 1.." + std::to_string(n));
        }
        if (!unique.insert(v).second) {
          throw ParseError(line_no, "order repeats vertex " + std::to_string(v));
        }
        values.push_back(v);
      }
      order = std::move(values);
      order_line = line_no;
    } else if (kind == "cluster") {
      if (static_cast<int>(tokens.size()) != k + 2) {
        throw ParseError(line_no, "cluster line must be 'cluster <j> <u1> ... <u" +
                                      std::to_string(k) + ">'");
      }
      int v = parse_int(tokens[1], line_no, "vertex");
      if (v < 1 || v > n) {
        throw ParseError(line_no, "cluster vertex " + std::to_string(v) +
                                      " outside 1.." + std::to_string(n));
      }
      if (clusters.count(v)) {
        throw ParseError(line_no, "duplicate cluster for vertex " + std::to_string(v));
      }
      std::vector<int> members;
      for (int t = 2; t < static_cast<int>(tokens.size()); ++t) {
        int u = parse_int(tokens[static_cast<std::size_t>(t)], line_no, "vertex");
        if (u < 1 || u > n) {
          throw ParseError(line_no, "cluster member " + std::to_string(u) +
                                        " outside 1.." + std::to_string(n));
        }
        members.push_back(u);
      }
      clusters[v] = std::move(members);
      cluster_lines[v] = line_no;
    } else {
      throw ParseError(line_no, "unknown record '" + kind + "'");
    }
  }

  if (!have_header) throw ParseError(line_no, "missing header 'dgp <n> <K>'");
  if (!order && !clusters.empty()) {
    throw ParseError(cluster_lines.begin()->second,
                     "cluster lines require an order line");
  }

  std::optional<DiscretizationScheme> scheme;
  if (order) {
    // Clusters must cover exactly the vertices ranked after the first K.
    std::set<int> expected;
    for (int r = k; r < n; ++r) expected.insert((*order)[static_cast<std::size_t>(r)]);
    for (const auto& [v, members] : clusters) {
      if (!expected.count(v)) {
        throw ParseError(cluster_lines[v], "cluster for vertex " + std::to_string(v) +
                                               " which is ranked in the first " +
                                               std::to_string(k));
      }
    }
    for (int v : expected) {
      if (!clusters.count(v)) {
        throw ParseError(order_line, "missing cluster for vertex " + std::to_string(v));
      }
    }
    scheme = DiscretizationScheme(k, *order, std::move(clusters));
  }

  WeightedGraph graph(n, std::move(edges));
  return Instance{std::move(graph), k, std::move(scheme)};
}

std::string write_instance(const Instance& instance) {
  std::ostringstream os;
  const int n = instance.graph.vertex_count();
  os << "dgp " << n << " " << instance.dimension << "\n";
  for (const auto& e : instance.graph.edges()) {
    os << "e " << e.i << " " << e.j << " " << fmt17(e.weight) << "\n";
  }
  if (instance.scheme) {
    os << "order";
    for (int v : instance.scheme->order()) os << " " << v;
    os << "\n";
    for (int r = instance.dimension + 1; r <= n; ++r) {
      int v = instance.scheme->vertex_at_rank(r);
      os << "cluster " << v;
      for (int u : instance.scheme->cluster(v)) os << " " << u;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace ddgp
