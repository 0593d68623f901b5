#include "utopia.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "rng.hpp"
#include "trilateration.hpp"

namespace ddgp {

AnalyticProbabilities analytic_probabilities() {
  const double s5 = std::sqrt(5.0);
  const double s3 = std::sqrt(3.0);
  const double r = std::sqrt(5.0 - 2.0 * s3);
  AnalyticProbabilities p;
  p.p2 = (r + s3 - 2.0) / (s5 + 1.0);
  p.p1 = (s5 - r - s3 + 1.0) / (s5 + 1.0);
  p.p0 = 2.0 / (s5 + 1.0);
  return p;
}

UtopiaThresholds utopia_thresholds() {
  UtopiaThresholds t;
  t.epsilon_star = std::sqrt(3.0) - 1.0;
  t.d24_star = std::sqrt(5.0 - 2.0 * std::sqrt(3.0));
  return t;
}

EventResult classify_instance(double d24, double d34, double tol) {
  if (!(d24 > 0.0) || !(d34 > 0.0)) {
    throw std::invalid_argument("distances must be positive");
  }

  Eigen::Vector2d x1(1.0, 0.0);
  Eigen::MatrixXd base4(2, 2);
  base4 << 2.0, 0.0,  // x2
      2.0, 1.0;       // x3
  Eigen::Vector2d dist4(d24, d34);

  EventResult result;
  TrilaterationResult vertex4 = trilaterate(base4, dist4, tol);
  switch (vertex4.kind) {
    case TrilaterationResult::Kind::NoPosition:
      result.event = 0;
      return result;
    case TrilaterationResult::Kind::Degenerate:
      result.kind = EventResult::Kind::Exceptional;
      result.reason = "vertex 4: " + vertex4.degenerate_reason;
      return result;
    case TrilaterationResult::Kind::SinglePosition:
      result.kind = EventResult::Kind::Exceptional;
      result.reason = "vertex 4: tangency within tolerance";
      return result;
    case TrilaterationResult::Kind::TwoPositions:
      break;
  }

  const Eigen::VectorXd* candidates[2] = {&vertex4.y_plus, &vertex4.y_minus};
  int extending = 0;
  for (const Eigen::VectorXd* x4 : candidates) {
    Eigen::MatrixXd base5(2, 2);
    base5.row(0) = x1.transpose();
    base5.row(1) = x4->transpose();
    Eigen::Vector2d dist5(1.0, 1.0);  // d15 = d45 = 1
    TrilaterationResult vertex5 = trilaterate(base5, dist5, tol);
    switch (vertex5.kind) {
      case TrilaterationResult::Kind::NoPosition:
        break;
      case TrilaterationResult::Kind::TwoPositions:
        ++extending;
        break;
      case TrilaterationResult::Kind::SinglePosition:
        result.kind = EventResult::Kind::Exceptional;
        result.reason = "vertex 5: tangency within tolerance";
        return result;
      case TrilaterationResult::Kind::Degenerate:
        result.kind = EventResult::Kind::Exceptional;
        result.reason = "vertex 5: " + vertex5.degenerate_reason;
        return result;
    }
  }
  result.event = extending;
  return result;
}

UtopiaReport monte_carlo(const UtopiaConfig& config,
                         std::vector<UtopiaSample>* out_samples) {
  if (config.samples < 1) throw std::invalid_argument("need at least one sample");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const std::uint64_t n = config.samples;
  std::vector<UtopiaSample> samples(n);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      // Per-sample substream: scheduling cannot change any draw.
      std::uint64_t state = config.seed + (idx + 1) * 0x9E3779B97F4A7C15ull;
      const double u1 = bits_to_unit(splitmix64(state));
      double d24 = 0.0, d34 = 0.0;
      if (config.model == SamplingModel::IndependentUniform) {
        const double u2 = bits_to_unit(splitmix64(state));
        d24 = 1.0 + (std::sqrt(5.0) - 1.0) * u1;
        d34 = 2.0 * u2;
      } else {
        const double eps = 2.0 * u1;
        d34 = eps;
        d24 = std::sqrt(1.0 + eps * eps);
      }
      UtopiaSample& sample = samples[idx];
      sample.d24 = d24;
      sample.d34 = d34;
      if (d24 <= 0.0 || d34 <= 0.0) {  // u = 0 draw in the coupled model
        sample.event = 3;
        continue;
      }
      EventResult outcome = classify_instance(d24, d34, config.tol);
      sample.event =
          outcome.kind == EventResult::Kind::Event ? outcome.event : 3;
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1 || n < 2) {
    run_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t begin = chunk * static_cast<std::uint64_t>(t);
      if (begin >= n) break;
      const std::uint64_t end = std::min(n, begin + chunk);
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& worker : pool) worker.join();
  }

  UtopiaReport report;
  report.analytic = analytic_probabilities();
  report.thresholds = utopia_thresholds();
  report.samples = n;
  report.seed = config.seed;
  report.model = config.model;
  for (const UtopiaSample& sample : samples) {
    switch (sample.event) {
      case 0: ++report.count0; break;
      case 1: ++report.count1; break;
      case 2: ++report.count2; break;
      default: ++report.degenerate; break;
    }
  }
  const std::uint64_t counted = report.count0 + report.count1 + report.count2;
  if (counted > 0) {
    report.f0 = static_cast<double>(report.count0) / static_cast<double>(counted);
    report.f1 = static_cast<double>(report.count1) / static_cast<double>(counted);
    report.f2 = 1.0 - report.f0 - report.f1;
  }
  if (out_samples) *out_samples = std::move(samples);
  return report;
}

}  // namespace ddgp
