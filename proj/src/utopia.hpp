#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ddgp {

// Closed forms for the three event probabilities of the five-vertex family
// with d24 uniform on [1, sqrt(5)] and d34 uniform on [0, 2]:
//   P2 = (sqrt(5-2*sqrt(3)) + sqrt(3) - 2) / (sqrt(5) + 1)
//   P1 = (sqrt(5) - sqrt(5-2*sqrt(3)) - sqrt(3) + 1) / (sqrt(5) + 1)
//   P0 = 2 / (sqrt(5) + 1)
// The three sum to one exactly. Note: under either sampling model below the
// empirical frequencies need not match P1 and P2; only their positivity is a
// model-independent statement.
struct AnalyticProbabilities {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

AnalyticProbabilities analytic_probabilities();

// epsilon_star = sqrt(3) - 1 is the coupling parameter at which the second
// position of vertex 4 stops extending; d24_star = sqrt(5 - 2*sqrt(3)) is the
// matching point on the coupled curve d24 = sqrt(1 + eps^2).
struct UtopiaThresholds {
  double epsilon_star = 0.0;
  double d24_star = 0.0;
};

UtopiaThresholds utopia_thresholds();

// Number of positions of vertex 4 that extend to a full realization of the
// five-vertex family instance (d12 = d15 = d23 = d45 = 1, d13 = sqrt(2)),
// realized from the fixed frame x1 = (1,0), x2 = (2,0), x3 = (2,1). Tangency
// or a degenerate base is reported as Exceptional, never folded into {0,1,2}.
struct EventResult {
  enum class Kind { Event, Exceptional };
  Kind kind = Kind::Event;
  int event = 0;  // 0, 1 or 2
  std::string reason;
};

EventResult classify_instance(double d24, double d34, double tol = 1e-9);

enum class SamplingModel { IndependentUniform, CoupledEpsilon };

struct UtopiaConfig {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  SamplingModel model = SamplingModel::IndependentUniform;
  double tol = 1e-9;
  int threads = 1;
};

struct UtopiaSample {
  double d24 = 0.0;
  double d34 = 0.0;
  int event = 0;  // 0, 1, 2, or 3 for exceptional samples
};

struct UtopiaReport {
  AnalyticProbabilities analytic;
  UtopiaThresholds thresholds;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  SamplingModel model = SamplingModel::IndependentUniform;
  std::uint64_t count0 = 0;
  std::uint64_t count1 = 0;
  std::uint64_t count2 = 0;
  std::uint64_t degenerate = 0;
  // Frequencies over the non-exceptional samples; f2 is defined as
  // 1 - f0 - f1 so the three always sum to one exactly.
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

// IndependentUniform draws d24 ~ U[1, sqrt(5)] and d34 ~ U[0, 2]
// independently; CoupledEpsilon draws eps ~ U[0, 2] and sets d34 = eps,
// d24 = sqrt(1 + eps^2). Each sample uses a substream derived from
// (seed, index), so results are independent of the thread count. When
// out_samples is nonnull it receives one record per sample in index order.
UtopiaReport monte_carlo(const UtopiaConfig& config,
                         std::vector<UtopiaSample>* out_samples = nullptr);

}  // namespace ddgp
