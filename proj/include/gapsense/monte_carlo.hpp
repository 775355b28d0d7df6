#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gapsense/baseline.hpp"
#include "gapsense/iir.hpp"

namespace gapsense {

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
  friend bool operator==(const Normal&, const Normal&) = default;
};

/// A contaminated-normal experiment: round(n * contamination) draws from the
/// contaminant G, the rest from the target F.
struct SimScenario {
  std::size_t n = 500;
  double contamination = 0.0;
  Normal target{0.0, 1.0};
  Normal contaminant{10.0, 1.0};
  std::size_t reps = 1000;
  std::uint64_t master_seed = 1;

  /// Throws DomainError on contamination outside [0, 0.5), n < 2 or reps < 1.
  void validate() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the independent substream for (master_seed, stream, rep).
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t rep);

/// mt19937_64 with a polar-method normal sampler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::size_t contaminant_count(std::size_t n, double contamination);

struct LabeledDraws {
  std::vector<double> values;
  std::vector<bool> contaminant;
};

/// Draws for replication `rep`; contaminants come first in the returned order.
LabeledDraws contaminated_draws(const SimScenario& scn, std::size_t rep, std::uint64_t stream = 0);

/// Values only.
std::vector<double> contaminated_sample(const SimScenario& scn, std::size_t rep,
                                        std::uint64_t stream = 0);

enum class SimMethod { Iir, IirHigh, Boxplot, Mad, MeanSigma, Chauvenet };

std::string to_string(SimMethod m);
SimMethod parse_sim_method(const std::string& name);

struct MethodConfig {
  Sensitivity sens{};
  BaselineSpec baseline{};
};

Detection run_method(SimMethod m, const Sample& sample, const MethodConfig& cfg);

/// Average over replications of one method at one x.
struct CurvePoint {
  double x = 0.0;  // contamination percent or sample size
  std::string method;
  double detected_pct = 0.0;  // mean of 100 * |flagged| / n
  double stderr_pct = 0.0;    // standard error of that mean
  double recall_pct = 0.0;    // mean share of contaminants flagged (0 when none)

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// One row per (fraction, method), fractions in the given order. Each fraction
/// uses its own substream family, so results do not depend on the thread count.
std::vector<CurvePoint> breakdown_curve(const SimScenario& base, const std::vector<double>& fractions,
                                        const std::vector<SimMethod>& methods,
                                        const MethodConfig& cfg = {}, unsigned threads = 0);

/// Uncontaminated N(0, 1) samples, one row per (size, method).
std::vector<CurvePoint> pure_normal_curve(const std::vector<std::size_t>& sizes,
                                          const std::vector<SimMethod>& methods, std::size_t reps,
                                          std::uint64_t master_seed, const MethodConfig& cfg = {},
                                          unsigned threads = 0);

/// 0, 0.01, ..., 0.49.
std::vector<double> default_fractions();
/// 10, 50, 100, 500, 1000, 5000, 10000.
std::vector<std::size_t> default_sizes();

}  // namespace gapsense
