#include "gapsense/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gapsense {

namespace {

void require_size(const Sample& s, std::size_t n, const char* what) {
  if (s.size() < n)
    throw SizeError(std::string(what) + " needs at least " + std::to_string(n) + " values");
}

// Flags every value strictly outside [lo, hi].
Detection fence_detection(std::string method, const Sample& s, double lo, double hi) {
  Detection d;
  d.method = std::move(method);
  d.normal_low = lo;
  d.normal_high = hi;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < lo || s[i] > hi) {
      d.outlier_indices.push_back(i);
      d.outlier_values.push_back(s[i]);
    }
  }
  return d;
}

}  // namespace

void BaselineSpec::validate() const {
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (!(whisker > 0.0)) throw DomainError("whisker must be positive");
  if (!(b > 0.0)) throw DomainError("b must be positive");
}

std::string_view to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::MeanSigma: return "mean_sigma";
    case BaselineMethod::Boxplot: return "boxplot";
    case BaselineMethod::Mad: return "mad";
    case BaselineMethod::Chauvenet: return "chauvenet";
  }
  return "unknown";
}

double median_of_sorted(std::span<const double> sorted) {
  const auto n = sorted.size();
  if (n == 0) throw SizeError("median of an empty range");
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double mean_of(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

Detection mean_sigma_detect(const Sample& sample, double k) {
  require_size(sample, 2, "mean_sigma");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double mean = mean_of(sample.values());
  const double sd = sample_sd(sample.values(), mean);
  auto d = fence_detection("mean_sigma", sample, mean - k * sd, mean + k * sd);
  d.params = {{"k", k}};
  return d;
}

std::pair<double, double> tukey_hinges(const Sample& sample) {
  require_size(sample, 2, "tukey_hinges");
  const auto v = sample.values();
  const auto half = (v.size() + 1) / 2;
  return {median_of_sorted(v.first(half)), median_of_sorted(v.last(half))};
}

Detection boxplot_detect(const Sample& sample, double whisker) {
  require_size(sample, 2, "boxplot");
  if (!(whisker > 0.0)) throw DomainError("whisker must be positive");
  const auto [q1, q3] = tukey_hinges(sample);
  const double iqr = q3 - q1;
  auto d = fence_detection("boxplot", sample, q1 - whisker * iqr, q3 + whisker * iqr);
  d.params = {{"whisker", whisker}};
  return d;
}

Detection mad_detect(const Sample& sample, double k, double b) {
  require_size(sample, 2, "mad");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  if (!(b > 0.0)) throw DomainError("b must be positive");
  const auto v = sample.values();
  const double med = median_of_sorted(v);
  std::vector<double> dev(v.size());
  std::transform(v.begin(), v.end(), dev.begin(), [med](double x) { return std::abs(x - med); });
  std::sort(dev.begin(), dev.end());
  const double madn = b * median_of_sorted(dev);
  auto d = fence_detection("mad", sample, med - k * madn, med + k * madn);
  d.params = {{"k", k}, {"b", b}};
  return d;
}

double normal_tail(double z) {
  if (!(z >= 0.0)) throw DomainError("normal_tail expects z >= 0");
  return std::erfc(z / std::sqrt(2.0));
}

Detection chauvenet_detect(const Sample& sample) {
  require_size(sample, 3, "chauvenet");
  const auto v = sample.values();
  const auto n = static_cast<double>(v.size());
  const double mean = mean_of(v);
  const double sd = sample_sd(v, mean);

  Detection d;
  d.method = "chauvenet";
  d.normal_low = sample.min();
  d.normal_high = sample.max();
  if (!(sd > 0.0)) return d;

  for (std::size_t i = 0; i < v.size(); ++i) {
    if (n * normal_tail(std::abs(v[i] - mean) / sd) < 0.5) {
      d.outlier_indices.push_back(i);
      d.outlier_values.push_back(v[i]);
    }
  }

  // Critical z where the expected count reaches 0.5; n * tail is decreasing in z.
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (n * normal_tail(mid) < 0.5) hi = mid;
    else lo = mid;
  }
  d.normal_low = mean - hi * sd;
  d.normal_high = mean + hi * sd;
  d.params = {{"z_crit", hi}};
  return d;
}

Detection run_baseline(const Sample& sample, const BaselineSpec& spec) {
  spec.validate();
  switch (spec.method) {
    case BaselineMethod::MeanSigma: return mean_sigma_detect(sample, spec.k);
    case BaselineMethod::Boxplot: return boxplot_detect(sample, spec.whisker);
    case BaselineMethod::Mad: return mad_detect(sample, spec.k, spec.b);
    case BaselineMethod::Chauvenet: return chauvenet_detect(sample);
  }
  throw DomainError("unknown baseline method");
}

}  // namespace gapsense
