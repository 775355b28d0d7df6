#pragma once

#include <string_view>
#include <utility>

#include "gapsense/iir.hpp"
#include "gapsense/sample.hpp"

namespace gapsense {

enum class BaselineMethod { MeanSigma, Boxplot, Mad, Chauvenet };

/// Parameters for the classical detectors.
struct BaselineSpec {
  BaselineMethod method = BaselineMethod::Mad;
  double k = 3.0;
  double whisker = 1.5;
  double b = 1.4826;  // MAD consistency constant for the normal distribution

  /// Throws DomainError unless k, whisker and b are positive.
  void validate() const;
};

std::string_view to_string(BaselineMethod m);

/// Flags |x - mean| > k * sd (sd with n - 1 divisor).
Detection mean_sigma_detect(const Sample& sample, double k = 3.0);

/// Tukey hinges: medians of the lower and upper halves, each half including
/// the middle value when n is odd.
std::pair<double, double> tukey_hinges(const Sample& sample);

/// Flags values outside [q1 - whisker * IQR, q3 + whisker * IQR].
Detection boxplot_detect(const Sample& sample, double whisker = 1.5);

/// Flags |x - median| > k * MADn with MADn = b * median |x - median|.
/// When MADn is zero every value different from the median is flagged.
Detection mad_detect(const Sample& sample, double k = 3.0, double b = 1.4826);

/// Chauvenet's criterion, single pass: reject x when n * P(|Z| > z_x) < 0.5.
Detection chauvenet_detect(const Sample& sample);

/// P(|Z| > z) for a standard normal Z. DomainError for z < 0.
double normal_tail(double z);

/// Dispatch on spec.method.
Detection run_baseline(const Sample& sample, const BaselineSpec& spec);

// Small helpers shared with the simulation code.
double median_of_sorted(std::span<const double> sorted);
double mean_of(std::span<const double> values);
double sample_sd(std::span<const double> values, double mean);

}  // namespace gapsense
