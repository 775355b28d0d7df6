#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gapsense/sample.hpp"

namespace gapsense {

enum class Side { Low, High };

/// One candidate evaluated by an expanding scan.
///
/// `index` is the sorted-order position of the candidate value, i.e. the
/// point that would be absorbed if the gap is accepted. `ihr` is empty when
/// the gap equals `max_prev` (or is zero), where the ratio form is singular.
struct IirRecord {
  std::size_t index = 0;
  Side side = Side::High;
  double value = 0.0;
  double gap = 0.0;
  double max_prev = 0.0;
  double er = 0.0;
  std::optional<double> ihr;
  double iir = 0.0;
  bool accepted = false;

  friend bool operator==(const IirRecord&, const IirRecord&) = default;
};

/// Weber constant K and the IIR threshold c = 2(1 - K)/(1 + K), kept in step.
class Sensitivity {
 public:
  /// c = 1.81.
  Sensitivity();

  static Sensitivity from_threshold(double threshold_c);
  static Sensitivity from_weber(double weber_k);

  [[nodiscard]] double threshold() const noexcept { return threshold_c_; }
  [[nodiscard]] double weber() const noexcept { return weber_k_; }

  friend bool operator==(const Sensitivity&, const Sensitivity&) = default;

 private:
  Sensitivity(double k, double c) : weber_k_(k), threshold_c_(c) {}
  double weber_k_;
  double threshold_c_;
};

inline constexpr double kDefaultThreshold = 1.81;

/// Output of any detector in the toolkit.
///
/// Outliers are exactly the sample values outside [normal_low, normal_high].
/// Baseline detectors leave `trace` empty.
struct Detection {
  std::string method;
  std::map<std::string, double> params;
  std::vector<double> outlier_values;
  std::vector<std::size_t> outlier_indices;
  double normal_low = 0.0;
  double normal_high = 0.0;
  std::vector<IirRecord> trace;
  std::optional<IirRecord> border;
  bool degenerate = false;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// (n - 1) * (gap - max_prev) / range, the integrated inconsistent rate.
/// Equal to Er / Ihr wherever the latter is defined. Throws DomainError for
/// range <= 0 and SizeError for n < 2.
double iir_closed_form(double gap, double max_prev, std::size_t n, double range);

/// Expansion ratio (n - 1) * gap / range.
double expansion_ratio(double gap, std::size_t n, double range);

/// Inhibitory rate gap / (gap - max_prev); empty when undefined.
std::optional<double> inhibitory_rate(double gap, double max_prev);

/// One-sided scan from the minimum: the first gap past the midpoint whose IIR
/// reaches the threshold marks the start of the high-side outliers.
Detection detect_high_side(const Sample& sample, const Sensitivity& sens = {});

/// Median-expanding scan: grow the central majority by always taking the
/// smaller frontier gap, then keep absorbing until a gap's IIR reaches the
/// threshold. Whatever lies outside the accepted block is flagged.
Detection detect_two_sided(const Sample& sample, const Sensitivity& sens = {});

/// c = 2(1 - K)/(1 + K). DomainError unless 0 <= K <= 1.
double weber_to_threshold(double weber_k);

/// K = (2 - c)/(2 + c). DomainError unless 0 <= c <= 2.
double threshold_to_weber(double threshold_c);

}  // namespace gapsense
