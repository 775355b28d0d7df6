#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapsense {

/// Too few observations for the requested operation.
struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Bad input data (parse failures, non-finite values, unknown dataset names).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A validated univariate series, stored in ascending order.
///
/// Construction rejects empty input and non-finite values, then sorts.
/// The label records where the data came from (dataset name or file path).
class Sample {
 public:
  explicit Sample(std::vector<double> values, std::string label = {});

  /// Wraps values already known to be finite and ascending. Checked in debug builds.
  static Sample from_sorted(std::vector<double> values, std::string label = {});

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] double min() const noexcept { return values_.front(); }
  [[nodiscard]] double max() const noexcept { return values_.back(); }
  [[nodiscard]] double range() const noexcept { return values_.back() - values_.front(); }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }

 private:
  Sample() = default;
  std::vector<double> values_;
  std::string label_;
};

/// Consecutive gaps of a sorted sample.
struct GapSeries {
  std::vector<double> gaps;        // gaps[i-1] = v[i] - v[i-1], i = 1..n-1
  double range = 0.0;              // v[n-1] - v[0]
  std::vector<double> normalized;  // gaps / range; empty when degenerate
  bool degenerate = false;         // range == 0
};

/// Raw and range-normalized gaps. Throws SizeError when n < 2.
GapSeries gap_series(const Sample& sample);

}  // namespace gapsense
