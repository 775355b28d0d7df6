#include "gapsense/sample.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace gapsense {

Sample::Sample(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) throw SizeError("sample must contain at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw DataError("non-finite value at position " + std::to_string(i));
  }
  std::sort(values_.begin(), values_.end());
}

Sample Sample::from_sorted(std::vector<double> values, std::string label) {
  if (values.empty()) throw SizeError("sample must contain at least one value");
  assert(std::is_sorted(values.begin(), values.end()));
  Sample s;
  s.values_ = std::move(values);
  s.label_ = std::move(label);
  return s;
}

GapSeries gap_series(const Sample& sample) {
  const auto n = sample.size();
  if (n < 2) throw SizeError("gap series needs at least two values");

  GapSeries out;
  out.gaps.resize(n - 1);
  for (std::size_t i = 1; i < n; ++i) out.gaps[i - 1] = sample[i] - sample[i - 1];
  out.range = sample.range();
  out.degenerate = !(out.range > 0.0);
  if (!out.degenerate) {
    out.normalized.resize(out.gaps.size());
    std::transform(out.gaps.begin(), out.gaps.end(), out.normalized.begin(),
                   [r = out.range](double g) { return g / r; });
  }
  return out;
}

}  // namespace gapsense
