#include "gapsense/iir.hpp"

#include <algorithm>
#include <cmath>

namespace gapsense {

namespace {

Detection make_detection(const std::string& method, const Sensitivity& sens) {
  Detection d;
  d.method = method;
  d.params = {{"c", sens.threshold()}, {"K", sens.weber()}};
  return d;
}

// Flags everything outside the sorted index block [lo, hi].
void flag_outside(Detection& d, const Sample& s, std::size_t lo, std::size_t hi) {
  d.normal_low = s[lo];
  d.normal_high = s[hi];
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k < lo || k > hi) {
      d.outlier_indices.push_back(k);
      d.outlier_values.push_back(s[k]);
    }
  }
}

IirRecord evaluate(std::size_t index, Side side, double value, double gap, double max_prev,
                   std::size_t n, double range) {
  IirRecord rec;
  rec.index = index;
  rec.side = side;
  rec.value = value;
  rec.gap = gap;
  rec.max_prev = max_prev;
  rec.er = expansion_ratio(gap, n, range);
  rec.ihr = inhibitory_rate(gap, max_prev);
  rec.iir = iir_closed_form(gap, max_prev, n, range);
  return rec;
}

}  // namespace

Sensitivity::Sensitivity() : Sensitivity(threshold_to_weber(kDefaultThreshold), kDefaultThreshold) {}

Sensitivity Sensitivity::from_threshold(double threshold_c) {
  return {threshold_to_weber(threshold_c), threshold_c};
}

Sensitivity Sensitivity::from_weber(double weber_k) {
  return {weber_k, weber_to_threshold(weber_k)};
}

double weber_to_threshold(double weber_k) {
  if (!(weber_k >= 0.0 && weber_k <= 1.0))
    throw DomainError("Weber constant must lie in [0, 1]");
  return 2.0 * (1.0 - weber_k) / (1.0 + weber_k);
}

double threshold_to_weber(double threshold_c) {
  if (!(threshold_c >= 0.0 && threshold_c <= 2.0))
    throw DomainError("IIR threshold must lie in [0, 2]");
  return (2.0 - threshold_c) / (2.0 + threshold_c);
}

double expansion_ratio(double gap, std::size_t n, double range) {
  if (!(range > 0.0)) throw DomainError("range must be positive");
  return static_cast<double>(n - 1) * gap / range;
}

std::optional<double> inhibitory_rate(double gap, double max_prev) {
  if (gap == max_prev || gap == 0.0) return std::nullopt;
  return gap / (gap - max_prev);
}

double iir_closed_form(double gap, double max_prev, std::size_t n, double range) {
  if (n < 2) throw SizeError("IIR needs at least two values");
  if (!(range > 0.0)) throw DomainError("range must be positive");
  return static_cast<double>(n - 1) * (gap - max_prev) / range;
}

Detection detect_high_side(const Sample& sample, const Sensitivity& sens) {
  auto d = make_detection("iir-high", sens);
  const auto n = sample.size();
  d.normal_low = sample.min();
  d.normal_high = sample.max();
  if (n < 3 || !(sample.range() > 0.0)) {
    d.degenerate = true;
    return d;
  }

  const double range = sample.range();
  double max_prev = sample[1] - sample[0];
  for (std::size_t i = 2; i < n; ++i) {
    const double gap = sample[i] - sample[i - 1];
    auto rec = evaluate(i, Side::High, sample[i], gap, max_prev, n, range);
    const bool border = rec.iir >= sens.threshold() && 2 * i > n;
    rec.accepted = !border;
    d.trace.push_back(rec);
    if (border) {
      d.border = rec;
      // Values tied with the border value go with the outliers.
      std::size_t start = i;
      while (start > 0 && sample[start - 1] == sample[i]) --start;
      if (start == 0) return d;
      flag_outside(d, sample, 0, start - 1);
      return d;
    }
    max_prev = std::max(max_prev, gap);
  }
  return d;
}

Detection detect_two_sided(const Sample& sample, const Sensitivity& sens) {
  auto d = make_detection("iir", sens);
  const auto n = sample.size();
  d.normal_low = sample.min();
  d.normal_high = sample.max();
  if (n < 3 || !(sample.range() > 0.0)) {
    d.degenerate = true;
    return d;
  }

  const double range = sample.range();
  // Accepted block [lo, hi] in 0-based sorted order, seeded at the median(s).
  std::size_t lo = (n - 1) / 2;
  std::size_t hi = n / 2;
  const std::size_t majority = n / 2 + 1;

  // Smaller frontier gap first; equal gaps expand to the right.
  auto next_side = [&]() {
    if (lo == 0) return Side::High;
    if (hi == n - 1) return Side::Low;
    const double left = sample[lo] - sample[lo - 1];
    const double right = sample[hi + 1] - sample[hi];
    return right > left ? Side::Low : Side::High;
  };

  while (hi - lo + 1 < majority) {
    if (next_side() == Side::Low) --lo;
    else ++hi;
  }

  double max_gap = 0.0;
  for (std::size_t k = lo; k < hi; ++k) max_gap = std::max(max_gap, sample[k + 1] - sample[k]);

  while (lo > 0 || hi < n - 1) {
    const Side side = next_side();
    const std::size_t cand = side == Side::Low ? lo - 1 : hi + 1;
    const double gap = side == Side::Low ? sample[lo] - sample[cand] : sample[cand] - sample[hi];
    auto rec = evaluate(cand, side, sample[cand], gap, max_gap, n, range);
    rec.accepted = rec.iir < sens.threshold();
    d.trace.push_back(rec);
    if (!rec.accepted) {
      d.border = rec;
      while (lo > 0 && sample[lo - 1] == sample[lo]) --lo;
      while (hi < n - 1 && sample[hi + 1] == sample[hi]) ++hi;
      flag_outside(d, sample, lo, hi);
      return d;
    }
    if (side == Side::Low) lo = cand;
    else hi = cand;
    max_gap = std::max(max_gap, gap);
  }
  return d;
}

}  // namespace gapsense
