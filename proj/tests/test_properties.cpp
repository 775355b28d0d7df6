#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "gapsense/baseline.hpp"
#include "gapsense/iir.hpp"
#include "oracles.hpp"

using namespace gapsense;
using namespace gapsense::testing;
using doctest::Approx;

namespace {

using Detector = std::function<Detection(const Sample&)>;

const std::vector<std::pair<const char*, Detector>>& detectors() {
  static const std::vector<std::pair<const char*, Detector>> all{
      {"iir", [](const Sample& s) { return detect_two_sided(s); }},
      {"mean_sigma", [](const Sample& s) { return mean_sigma_detect(s, 2.0); }},
      {"boxplot", [](const Sample& s) { return boxplot_detect(s); }},
      {"mad", [](const Sample& s) { return mad_detect(s); }},
      {"chauvenet", [](const Sample& s) { return chauvenet_detect(s); }},
  };
  return all;
}

bool subset(const V& a, const V& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("normalized gaps sum to one and raw gaps to the range") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Sample s(heavy_tailed(gen, 2 + trial % 40));
    const auto gs = gap_series(s);
    CHECK(std::accumulate(gs.gaps.begin(), gs.gaps.end(), 0.0) == Approx(s.range()).epsilon(1e-12));
    CHECK(std::accumulate(gs.normalized.begin(), gs.normalized.end(), 0.0) == Approx(1.0).epsilon(1e-12));
    for (double g : gs.gaps) CHECK(g >= 0.0);
  }
}

TEST_CASE("trace records satisfy IIR = Er / Ihr wherever Ihr is defined") {
  std::mt19937_64 gen(2);
  std::size_t checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Sample s(heavy_tailed(gen, 5 + trial % 60));
    for (const auto& d : {detect_two_sided(s), detect_high_side(s)}) {
      for (const auto& r : d.trace) {
        CHECK(r.er == Approx(expansion_ratio(r.gap, s.size(), s.range())).epsilon(1e-12));
        if (!r.ihr) continue;
        ++checked;
        const double ratio = r.er / *r.ihr;
        CHECK(std::abs(r.iir - ratio) <= 1e-9 * std::max(1.0, std::abs(ratio)));
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("threshold and Weber constant are inverse maps") {
  for (int i = 0; i <= 1000; ++i) {
    const double K = i / 1000.0;
    const double c = weber_to_threshold(K);
    CHECK(c >= 0.0);
    CHECK(c <= 2.0);
    CHECK(threshold_to_weber(c) == Approx(K).epsilon(1e-12).scale(1.0));
    const double c2 = 2.0 * i / 1000.0;
    CHECK(weber_to_threshold(threshold_to_weber(c2)) == Approx(c2).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("IIR never flags a majority") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + trial % 50;
    const Sample s(trial % 2 ? heavy_tailed(gen, n) : small_integers(gen, n));
    for (double c : {0.0, 0.5, 1.81}) {
      const auto sens = Sensitivity::from_threshold(c);
      CHECK(detect_two_sided(s, sens).outlier_values.size() <= n - (n / 2 + 1));
      CHECK(2 * detect_high_side(s, sens).outlier_values.size() < n);
    }
  }
}

TEST_CASE("two-sided detection matches a brute-force oracle on small samples") {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<std::size_t> size(3, 12);
  std::uniform_real_distribution<double> threshold(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = size(gen);
    V v = trial % 3 ? heavy_tailed(gen, n) : small_integers(gen, n);
    const double c = trial % 2 ? threshold(gen) : kDefaultThreshold;
    const Sample s(v);
    std::sort(v.begin(), v.end());
    CAPTURE(trial);
    CHECK(detect_two_sided(s, Sensitivity::from_threshold(c)).outlier_indices == two_sided_oracle(v, c));
  }
}

TEST_CASE("positive affine maps preserve flagged indices") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> shift(-1000, 1000);
  std::uniform_int_distribution<int> power(-4, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const V v = small_integers(gen, 4 + trial % 30);
    const double a = std::ldexp(1.0, power(gen));
    const double b = shift(gen);
    V w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return a * x + b; });
    for (const auto& [name, detect] : detectors()) {
      CAPTURE(name);
      CHECK(detect(Sample(v)).outlier_indices == detect(Sample(w)).outlier_indices);
    }
    CHECK(detect_high_side(Sample(v)).outlier_indices == detect_high_side(Sample(w)).outlier_indices);
  }
}

TEST_CASE("negative scaling mirrors the flagged indices") {
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> power(-4, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const V v = heavy_tailed(gen, 4 + trial % 30);
    const double a = -std::ldexp(1.0, power(gen));
    V w(v.size());
    std::transform(v.begin(), v.end(), w.begin(), [&](double x) { return a * x; });
    const auto n = v.size();
    for (const auto& [name, detect] : detectors()) {
      CAPTURE(name);
      Ids mirrored;
      for (auto i : detect(Sample(w)).outlier_indices) mirrored.push_back(n - 1 - i);
      std::sort(mirrored.begin(), mirrored.end());
      CHECK(detect(Sample(v)).outlier_indices == mirrored);
    }
  }
}

TEST_CASE("detectors are deterministic") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const V v = heavy_tailed(gen, 10 + trial);
    V shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    for (const auto& [name, detect] : detectors()) {
      CAPTURE(name);
      CHECK(detect(Sample(v)) == detect(Sample(shuffled)));
    }
  }
}

TEST_CASE("larger multipliers and thresholds never flag more") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Sample s(heavy_tailed(gen, 5 + trial % 50));
    V prev_ms, prev_mad, prev_box, prev_iir;
    bool first = true;
    for (double k : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
      const auto ms = mean_sigma_detect(s, k).outlier_values;
      const auto mad = mad_detect(s, k).outlier_values;
      const auto box = boxplot_detect(s, k).outlier_values;
      const auto iir = detect_two_sided(s, Sensitivity::from_threshold(k / 2.0)).outlier_values;
      if (!first) {
        CHECK(subset(ms, prev_ms));
        CHECK(subset(mad, prev_mad));
        CHECK(subset(box, prev_box));
        CHECK(subset(iir, prev_iir));
      }
      prev_ms = ms, prev_mad = mad, prev_box = box, prev_iir = iir;
      first = false;
    }
  }
}
