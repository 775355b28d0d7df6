#include <doctest.h>

#include <cmath>

#include "gapsense/monte_carlo.hpp"

using namespace gapsense;
using doctest::Approx;

TEST_CASE("contaminant counts are exact, rounding half up") {
  CHECK(contaminant_count(500, 0.0) == 0);
  CHECK(contaminant_count(500, 0.10) == 50);
  CHECK(contaminant_count(500, 0.29) == 145);
  CHECK(contaminant_count(500, 0.49) == 245);
  CHECK(contaminant_count(10, 0.25) == 3);
  CHECK(contaminant_count(10, 0.05) == 1);
}

TEST_CASE("contaminated draws") {
  SimScenario scn;
  scn.n = 500;
  scn.contamination = 0.10;
  const auto d = contaminated_draws(scn, 3);
  std::size_t bad = 0;
  for (bool b : d.contaminant) bad += b;
  CHECK(bad == 50);
  CHECK(d.values.size() == 500);

  scn.contamination = 0.0;
  const auto clean = contaminated_draws(scn, 0);
  for (bool b : clean.contaminant) CHECK_FALSE(b);
}

TEST_CASE("substreams are deterministic and distinct") {
  SimScenario scn;
  scn.n = 50;
  scn.contamination = 0.2;
  CHECK(contaminated_sample(scn, 7) == contaminated_sample(scn, 7));
  CHECK(contaminated_sample(scn, 7) != contaminated_sample(scn, 8));
  CHECK(contaminated_sample(scn, 7, 0) != contaminated_sample(scn, 7, 1));
  auto other = scn;
  other.master_seed = 2;
  CHECK(contaminated_sample(scn, 7) != contaminated_sample(other, 7));
}

TEST_CASE("scenario validation") {
  SimScenario scn;
  scn.contamination = 0.5;
  CHECK_THROWS_AS(scn.validate(), DomainError);
  scn.contamination = -0.1;
  CHECK_THROWS_AS(scn.validate(), DomainError);
  scn.contamination = 0.1;
  scn.reps = 0;
  CHECK_THROWS_AS(scn.validate(), DomainError);
  scn.reps = 1;
  scn.n = 1;
  CHECK_THROWS_AS(scn.validate(), DomainError);
}

TEST_CASE("polar sampler: 1e5 standard normal draws") {
  Rng rng(substream_seed(99, 0, 0));
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean) < 3.0 / std::sqrt(n));
  // Standard error of the sd is about 1 / sqrt(2n).
  CHECK(std::abs(sd - 1.0) < 3.0 / std::sqrt(2.0 * n));
}

TEST_CASE("uniform stays in [0, 1)") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("breakdown curve: shape and bounds") {
  SimScenario base;
  base.n = 200;
  base.reps = 20;
  base.contaminant = {10.0, 1.0};
  const std::vector<double> fr{0.0, 0.1, 0.3};
  const std::vector<SimMethod> methods{SimMethod::Iir, SimMethod::Boxplot, SimMethod::Mad};
  const auto curve = breakdown_curve(base, fr, methods);
  REQUIRE(curve.size() == 9);
  CHECK(curve[0].x == 0.0);
  CHECK(curve[3].x == 10.0);
  CHECK(curve[3].method == "iir");
  CHECK(curve[4].method == "boxplot");
  for (const auto& p : curve) {
    CHECK(p.detected_pct >= 0.0);
    CHECK(p.detected_pct <= 100.0);
    CHECK(p.stderr_pct >= 0.0);
  }
  // Two-sided IIR cannot flag more than n - (n/2 + 1) points.
  for (const auto& p : curve)
    if (p.method == "iir") CHECK(p.detected_pct <= 100.0 * (200 - 101) / 200.0);
  // At 10% all methods find roughly the contaminants.
  for (int m = 3; m < 6; ++m) CHECK(curve[m].recall_pct > 95.0);
}

TEST_CASE("breakdown curve is identical across thread counts") {
  SimScenario base;
  base.n = 100;
  base.reps = 16;
  base.master_seed = 1234;
  const std::vector<double> fr{0.05, 0.25, 0.45};
  const std::vector<SimMethod> methods{SimMethod::Iir, SimMethod::Mad};
  const auto one = breakdown_curve(base, fr, methods, {}, 1);
  const auto four = breakdown_curve(base, fr, methods, {}, 4);
  CHECK(one == four);
}

TEST_CASE("pure normal curve") {
  const auto curve = pure_normal_curve({10, 100}, {SimMethod::Boxplot, SimMethod::Iir}, 20, 3);
  REQUIRE(curve.size() == 4);
  CHECK(curve[0].x == 10.0);
  CHECK(curve[2].x == 100.0);
  for (const auto& p : curve) CHECK(p.recall_pct == 0.0);
}

TEST_CASE("method names round-trip") {
  for (auto m : {SimMethod::Iir, SimMethod::IirHigh, SimMethod::Boxplot, SimMethod::Mad,
                 SimMethod::MeanSigma, SimMethod::Chauvenet})
    CHECK(parse_sim_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_sim_method("lts"), DomainError);
}
