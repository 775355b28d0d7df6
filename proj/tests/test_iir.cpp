#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gapsense/data_io.hpp"
#include "gapsense/iir.hpp"

using namespace gapsense;
using doctest::Approx;

namespace {

const IirRecord* record_for_value(const Detection& d, double value) {
  for (const auto& r : d.trace)
    if (std::abs(r.value - value) < 1e-12) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("gap_series on BARNETT") {
  const auto gs = gap_series(builtin_sample("barnett"));
  CHECK(gs.gaps == std::vector<double>{1, 3, 1, 2, 939, 2});
  CHECK(gs.range == 948.0);
  CHECK_FALSE(gs.degenerate);
  CHECK(std::accumulate(gs.normalized.begin(), gs.normalized.end(), 0.0) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gap_series edge cases") {
  const auto two = gap_series(Sample({9, 5}));
  CHECK(two.gaps == std::vector<double>{4});
  CHECK(two.range == 4.0);
  CHECK(two.normalized == std::vector<double>{1.0});

  const auto flat = gap_series(Sample({7, 7, 7}));
  CHECK(flat.degenerate);
  CHECK(flat.normalized.empty());

  CHECK_THROWS_AS(gap_series(Sample({1.0})), SizeError);
}

TEST_CASE("Sample validation") {
  CHECK_THROWS_AS(Sample(std::vector<double>{}), SizeError);
  CHECK_THROWS_AS(Sample({1.0, NAN}), DataError);
  CHECK_THROWS_AS(Sample({1.0, INFINITY}), DataError);
  const Sample s({3, 1, 2}, "x");
  CHECK(s[0] == 1);
  CHECK(s[2] == 3);
  CHECK(s.label() == "x");
}

TEST_CASE("iir_closed_form") {
  CHECK(iir_closed_form(939, 3, 7, 948) == Approx(6.0 * 936.0 / 948.0));
  CHECK(iir_closed_form(939, 3, 7, 948) == Approx(5.9241).epsilon(1e-4));
  CHECK(iir_closed_form(0.7, 0.7, 12, 3.0) == 0.0);
  CHECK(iir_closed_form(0.38, 0.19, 15, 2.41) == Approx(1.10373).epsilon(1e-5));
  CHECK(iir_closed_form(1, 2, 5, 10) < 0.0);
  CHECK_THROWS_AS(iir_closed_form(1, 0, 5, 0), DomainError);
  CHECK_THROWS_AS(iir_closed_form(1, 0, 5, -1), DomainError);
}

TEST_CASE("ratio form is undefined exactly at the singularity") {
  CHECK_FALSE(inhibitory_rate(0.5, 0.5).has_value());
  CHECK_FALSE(inhibitory_rate(0.0, 0.3).has_value());
  CHECK(*inhibitory_rate(3.0, 1.0) == Approx(1.5));
  CHECK(expansion_ratio(2.0, 5, 8.0) == Approx(1.0));
}

TEST_CASE("detect_high_side: BARNETT flags 949 and 951") {
  const auto d = detect_high_side(builtin_sample("barnett"));
  CHECK(d.outlier_values == std::vector<double>{949, 951});
  CHECK(d.outlier_indices == std::vector<std::size_t>{5, 6});
  REQUIRE(d.border);
  CHECK(d.border->index == 5);
  CHECK(d.border->iir == Approx(5.924050633));
  CHECK(d.normal_low == 3);
  CHECK(d.normal_high == 10);
}

TEST_CASE("detect_high_side: GRUBBS1 flags 596") {
  const auto d = detect_high_side(builtin_sample("grubbs1"));
  CHECK(d.outlier_values == std::vector<double>{596});
  REQUIRE(d.border);
  CHECK(d.border->iir == Approx(9.0 * (12.0 - 6.0) / 28.0));
  // 578 sits past the midpoint with IIR 9 * 4 / 28 = 1.29, below 1.81.
  const auto* r578 = record_for_value(d, 578);
  REQUIRE(r578);
  CHECK(r578->accepted);
  CHECK(r578->iir == Approx(9.0 * 4.0 / 28.0));
}

TEST_CASE("detect_high_side: uniform spacing flags nothing") {
  const auto d = detect_high_side(Sample({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  CHECK(d.outlier_values.empty());
  CHECK_FALSE(d.border);
  for (const auto& r : d.trace) CHECK(r.iir <= 0.0);
}

TEST_CASE("detect_high_side: a large early gap cannot trigger before the midpoint") {
  // The 100-gap is at index 1 of 6; nothing after it is larger, so no border.
  const auto d = detect_high_side(Sample({0, 100, 101, 102, 103, 104}));
  CHECK(d.outlier_values.empty());
}

TEST_CASE("detect_high_side degenerate inputs") {
  CHECK(detect_high_side(Sample({1, 2})).degenerate);
  CHECK(detect_high_side(Sample({4, 4, 4, 4})).degenerate);
  CHECK(detect_high_side(Sample({4, 4, 4, 4})).outlier_values.empty());
}

TEST_CASE("detect_two_sided: CUSHNY") {
  const auto d = detect_two_sided(builtin_sample("cushny"));
  CHECK(d.outlier_values == std::vector<double>{4.6});
  REQUIRE(d.border);
  CHECK(d.border->side == Side::High);
  CHECK(d.border->gap == Approx(2.2));
  CHECK(d.border->max_prev == Approx(0.8));
  CHECK(d.border->iir == Approx(2.739130435));
  CHECK(d.normal_low == 0.0);
  CHECK(d.normal_high == 2.4);
}

TEST_CASE("detect_two_sided: GRUBBS3 flags the two low values") {
  const auto d = detect_two_sided(builtin_sample("grubbs3"));
  CHECK(d.outlier_values == std::vector<double>{2.02, 2.22});
  REQUIRE(d.border);
  CHECK(d.border->side == Side::Low);
  CHECK(d.border->iir == Approx(9.0 * (0.82 - 0.36) / 2.11));
}

TEST_CASE("detect_two_sided: Venus trace") {
  const auto venus = builtin_sample("venus");
  const auto d = detect_two_sided(venus);
  CHECK(d.outlier_values == std::vector<double>{-1.40});

  const auto* r039 = record_for_value(d, 0.39);
  const auto* r101 = record_for_value(d, 1.01);
  REQUIRE(r039);
  REQUIRE(r101);
  CHECK(r039->iir == Approx(0.2904564315));
  CHECK(r101->iir == Approx(1.1037344398));
  CHECK(threshold_to_weber(r101->iir) == Approx(0.29).epsilon(0.005));
  CHECK(threshold_to_weber(r039->iir) == Approx(0.75).epsilon(0.005));

  const auto loose = detect_two_sided(venus, Sensitivity::from_weber(0.29));
  CHECK(loose.outlier_values == std::vector<double>{-1.40, 1.01});
}

TEST_CASE("max gap after the majority phase covers every interior gap") {
  // Venus: the gap next to the initial median (-0.05 -> 0.06 = 0.11) must count.
  // Excluding it would drop max_prev to 0.09 and move the 0.39 IIR off 0.29.
  const auto d = detect_two_sided(builtin_sample("venus"));
  REQUIRE_FALSE(d.trace.empty());
  CHECK(d.trace.front().max_prev == Approx(0.11));
}

TEST_CASE("equal frontier gaps expand to the right") {
  const auto d = detect_two_sided(Sample({0, 10, 11, 12, 22}));
  REQUIRE(d.trace.size() == 2);
  CHECK(d.trace[0].side == Side::High);
  CHECK(d.trace[0].value == 22);
  CHECK(d.trace[0].iir == Approx(4.0 * 9.0 / 22.0));
  CHECK(d.outlier_values.empty());
}

TEST_CASE("detect_two_sided degenerate inputs") {
  const auto d = detect_two_sided(Sample({5, 5, 5, 5}));
  CHECK(d.degenerate);
  CHECK(d.outlier_values.empty());
  CHECK(detect_two_sided(Sample({1, 9})).degenerate);
}

TEST_CASE("Weber mapping") {
  CHECK(weber_to_threshold(0.05) == Approx(1.8095238095));
  CHECK(weber_to_threshold(0.0) == 2.0);
  CHECK(weber_to_threshold(1.0) == 0.0);
  CHECK(weber_to_threshold(0.1) == Approx(1.6363636364));
  CHECK(threshold_to_weber(1.10) == Approx(0.2903225806));
  CHECK(threshold_to_weber(0.29) == Approx(0.7467248908));
  CHECK(threshold_to_weber(2.0) == 0.0);
  CHECK_THROWS_AS(weber_to_threshold(-0.01), DomainError);
  CHECK_THROWS_AS(weber_to_threshold(1.5), DomainError);
  CHECK_THROWS_AS(threshold_to_weber(2.5), DomainError);
  CHECK_THROWS_AS(threshold_to_weber(NAN), DomainError);
}

TEST_CASE("Sensitivity keeps K and c consistent") {
  const Sensitivity def;
  CHECK(def.threshold() == 1.81);
  CHECK(weber_to_threshold(def.weber()) == Approx(1.81).epsilon(1e-12));
  const auto s = Sensitivity::from_weber(0.29);
  CHECK(s.threshold() == Approx(2.0 * 0.71 / 1.29));
}
