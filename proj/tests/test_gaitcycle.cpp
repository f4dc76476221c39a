#include "gaitlock/error.hpp"
#include "gaitlock/gaitcycle.hpp"
#include "gaitlock/synthgait.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gaitlock;

namespace {

WidthSignal sinusoid(int period, int length, double offset = 50.0, double amplitude = 10.0, double phase = 0.0) {
  WidthSignal s;
  for (int t = 0; t < length; ++t)
    s.values.push_back(offset + amplitude * std::sin(2.0 * std::numbers::pi * (t - phase) / period));
  return s;
}

// Average magnitude difference oracle: smallest lag >= 4 whose mean
// |x(t + k) - x(t)| is (numerically) zero.
int amdf_period(const std::vector<double>& x) {
  for (std::size_t k = 4; k < x.size() / 2; ++k) {
    double sum = 0.0;
    for (std::size_t t = 0; t + k < x.size(); ++t) sum += std::abs(x[t + k] - x[t]);
    if (sum / static_cast<double>(x.size() - k) < 1e-9) return static_cast<int>(k);
  }
  return -1;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gaitlock::Error");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("sinusoid of period 30 over 120 frames") {
  const auto s = sinusoid(30, 120);
  CHECK(amdf_period(s.values) == 30);
  CHECK(estimate_period(s) == 30);
}

TEST_CASE("constant and degenerate signals") {
  WidthSignal flat{std::vector<double>(60, 50.0), 25.0};
  CHECK(code_of([&] { estimate_period(flat); }) == ErrorCode::NoPeriodicity);
  WidthSignal zeros{std::vector<double>(60, 0.0), 25.0};
  CHECK(code_of([&] { estimate_period(zeros); }) == ErrorCode::NoPeriodicity);
  WidthSignal tiny{std::vector<double>(11, 1.0), 25.0};
  CHECK(code_of([&] { estimate_period(tiny); }) == ErrorCode::SequenceTooShort);
}

TEST_CASE("property: exact recovery of integer periods 10..40 with at least four periods") {
  std::mt19937 rng(11);
  for (int p = 10; p <= 40; ++p) {
    for (int periods : {4, 5, 7}) {
      const double phase = static_cast<double>(rng() % 1000) / 1000.0 * p;
      const auto s = sinusoid(p, periods * p, 80.0, 15.0, phase);
      CHECK_MESSAGE(estimate_period(s) == p, "p = " << p << ", periods = " << periods);
    }
  }
}

TEST_CASE("property: period is invariant to offset and positive scaling") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 8 + static_cast<int>(rng() % 25);
    WidthSignal s;
    for (int t = 0; t < 5 * p; ++t) {
      const double ph = 2.0 * std::numbers::pi * t / p;
      s.values.push_back(40 + 8 * std::abs(std::sin(ph / 2)) + 3 * std::cos(ph) + (rng() % 3));
    }
    const int base = estimate_period(s);
    const double shift = static_cast<double>(rng() % 200), scale = 0.25 + static_cast<double>(rng() % 100) / 10.0;
    WidthSignal moved = s, scaled = s;
    for (auto& v : moved.values) v += shift;
    for (auto& v : scaled.values) v *= scale;
    CHECK(estimate_period(moved) == base);
    CHECK(estimate_period(scaled) == base);
  }
}

TEST_CASE("synthetic walker with period 28") {
  WalkerSpec w;
  w.period_frames = 28;
  w.stride_px = 40;
  w.noise_rate = 0.005;
  SceneSpec scene;
  scene.n_frames = 120;
  const auto seq = generate(w, scene);
  std::vector<double> widths;
  for (const auto& b : seq.truth.bboxes) widths.push_back(b.width());
  const int p = estimate_period({widths, 25.0});
  CHECK(p >= 27);
  CHECK(p <= 29);
}

TEST_CASE("partition tiles from the first smoothed maximum") {
  const auto s = sinusoid(30, 90, 50.0, 10.0, 5.0 - 7.5); // sin peaks a quarter period after the phase
  const auto cycles = partition_cycles(s, 30);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0] == GaitCycle{5, 34, 30});
  CHECK(cycles[1] == GaitCycle{35, 64, 30});
}

TEST_CASE("one period starting at its maximum gives one cycle") {
  const auto s = sinusoid(30, 30, 50.0, 10.0, -7.5);
  const auto cycles = partition_cycles(s, 30);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == GaitCycle{0, 29, 30});
}

TEST_CASE("partition preconditions") {
  CHECK(code_of([] { partition_cycles(sinusoid(30, 29), 30); }) == ErrorCode::SequenceTooShort);
  CHECK(code_of([] { partition_cycles(sinusoid(30, 90), 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: cycles are disjoint, contiguous and one period long") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 4 + static_cast<int>(rng() % 30);
    const int n = p + static_cast<int>(rng() % (6 * p));
    const auto s = sinusoid(p, n, 50.0, 10.0, static_cast<double>(rng() % 100) / 10.0);
    std::vector<GaitCycle> cycles;
    try {
      cycles = partition_cycles(s, p);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SequenceTooShort);
      continue;
    }
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      CHECK(cycles[i].end_frame - cycles[i].start_frame + 1 == p);
      CHECK(cycles[i].end_frame < n);
      if (i > 0) CHECK(cycles[i].start_frame == cycles[i - 1].end_frame + 1);
    }
  }
}

TEST_CASE("feature window is the first two cycles") {
  std::vector<GaitCycle> four = {{0, 9, 10}, {10, 19, 10}, {20, 29, 10}, {30, 39, 10}};
  const auto w = select_feature_window(four);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == four[0]);
  CHECK(w[1] == four[1]);
  CHECK(select_feature_window(std::span(four).first(2)).size() == 2);
  CHECK(code_of([&] { select_feature_window(std::span(four).first(1)); }) == ErrorCode::InsufficientCycles);
}

TEST_CASE("smoothing averages available neighbours") {
  const std::vector<double> v = {3, 6, 9, 0};
  const auto s = smooth3(v);
  CHECK(s[0] == doctest::Approx(4.5));
  CHECK(s[1] == doctest::Approx(6.0));
  CHECK(s[2] == doctest::Approx(5.0));
  CHECK(s[3] == doctest::Approx(4.5));
}
