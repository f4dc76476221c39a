#include "gaitlock/background.hpp"
#include "gaitlock/error.hpp"
#include "gaitlock/synthgait.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

using namespace gaitlock;

namespace {

// One-pixel-wide sequences make per-pixel traces easy to state.
FrameSequence column(std::initializer_list<int> values) {
  std::vector<Frame> frames;
  for (int v : values) frames.emplace_back(1, 1, static_cast<std::uint8_t>(v));
  return FrameSequence(std::move(frames), 25.0);
}

// Sort-based lower median, independent of nth_element.
int sorted_lower_median(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

// Counting oracle: most frequent value, lowest on ties.
int count_mode(const std::vector<int>& v) {
  std::map<int, int> counts;
  for (int x : v) ++counts[x];
  int best = -1, best_n = 0;
  for (auto [value, n] : counts)
    if (n > best_n) best = value, best_n = n;
  return best;
}

} // namespace

TEST_CASE("median of a constant sequence") {
  std::vector<Frame> frames(5, Frame(3, 2, 128));
  const auto m = model_median(FrameSequence(frames, 25.0));
  CHECK(m.reference == Frame(3, 2, 128));
  CHECK(m.technique == BackgroundTechnique::Median);
  CHECK_FALSE(m.cdm_threshold);
}

TEST_CASE("median of a single pixel trace") {
  CHECK(sorted_lower_median({5, 7, 200, 6, 5}) == 6);
  CHECK(model_median(column({5, 7, 200, 6, 5})).reference.at(0, 0) == 6);
}

TEST_CASE("median of an even count takes the lower middle value") {
  CHECK(model_median(column({10, 40, 20, 30})).reference.at(0, 0) == 20);
  CHECK(model_median(column({9, 3})).reference.at(0, 0) == 3);
}

TEST_CASE("median ignores a walker covering a pixel in 4 of 20 frames") {
  std::vector<Frame> frames;
  for (int i = 0; i < 20; ++i) {
    Frame f(5, 5, 40);
    if (i >= 8 && i < 12) f.at(2, 3) = 140;
    frames.push_back(f);
  }
  CHECK(model_median(FrameSequence(frames, 25.0)).reference.at(2, 3) == 40);
}

TEST_CASE("property: median recovers a background visible in more than half the frames") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 30);
    const int w = 6, h = 5;
    std::vector<int> truth(w * h);
    for (auto& t : truth) t = static_cast<int>(rng() % 256);
    std::vector<Frame> frames(n, Frame(w, h));
    for (int p = 0; p < w * h; ++p) {
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      const int visible = n / 2 + 1 + static_cast<int>(rng() % (n - n / 2));
      for (int k = 0; k < n; ++k) {
        const int v = k < visible ? truth[p] : static_cast<int>(rng() % 256);
        frames[order[k]].pixels()[p] = static_cast<std::uint8_t>(v);
      }
    }
    const auto ref = model_median(FrameSequence(frames, 25.0)).reference;
    for (int p = 0; p < w * h; ++p) CHECK(ref.pixels()[p] == truth[p]);
  }
}

TEST_CASE("cdm on a static sequence returns the frame") {
  std::vector<Frame> frames(4, Frame(3, 3, 77));
  const auto m = model_cdm(FrameSequence(frames, 25.0), Threshold::automatic());
  CHECK(m.reference == Frame(3, 3, 77));
  REQUIRE(m.cdm_threshold);
}

TEST_CASE("cdm hand trace: [10,10,10,50,10], T = 20") {
  // Transitions 3->4 and 4->5 fire; runs {1,2,3} {4} {5}; longest median is 10.
  const auto m = model_cdm(column({10, 10, 10, 50, 10}), Threshold::fixed(20));
  CHECK(m.reference.at(0, 0) == 10);
  CHECK(*m.cdm_threshold == 20);
}

TEST_CASE("cdm tie between equal runs picks the earlier one") {
  CHECK(model_cdm(column({10, 50}), Threshold::fixed(20)).reference.at(0, 0) == 10);
  CHECK(model_cdm(column({50, 10}), Threshold::fixed(20)).reference.at(0, 0) == 50);
}

TEST_CASE("cdm run boundaries use d >= T") {
  // d = 20 exactly fires; the later run [30,30,30] is longest.
  CHECK(model_cdm(column({10, 30, 30, 30}), Threshold::fixed(20)).reference.at(0, 0) == 30);
  // d = 19 does not fire; one run, lower median of {10,29,29,29} = 29.
  CHECK(model_cdm(column({10, 29, 29, 29}), Threshold::fixed(20)).reference.at(0, 0) == 29);
}

TEST_CASE("cdm needs two frames") {
  try {
    model_cdm(column({3}), Threshold::fixed(5));
    FAIL("expected TooFewFrames");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewFrames);
  }
}

TEST_CASE("histogram mode") {
  CHECK(model_histogram(FrameSequence(std::vector<Frame>(3, Frame(2, 2, 77)), 25.0)).reference == Frame(2, 2, 77));
  CHECK(count_mode({10, 10, 200, 10, 30}) == 10);
  CHECK(model_histogram(column({10, 10, 200, 10, 30})).reference.at(0, 0) == 10);
  CHECK(model_histogram(column({12, 12, 40, 40, 7})).reference.at(0, 0) == 12);
  CHECK(model_histogram(column({40, 40, 12, 12, 7})).reference.at(0, 0) == 12);
}

TEST_CASE("property: histogram matches the counting oracle") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> v(1 + rng() % 12);
    for (auto& x : v) x = static_cast<int>(rng() % 6) * 40;
    std::vector<Frame> frames;
    for (int x : v) frames.emplace_back(1, 1, static_cast<std::uint8_t>(x));
    CHECK(model_histogram(FrameSequence(frames, 25.0)).reference.at(0, 0) == count_mode(v));
  }
}

TEST_CASE("property: histogram equals median when every pixel is constant over time") {
  std::mt19937 rng(8);
  Frame base(7, 5);
  for (auto& p : base.pixels()) p = static_cast<std::uint8_t>(rng());
  const FrameSequence seq(std::vector<Frame>(6, base), 25.0);
  CHECK(model_histogram(seq).reference == model_median(seq).reference);
}

TEST_CASE("technique names round trip") {
  for (auto t : {BackgroundTechnique::Cdm, BackgroundTechnique::Median, BackgroundTechnique::Histogram})
    CHECK(parse_background_technique(to_string(t)) == t);
  CHECK_THROWS_AS(parse_background_technique("gmm"), Error);
}

TEST_CASE("timing ordering: histogram < median < cdm on a synthetic walk") {
  WalkerSpec w;
  w.noise_rate = 0.005;
  SceneSpec scene;
  scene.n_frames = 120;
  const auto seq = generate(w, scene).frames;

  auto best_of = [&](auto&& fn) {
    double best = 1e30;
    for (int i = 0; i < 5; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto m = fn();
      const auto t1 = std::chrono::steady_clock::now();
      CHECK(m.reference.width() == seq.width());
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };
  const double hist = best_of([&] { return model_histogram(seq); });
  const double median = best_of([&] { return model_median(seq); });
  const double cdm = best_of([&] { return model_cdm(seq, Threshold::automatic()); });
  MESSAGE("histogram " << hist << " s, median " << median << " s, cdm " << cdm << " s");
  CHECK(hist < median);
  CHECK(median < cdm);
}
