#include "gaitlock/error.hpp"
#include "gaitlock/segmentation.hpp"

#include <doctest.h>

#include <queue>
#include <random>

using namespace gaitlock;

namespace {

BackgroundModel flat_background(int w, int h, std::uint8_t level) {
  return {Frame(w, h, level), BackgroundTechnique::Median, std::nullopt};
}

SilhouetteMask rect_mask(int w, int h, int x0, int y0, int x1, int y1) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(w * h), 0);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) m[static_cast<std::size_t>(y * w + x)] = 1;
  return SilhouetteMask(w, h, m);
}

// Breadth-first flood fill counting 8-connected components.
int flood_fill_components(const SilhouetteMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<char> seen(static_cast<std::size_t>(w * h), 0);
  int components = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!m.at(x, y) || seen[y * w + x]) continue;
      ++components;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      seen[y * w + x] = 1;
      while (!q.empty()) {
        auto [cx, cy] = q.front();
        q.pop();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || seen[ny * w + nx] || !m.at(nx, ny)) continue;
            seen[ny * w + nx] = 1;
            q.push({nx, ny});
          }
      }
    }
  return components;
}

} // namespace

TEST_CASE("identical frame and background give an empty mask") {
  Frame f(6, 4, 90);
  const auto m = difference_mask(f, {f, BackgroundTechnique::Median, std::nullopt}, Threshold::fixed(10));
  CHECK(m.foreground_count() == 0);
  CHECK_FALSE(m.bbox());
  CHECK(difference_mask(f, {f, BackgroundTechnique::Median, std::nullopt}, Threshold::automatic()).foreground_count() == 0);
}

TEST_CASE("strict threshold: |I - B| > T") {
  Frame f(3, 1, 30);
  f.at(0, 0) = 100; // |70| > 50
  f.at(1, 0) = 80;  // |50| == 50 stays background
  const auto m = difference_mask(f, flat_background(3, 1, 30), Threshold::fixed(50));
  CHECK(m.at(0, 0));
  CHECK_FALSE(m.at(1, 0));
  CHECK_FALSE(m.at(2, 0));
  REQUIRE(m.bbox());
  CHECK(*m.bbox() == BoundingBox{0, 0, 0, 0});
}

TEST_CASE("dimension mismatch") {
  try {
    difference_mask(Frame(3, 3), flat_background(4, 3, 0), Threshold::fixed(1));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("property: the mask depends only on |I - B|") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Frame bg(8, 8), up(8, 8), down(8, 8);
    for (std::size_t i = 0; i < bg.size(); ++i) {
      const int b = 60 + static_cast<int>(rng() % 136);
      const int d = static_cast<int>(rng() % 60);
      bg.pixels()[i] = static_cast<std::uint8_t>(b);
      up.pixels()[i] = static_cast<std::uint8_t>(b + d);
      down.pixels()[i] = static_cast<std::uint8_t>(b - d);
    }
    const BackgroundModel model{bg, BackgroundTechnique::Median, std::nullopt};
    const auto t = Threshold::fixed(static_cast<int>(rng() % 60));
    CHECK(difference_mask(up, model, t) == difference_mask(down, model, t));
    CHECK(difference_mask(up, model, Threshold::automatic()) == difference_mask(down, model, Threshold::automatic()));
  }
}

TEST_CASE("automatic threshold separates a bright block") {
  Frame f(20, 20, 10);
  for (int y = 5; y < 15; ++y)
    for (int x = 6; x < 12; ++x) f.at(x, y) = 150;
  const auto m = difference_mask(f, flat_background(20, 20, 10), Threshold::automatic());
  REQUIRE(m.bbox());
  CHECK(*m.bbox() == BoundingBox{6, 5, 11, 14});
  CHECK(m.foreground_count() == 60);
}

TEST_CASE("clean keeps only the solid component") {
  auto base = rect_mask(40, 40, 10, 5, 19, 24); // 10 x 20
  std::vector<std::uint8_t> m(base.mask().begin(), base.mask().end());
  for (auto [x, y] : {std::pair{2, 2}, std::pair{35, 30}, std::pair{30, 8}}) m[y * 40 + x] = 1;
  const SilhouetteMask noisy(40, 40, m);
  CHECK(flood_fill_components(noisy) == 4);

  const auto clean = clean_mask(noisy);
  CHECK(flood_fill_components(clean) == 1);
  REQUIRE(clean.bbox());
  CHECK(*clean.bbox() == BoundingBox{10, 5, 19, 24});
  // Majority vote drops only the four rectangle corners.
  CHECK(clean.foreground_count() == 200 - 4);
  CHECK_FALSE(clean.at(2, 2));
}

TEST_CASE("clean of an empty mask is empty") {
  const SilhouetteMask empty(9, 7, std::vector<std::uint8_t>(63, 0));
  CHECK(clean_mask(empty) == empty);
}

TEST_CASE("clean keeps the interior and bbox of a solid rectangle") {
  const auto r = rect_mask(30, 30, 4, 6, 20, 25);
  const auto c = clean_mask(r);
  CHECK(*c.bbox() == *r.bbox());
  for (int y = 7; y <= 24; ++y)
    for (int x = 5; x <= 19; ++x) CHECK(c.at(x, y));
}

TEST_CASE("property: after cleaning at most one component remains and the bbox is tight") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 24, h = 18;
    std::vector<std::uint8_t> m(static_cast<std::size_t>(w * h));
    const int density = 20 + static_cast<int>(rng() % 50);
    for (auto& v : m) v = static_cast<int>(rng() % 100) < density;
    const auto c = clean_mask(SilhouetteMask(w, h, m));
    const int comps = flood_fill_components(c);
    CHECK(comps <= 1);
    CHECK(count_components(c) == static_cast<std::size_t>(comps));
    if (!c.bbox()) continue;
    const auto b = *c.bbox();
    bool top = false, bottom = false, left = false, right = false;
    for (int x = b.x_min; x <= b.x_max; ++x) top |= c.at(x, b.y_min), bottom |= c.at(x, b.y_max);
    for (int y = b.y_min; y <= b.y_max; ++y) left |= c.at(b.x_min, y), right |= c.at(b.x_max, y);
    CHECK((top && bottom && left && right));
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (c.at(x, y)) CHECK((x >= b.x_min && x <= b.x_max && y >= b.y_min && y <= b.y_max));
  }
}

TEST_CASE("diagonal pixels are one 8-connected component") {
  std::vector<std::uint8_t> m(25, 0);
  for (int i = 0; i < 5; ++i) m[i * 5 + i] = 1;
  CHECK(count_components(SilhouetteMask(5, 5, m)) == 1);
}

TEST_CASE("mask export and import") {
  const auto r = rect_mask(8, 6, 1, 1, 4, 3);
  const auto f = r.to_frame();
  CHECK(f.at(1, 1) == 255);
  CHECK(f.at(0, 0) == 0);
  CHECK(SilhouetteMask::from_frame(f) == r);
  CHECK(*r.centroid_x() == doctest::Approx(2.5));
}
