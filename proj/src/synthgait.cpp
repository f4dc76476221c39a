#include "gaitlock/synthgait.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

namespace gaitlock {

namespace {

void validate(const WalkerSpec& s, const SceneSpec& scene) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::SpecOutOfBounds, why); };
  if (!(s.body_height >= 8.0) || !(s.body_width >= 3.0)) bad("body must be at least 8 px tall and 3 px wide");
  if (s.period_frames < 8) bad("period_frames must be at least 8");
  if (!(s.stride_px >= 0.0) || !(s.leg_swing_amplitude >= 0.0)) bad("stride and swing must be non-negative");
  if (s.direction != 1 && s.direction != -1) bad("direction must be +1 or -1");
  if (!(s.noise_rate >= 0.0 && s.noise_rate < 1.0)) bad("noise_rate must be in [0, 1)");
  if (scene.frame_width < 8 || scene.frame_height < 8) bad("frame is too small");
  if (scene.n_frames < 3 * s.period_frames) bad("n_frames must cover at least three periods");
  if (scene.background_level < 0 || scene.background_level > 255) bad("background level must be in [0, 255]");
  if (!(scene.fps > 0.0)) bad("fps must be positive");
}

struct Raster {
  int w, h;
  std::vector<std::uint8_t> on;

  void span(int y, int x0, int x1) {
    if (y < 1 || y > h - 2 || x0 < 1 || x1 > w - 2)
      throw Error(ErrorCode::SpecOutOfBounds, "walker leaves the frame");
    for (int x = x0; x <= x1; ++x) on[static_cast<std::size_t>(y) * w + x] = 1;
  }
};

int iround(double v) { return static_cast<int>(std::lround(v)); }

void draw_walker(Raster& r, const WalkerSpec& s, int t, int ground) {
  const int height = iround(s.body_height);
  const int top = ground - height + 1;
  const int hip = top + iround(0.5 * s.body_height);
  const int head_rows = iround(0.12 * s.body_height);
  const double cx = s.start_x + s.direction * s.stride_px * t / s.period_frames;

  const int bw = iround(s.body_width);
  const int head_w = std::max(3, iround(0.6 * s.body_width));
  for (int y = top; y < hip; ++y) {
    const int w = y < top + head_rows ? head_w : bw;
    const int x0 = iround(cx - w / 2.0);
    r.span(y, x0, x0 + w - 1);
  }

  const int thick = std::max(3, iround(0.3 * s.body_width));
  const double sep = s.leg_swing_amplitude * std::abs(std::sin(std::numbers::pi * t / s.period_frames));
  const int leg_rows = ground - hip;
  for (int y = hip; y <= ground; ++y) {
    const double u = leg_rows > 0 ? static_cast<double>(y - hip) / leg_rows : 1.0;
    for (const double side : {-0.5, 0.5}) {
      const int x0 = iround(cx + side * u * sep - thick / 2.0);
      r.span(y, x0, x0 + thick - 1);
    }
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

SyntheticSequence generate(const WalkerSpec& spec, const SceneSpec& scene) {
  validate(spec, scene);
  const int w = scene.frame_width;
  const int h = scene.frame_height;
  const int ground = h - 1 - std::max(2, h / 40);
  if (ground - iround(spec.body_height) + 1 < 1) throw Error(ErrorCode::SpecOutOfBounds, "walker taller than the frame");

  const auto bg = static_cast<std::uint8_t>(scene.background_level);
  const auto fg = static_cast<std::uint8_t>(std::min(255, scene.background_level + 100));
  std::mt19937_64 rng(spec.seed);

  std::vector<Frame> frames;
  GroundTruth truth;
  truth.period_frames = spec.period_frames;
  truth.stride_px = spec.stride_px;
  frames.reserve(static_cast<std::size_t>(scene.n_frames));
  for (int t = 0; t < scene.n_frames; ++t) {
    Raster r{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
    draw_walker(r, spec, t, ground);

    const SilhouetteMask truth_mask(w, h, r.on);
    truth.bboxes.push_back(*truth_mask.bbox());
    truth.centroids_x.push_back(*truth_mask.centroid_x());

    Frame f(w, h, bg);
    auto px = f.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
      if (r.on[i]) px[i] = fg;
      else if (spec.noise_rate > 0.0 && uniform01(rng) < spec.noise_rate) px[i] = fg;
    }
    frames.push_back(std::move(f));
  }
  return {FrameSequence(std::move(frames), scene.fps), std::move(truth)};
}

void write_synthetic(const std::filesystem::path& directory, const SyntheticSequence& seq) {
  save_sequence(directory, seq.frames.frames());
  std::ofstream out(directory / "truth.csv");
  if (!out) throw Error(ErrorCode::Io, "cannot write truth.csv in " + directory.string());
  out << "frame,x_min,y_min,x_max,y_max,centroid_x,period_frames,stride_px\n";
  char buf[64];
  for (std::size_t i = 0; i < seq.truth.bboxes.size(); ++i) {
    const auto& b = seq.truth.bboxes[i];
    std::snprintf(buf, sizeof buf, "%.17g", seq.truth.centroids_x[i]);
    out << (i + 1) << ',' << b.x_min << ',' << b.y_min << ',' << b.x_max << ',' << b.y_max << ',' << buf << ','
        << seq.truth.period_frames << ',';
    std::snprintf(buf, sizeof buf, "%.17g", seq.truth.stride_px);
    out << buf << '\n';
  }
}

} // namespace gaitlock
