#pragma once

#include "gaitlock/imagery.hpp"
#include "gaitlock/segmentation.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace gaitlock {

// A side-view walker: head and torso block over two legs whose foot
// separation is leg_swing_amplitude * |sin(pi t / period_frames)|, so the
// bounding-box width repeats every period_frames frames.
struct WalkerSpec {
  double body_height = 100.0;
  double body_width = 30.0;
  int period_frames = 30;
  double stride_px = 40.0; // horizontal travel per period
  double leg_swing_amplitude = 40.0;
  double start_x = 60.0;
  int direction = 1;
  double noise_rate = 0.0; // per-frame probability of a background pixel flipping to foreground
  std::uint64_t seed = 1;
};

struct SceneSpec {
  int frame_width = 352;
  int frame_height = 240;
  int n_frames = 120;
  int background_level = 40;
  double fps = 25.0;
};

struct GroundTruth {
  int period_frames = 0;
  double stride_px = 0.0;
  std::vector<BoundingBox> bboxes;
  std::vector<double> centroids_x;
};

struct SyntheticSequence {
  FrameSequence frames;
  GroundTruth truth;
};

SyntheticSequence generate(const WalkerSpec& spec, const SceneSpec& scene);

// Writes frames plus truth.csv (frame,x_min,y_min,x_max,y_max,centroid_x,period_frames,stride_px).
void write_synthetic(const std::filesystem::path& directory, const SyntheticSequence& seq);

} // namespace gaitlock
