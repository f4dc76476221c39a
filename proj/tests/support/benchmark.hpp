#pragma once

// Synthetic datasets shared by the unit and acceptance suites.

#include "gaitlock/synthgait.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gaitlock::testing {

struct SubjectSpec {
  std::string name;
  WalkerSpec walker;
};

// Eight walkers whose heights, periods and strides each sit on a ladder with
// >= 15% spacing; the three ladders are permuted against each other.
inline std::vector<SubjectSpec> eight_subjects() {
  constexpr std::array<int, 8> periods = {10, 12, 14, 17, 20, 23, 27, 32};
  constexpr std::array<int, 8> period_rank = {3, 6, 0, 5, 1, 7, 2, 4};
  constexpr std::array<int, 8> stride_rank = {5, 2, 7, 0, 4, 1, 6, 3};
  std::vector<SubjectSpec> out;
  for (int k = 0; k < 8; ++k) {
    WalkerSpec w;
    w.body_height = 70.0 * std::pow(1.16, k);
    w.body_width = 0.28 * w.body_height;
    w.leg_swing_amplitude = 0.45 * w.body_height;
    w.period_frames = periods[period_rank[k]];
    w.stride_px = 20.0 * std::pow(1.16, stride_rank[k]);
    out.push_back({"s" + std::to_string(k + 1), w});
  }
  return out;
}

// At least three periods plus slack, and long enough for ~190 px of travel
// so no background pixel is covered in more than half of the frames.
inline int frames_for(const WalkerSpec& w) {
  const int travel = static_cast<int>(std::ceil(190.0 * w.period_frames / std::max(1.0, w.stride_px)));
  return std::max(3 * w.period_frames + 4, travel);
}

// Places the walker inside a 352-wide frame for sequence `index`; odd
// sequences walk right to left.
inline WalkerSpec place(WalkerSpec w, int index, std::uint64_t seed, double noise, int frame_width = 352) {
  const double half = std::max(w.body_width / 2.0, w.leg_swing_amplitude / 2.0 + 0.3 * w.body_width) + 4.0;
  const double jitter = static_cast<double>((seed * 2654435761ULL >> 7) % 11);
  w.direction = index % 2 == 0 ? 1 : -1;
  w.start_x = w.direction > 0 ? half + jitter : frame_width - 1 - half - jitter;
  w.noise_rate = noise;
  w.seed = seed;
  return w;
}

inline SceneSpec scene_for(const WalkerSpec& w) {
  SceneSpec s;
  s.n_frames = frames_for(w);
  return s;
}

inline std::string sequence_name(int q) { return "q" + std::to_string(q + 1); }

// Writes <root>/<subject>/q<N>/frame_NNNN.pgm for every subject.
inline void write_dataset(const std::filesystem::path& root, const std::vector<SubjectSpec>& subjects,
                          int sequences, double noise, std::uint64_t base_seed) {
  std::uint64_t seed = base_seed;
  for (const auto& s : subjects) {
    for (int q = 0; q < sequences; ++q) {
      const auto w = place(s.walker, q, ++seed, noise);
      write_synthetic(root / s.name / sequence_name(q), generate(w, scene_for(w)));
    }
  }
}

// Two subjects told apart only by the interaction of height and gait period:
// "a" is tall+quick or short+slow, "b" is tall+slow or short+quick. Width and
// swing scale with height, so no single feature mixes the two factors.
// Each mode is rendered `copies` times.
inline void write_xor_dataset(const std::filesystem::path& root, double noise, std::uint64_t base_seed, int copies = 4) {
  const struct {
    const char* subject;
    double height;
    int period;
  } modes[] = {{"a", 150, 14}, {"a", 100, 24}, {"b", 150, 24}, {"b", 100, 14}};
  std::uint64_t seed = base_seed;
  int counter[2] = {0, 0};
  for (int copy = 0; copy < copies; ++copy) {
    for (const auto& m : modes) {
      // Jitter within the mode so the classes are clouds, not points.
      const std::uint64_t h = (seed + 1) * 0x9E3779B97F4A7C15ULL;
      const double height = m.height * (0.94 + 0.12 * static_cast<double>(h >> 40 & 0xFF) / 255.0);
      WalkerSpec w;
      w.body_height = height;
      w.body_width = 0.3 * height;
      w.leg_swing_amplitude = 0.4 * height;
      w.period_frames = m.period + static_cast<int>(h >> 32 & 0xFF) % 3 - 1;
      w.stride_px = 30.0;
      int& q = counter[m.subject[0] - 'a'];
      const auto placed = place(w, q, ++seed, noise);
      write_synthetic(root / m.subject / sequence_name(q), generate(placed, scene_for(placed)));
      ++q;
    }
  }
}

} // namespace gaitlock::testing
