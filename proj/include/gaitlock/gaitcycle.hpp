#pragma once

#include "gaitlock/segmentation.hpp"

#include <span>
#include <vector>

namespace gaitlock {

// Per-frame bounding-box width (0 where the silhouette is empty).
struct WidthSignal {
  std::vector<double> values;
  double fps = 25.0;
};

struct GaitCycle {
  int start_frame = 0;
  int end_frame = 0; // inclusive
  int period_frames = 0;

  friend bool operator==(const GaitCycle&, const GaitCycle&) = default;
};

inline constexpr int kMinPeriod = 4;
inline constexpr double kPeriodAcceptance = 0.3;

WidthSignal width_signal(std::span<const SilhouetteMask> masks, double fps);

// Normalized autocorrelation of the mean-subtracted signal at `lag`: the
// lagged inner product over the overlap divided by the geometric mean of the
// two overlapping energies. Exactly 1 at the period of a periodic signal.
double normalized_autocorrelation(std::span<const double> centered, int lag);

// First local maximum of the normalized autocorrelation in lags
// [4, length / 2] whose value is at least 0.3.
int estimate_period(const WidthSignal& signal);

// 3-frame moving average; the end points average their two available samples.
std::vector<double> smooth3(std::span<const double> values);

// Cycles of `period` frames tiled forward from the first local maximum of
// the smoothed width; trailing partial cycles are dropped.
std::vector<GaitCycle> partition_cycles(const WidthSignal& signal, int period);

// The first two cycles.
std::vector<GaitCycle> select_feature_window(std::span<const GaitCycle> cycles);

} // namespace gaitlock
