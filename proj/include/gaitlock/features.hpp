#pragma once

#include "gaitlock/gaitcycle.hpp"
#include "gaitlock/segmentation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gaitlock {

// Dense row-major matrix of doubles.
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Grid() = default;
  Grid(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct HaarSubbands {
  Grid ll, lh, hl, hh;
};

// One-level orthonormal 2-D Haar transform of a square grid whose side is a
// power of two >= 2. For the 2x2 block [[a, b], [c, d]]:
//   LL = (a+b+c+d)/2, LH = (a-b+c-d)/2, HL = (a+b-c-d)/2, HH = (a-b-c+d)/2.
HaarSubbands haar_dwt2(const Grid& image);
Grid haar_idwt2(const HaarSubbands& bands);

inline constexpr int kSpatialDims = 4;
inline constexpr int kTemporalDims = 4;
inline constexpr int kWaveletDims = 6;
inline constexpr int kFusedDims = kSpatialDims + kTemporalDims + kWaveletDims;
inline constexpr int kWaveletSide = 64;

using SpatialFeatures = std::array<double, kSpatialDims>;   // H, W, angle (deg), AR
using TemporalFeatures = std::array<double, kTemporalDims>; // stride, step, cadence, velocity
using WaveletFeatures = std::array<double, kWaveletDims>;   // mu/sigma of LL, LH, HL energies

const std::array<std::string, kFusedDims>& feature_names();

struct FeatureVector {
  SpatialFeatures spatial{};
  TemporalFeatures temporal{};
  WaveletFeatures wavelet{};

  // S then T then W.
  std::vector<double> fused() const;
};

SpatialFeatures spatial_features(std::span<const std::optional<BoundingBox>> boxes);

// Stride is the mean |c[t + period] - c[t]| over frame pairs inside the
// window. Windows shorter than period + 1 frames extrapolate the end-to-end
// displacement to a full period. Cadence counts two steps per cycle.
TemporalFeatures temporal_features(std::span<const std::optional<double>> centroids, int period, double fps);

// Mean of squared coefficients.
double subband_energy(const Grid& band);

// Crop to the bounding box and resample to side x side by nearest neighbour.
Grid crop_resample(const SilhouetteMask& mask, int side = kWaveletSide);

WaveletFeatures wavelet_features(std::span<const SilhouetteMask> masks);

// Sample mean and standard deviation (divisor N - 1).
struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};
MeanStd mean_std(std::span<const double> values);

FeatureVector fuse(std::span<const double> spatial, std::span<const double> temporal,
                   std::span<const double> wavelet);

// Feature-type subsets compared in the ablation study.
enum class FeatureSet { Spatial, Temporal, Wavelet, SpatialTemporal, SpatialWavelet, All };

inline constexpr std::array<FeatureSet, 6> kAllFeatureSets = {
    FeatureSet::Spatial,         FeatureSet::Temporal,       FeatureSet::Wavelet,
    FeatureSet::SpatialTemporal, FeatureSet::SpatialWavelet, FeatureSet::All};

std::string to_string(FeatureSet set);
std::size_t dimension(FeatureSet set);
// Concatenates the selected components of a fused 14-vector, in S, T, W order.
std::vector<double> select_features(std::span<const double> fused, FeatureSet set);

// Everything derived from one silhouette sequence on the way to its features.
struct SequenceAnalysis {
  WidthSignal widths;
  int period = 0;
  std::vector<GaitCycle> cycles;
  std::vector<GaitCycle> window;
  FeatureVector features;
};

SequenceAnalysis analyze_silhouettes(std::span<const SilhouetteMask> masks, double fps);

} // namespace gaitlock
