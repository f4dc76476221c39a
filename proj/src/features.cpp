#include "gaitlock/features.hpp"

#include "gaitlock/error.hpp"

#include <cmath>
#include <numbers>

namespace gaitlock {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

} // namespace

HaarSubbands haar_dwt2(const Grid& image) {
  const int n = image.rows;
  if (n != image.cols || n < 2 || !is_power_of_two(n))
    throw Error(ErrorCode::BadDimensions, "Haar transform needs a square grid with power-of-two side >= 2");
  if (image.data.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::BadDimensions, "grid storage does not match its shape");
  const int h = n / 2;
  HaarSubbands out{Grid(h, h), Grid(h, h), Grid(h, h), Grid(h, h)};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < h; ++c) {
      const double a = image(2 * r, 2 * c);
      const double b = image(2 * r, 2 * c + 1);
      const double cc = image(2 * r + 1, 2 * c);
      const double d = image(2 * r + 1, 2 * c + 1);
      out.ll(r, c) = (a + b + cc + d) / 2.0;
      out.lh(r, c) = (a - b + cc - d) / 2.0;
      out.hl(r, c) = (a + b - cc - d) / 2.0;
      out.hh(r, c) = (a - b - cc + d) / 2.0;
    }
  }
  return out;
}

Grid haar_idwt2(const HaarSubbands& bands) {
  const int h = bands.ll.rows;
  for (const Grid* g : {&bands.ll, &bands.lh, &bands.hl, &bands.hh})
    if (g->rows != h || g->cols != h || h < 1) throw Error(ErrorCode::BadDimensions, "subbands differ in shape");
  Grid out(2 * h, 2 * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < h; ++c) {
      const double ll = bands.ll(r, c), lh = bands.lh(r, c), hl = bands.hl(r, c), hh = bands.hh(r, c);
      out(2 * r, 2 * c) = (ll + lh + hl + hh) / 2.0;
      out(2 * r, 2 * c + 1) = (ll - lh + hl - hh) / 2.0;
      out(2 * r + 1, 2 * c) = (ll + lh - hl - hh) / 2.0;
      out(2 * r + 1, 2 * c + 1) = (ll - lh - hl + hh) / 2.0;
    }
  }
  return out;
}

const std::array<std::string, kFusedDims>& feature_names() {
  static const std::array<std::string, kFusedDims> names = {
      "mean_height", "mean_width", "mean_angle", "aspect_ratio", "stride_length", "step_length", "cadence",
      "velocity",    "mu_ll",      "sigma_ll",   "mu_lh",        "sigma_lh",      "mu_hl",       "sigma_hl"};
  return names;
}

std::vector<double> FeatureVector::fused() const {
  std::vector<double> out;
  out.reserve(kFusedDims);
  out.insert(out.end(), spatial.begin(), spatial.end());
  out.insert(out.end(), temporal.begin(), temporal.end());
  out.insert(out.end(), wavelet.begin(), wavelet.end());
  return out;
}

SpatialFeatures spatial_features(std::span<const std::optional<BoundingBox>> boxes) {
  double height = 0.0, width = 0.0, angle = 0.0;
  std::size_t n = 0;
  for (const auto& box : boxes) {
    if (!box) continue;
    const double h = box->height();
    const double w = box->width();
    height += h;
    width += w;
    angle += std::atan(h / w) * 180.0 / std::numbers::pi;
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::EmptyWindow, "no frame in the window has a silhouette");
  const double count = static_cast<double>(n);
  const double mean_h = height / count;
  const double mean_w = width / count;
  return {mean_h, mean_w, angle / count, mean_h / mean_w};
}

TemporalFeatures temporal_features(std::span<const std::optional<double>> centroids, int period, double fps) {
  if (!(fps > 0.0)) throw Error(ErrorCode::InvalidArgument, "fps must be positive");
  if (period < kMinPeriod) throw Error(ErrorCode::InvalidArgument, "period must be at least 4 frames");
  const std::size_t p = static_cast<std::size_t>(period);

  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t t = 0; t + p < centroids.size(); ++t) {
    if (!centroids[t] || !centroids[t + p]) continue;
    sum += std::abs(*centroids[t + p] - *centroids[t]);
    ++pairs;
  }
  double stride = 0.0;
  if (pairs > 0) {
    stride = sum / static_cast<double>(pairs);
  } else {
    std::optional<std::size_t> first, last;
    for (std::size_t t = 0; t < centroids.size(); ++t) {
      if (!centroids[t]) continue;
      if (!first) first = t;
      last = t;
    }
    if (!first || *last == *first) throw Error(ErrorCode::EmptyWindow, "not enough centroids to measure stride");
    const double span = static_cast<double>(*last - *first);
    stride = std::abs(*centroids[*last] - *centroids[*first]) * static_cast<double>(period) / span;
  }

  const double cadence = 2.0 * fps * 60.0 / period;
  return {stride, stride / 2.0, cadence, stride * 0.5 * cadence};
}

double subband_energy(const Grid& band) {
  if (band.data.empty()) return 0.0;
  double sum = 0.0;
  for (double v : band.data) sum += v * v;
  return sum / static_cast<double>(band.data.size());
}

Grid crop_resample(const SilhouetteMask& mask, int side) {
  const auto& box = mask.bbox();
  if (!box) throw Error(ErrorCode::EmptyWindow, "silhouette is empty");
  Grid out(side, side);
  const long bw = box->width();
  const long bh = box->height();
  for (int r = 0; r < side; ++r) {
    const int sy = box->y_min + static_cast<int>((2L * r + 1) * bh / (2L * side));
    for (int c = 0; c < side; ++c) {
      const int sx = box->x_min + static_cast<int>((2L * c + 1) * bw / (2L * side));
      out(r, c) = mask.at(sx, sy) ? 1.0 : 0.0;
    }
  }
  return out;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::Empty, "mean of an empty series");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

WaveletFeatures wavelet_features(std::span<const SilhouetteMask> masks) {
  std::array<std::vector<double>, 3> energies;
  for (const auto& m : masks) {
    if (!m.bbox()) continue;
    const auto bands = haar_dwt2(crop_resample(m));
    energies[0].push_back(subband_energy(bands.ll));
    energies[1].push_back(subband_energy(bands.lh));
    energies[2].push_back(subband_energy(bands.hl));
  }
  if (energies[0].empty()) throw Error(ErrorCode::EmptyWindow, "no silhouette in the window");
  if (energies[0].size() < 2) throw Error(ErrorCode::TooFewFrames, "wavelet deviation needs two silhouettes");
  WaveletFeatures out{};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto ms = mean_std(energies[s]);
    out[2 * s] = ms.mean;
    out[2 * s + 1] = ms.stddev;
  }
  return out;
}

FeatureVector fuse(std::span<const double> spatial, std::span<const double> temporal,
                   std::span<const double> wavelet) {
  if (spatial.size() != kSpatialDims || temporal.size() != kTemporalDims || wavelet.size() != kWaveletDims)
    throw Error(ErrorCode::BadComponentLength, "component lengths must be 4, 4 and 6");
  FeatureVector fv;
  std::copy(spatial.begin(), spatial.end(), fv.spatial.begin());
  std::copy(temporal.begin(), temporal.end(), fv.temporal.begin());
  std::copy(wavelet.begin(), wavelet.end(), fv.wavelet.begin());
  return fv;
}

std::string to_string(FeatureSet set) {
  switch (set) {
  case FeatureSet::Spatial: return "spatial";
  case FeatureSet::Temporal: return "temporal";
  case FeatureSet::Wavelet: return "wavelet";
  case FeatureSet::SpatialTemporal: return "spatial+temporal";
  case FeatureSet::SpatialWavelet: return "spatial+wavelet";
  case FeatureSet::All: return "spatial+temporal+wavelet";
  }
  return "unknown";
}

namespace {

struct Parts {
  bool s, t, w;
};

Parts parts(FeatureSet set) {
  switch (set) {
  case FeatureSet::Spatial: return {true, false, false};
  case FeatureSet::Temporal: return {false, true, false};
  case FeatureSet::Wavelet: return {false, false, true};
  case FeatureSet::SpatialTemporal: return {true, true, false};
  case FeatureSet::SpatialWavelet: return {true, false, true};
  case FeatureSet::All: return {true, true, true};
  }
  return {false, false, false};
}

} // namespace

std::size_t dimension(FeatureSet set) {
  const auto p = parts(set);
  return (p.s ? kSpatialDims : 0) + (p.t ? kTemporalDims : 0) + (p.w ? kWaveletDims : 0);
}

std::vector<double> select_features(std::span<const double> fused, FeatureSet set) {
  if (fused.size() != kFusedDims) throw Error(ErrorCode::BadComponentLength, "fused vector must have 14 entries");
  const auto p = parts(set);
  std::vector<double> out;
  if (p.s) out.insert(out.end(), fused.begin(), fused.begin() + kSpatialDims);
  if (p.t) out.insert(out.end(), fused.begin() + kSpatialDims, fused.begin() + kSpatialDims + kTemporalDims);
  if (p.w) out.insert(out.end(), fused.begin() + kSpatialDims + kTemporalDims, fused.end());
  return out;
}

SequenceAnalysis analyze_silhouettes(std::span<const SilhouetteMask> masks, double fps) {
  SequenceAnalysis a;
  a.widths = width_signal(masks, fps);
  a.period = estimate_period(a.widths);
  a.cycles = partition_cycles(a.widths, a.period);
  a.window = select_feature_window(a.cycles);

  const auto first = static_cast<std::size_t>(a.window.front().start_frame);
  const auto last = static_cast<std::size_t>(a.window.back().end_frame);
  const auto window = masks.subspan(first, last - first + 1);

  std::vector<std::optional<BoundingBox>> boxes;
  std::vector<std::optional<double>> centroids;
  for (const auto& m : window) {
    boxes.push_back(m.bbox());
    centroids.push_back(m.centroid_x());
  }
  a.features.spatial = spatial_features(boxes);
  a.features.temporal = temporal_features(centroids, a.period, fps);
  a.features.wavelet = wavelet_features(window);
  return a;
}

} // namespace gaitlock
