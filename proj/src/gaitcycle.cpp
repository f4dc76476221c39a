#include "gaitlock/gaitcycle.hpp"

#include "gaitlock/error.hpp"

#include <cmath>
#include <numeric>

namespace gaitlock {

WidthSignal width_signal(std::span<const SilhouetteMask> masks, double fps) {
  WidthSignal s;
  s.fps = fps;
  s.values.reserve(masks.size());
  for (const auto& m : masks) s.values.push_back(m.bbox() ? m.bbox()->width() : 0.0);
  return s;
}

double normalized_autocorrelation(std::span<const double> centered, int lag) {
  const std::size_t n = centered.size();
  const auto k = static_cast<std::size_t>(lag);
  if (k >= n) return 0.0;
  double cross = 0.0;
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t t = 0; t + k < n; ++t) {
    cross += centered[t] * centered[t + k];
    head += centered[t] * centered[t];
    tail += centered[t + k] * centered[t + k];
  }
  const double denom = std::sqrt(head * tail);
  if (denom == 0.0) return 0.0;
  return cross / denom;
}

int estimate_period(const WidthSignal& signal) {
  const auto& v = signal.values;
  const int n = static_cast<int>(v.size());
  if (n < 3 * kMinPeriod)
    throw Error(ErrorCode::SequenceTooShort, "width signal needs at least " + std::to_string(3 * kMinPeriod) + " frames");

  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  std::vector<double> centered(v.size());
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    centered[i] = v[i] - mean;
    energy += centered[i] * centered[i];
  }
  // Relative guard so that a constant signal with rounding residue counts as flat.
  if (energy <= 1e-18 * std::max(1.0, mean * mean) * n)
    throw Error(ErrorCode::NoPeriodicity, "width signal has zero variance");

  const int max_lag = n / 2;
  std::vector<double> r(static_cast<std::size_t>(max_lag) + 2, 0.0);
  for (int k = kMinPeriod - 1; k <= max_lag + 1 && k < n; ++k) r[k] = normalized_autocorrelation(centered, k);

  for (int k = kMinPeriod; k <= max_lag; ++k) {
    const bool rising = r[k] > r[k - 1];
    const bool peak = k + 1 >= n || r[k] >= r[k + 1];
    if (rising && peak && r[k] >= kPeriodAcceptance) return k;
  }
  throw Error(ErrorCode::NoPeriodicity, "no autocorrelation peak of at least 0.3");
}

std::vector<double> smooth3(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = values[i];
    int count = 1;
    if (i > 0) {
      sum += values[i - 1];
      ++count;
    }
    if (i + 1 < n) {
      sum += values[i + 1];
      ++count;
    }
    out[i] = sum / count;
  }
  return out;
}

std::vector<GaitCycle> partition_cycles(const WidthSignal& signal, int period) {
  if (period < kMinPeriod) throw Error(ErrorCode::InvalidArgument, "period must be at least 4 frames");
  const int n = static_cast<int>(signal.values.size());
  if (n < period) throw Error(ErrorCode::SequenceTooShort, "signal shorter than one period");

  const auto s = smooth3(signal.values);
  int start = 0;
  for (int t = 0; t + 1 < n; ++t) {
    const bool left = t == 0 || s[t] >= s[t - 1];
    if (left && s[t] > s[t + 1]) {
      start = t;
      break;
    }
  }

  std::vector<GaitCycle> cycles;
  for (int b = start; b + period <= n; b += period) cycles.push_back({b, b + period - 1, period});
  if (cycles.empty())
    throw Error(ErrorCode::SequenceTooShort, "no complete cycle after the first width maximum");
  return cycles;
}

std::vector<GaitCycle> select_feature_window(std::span<const GaitCycle> cycles) {
  if (cycles.size() < 2) throw Error(ErrorCode::InsufficientCycles, "feature window needs two complete cycles");
  return {cycles[0], cycles[1]};
}

} // namespace gaitlock
