#include "gaitlock/threshold.hpp"

#include "gaitlock/error.hpp"

#include <charconv>

namespace gaitlock {

int otsu_threshold(const Histogram256& histogram) {
  double total = 0.0;
  double weighted = 0.0;
  for (int i = 0; i < 256; ++i) {
    total += static_cast<double>(histogram[i]);
    weighted += static_cast<double>(i) * static_cast<double>(histogram[i]);
  }
  if (total == 0.0) return 0;

  int lowest = 0;
  while (histogram[lowest] == 0) ++lowest;

  double w0 = 0.0;
  double sum0 = 0.0;
  double best = -1.0;
  int best_t = lowest;
  for (int t = 0; t < 255; ++t) {
    w0 += static_cast<double>(histogram[t]);
    sum0 += static_cast<double>(t) * static_cast<double>(histogram[t]);
    const double w1 = total - w0;
    if (w0 == 0.0) continue;
    if (w1 == 0.0) break;
    const double mu0 = sum0 / w0;
    const double mu1 = (weighted - sum0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best) {
      best = between;
      best_t = t;
    }
  }
  if (best < 0.0) return lowest; // single occupied bin
  return best_t;
}

Threshold Threshold::fixed(int value) {
  if (value < 0 || value > 255) throw Error(ErrorCode::InvalidArgument, "threshold must be in [0, 255]");
  Threshold t;
  t.value_ = value;
  return t;
}

Threshold Threshold::parse(const std::string& text) {
  if (text == "auto") return automatic();
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw Error(ErrorCode::InvalidArgument, "threshold must be 'auto' or an integer, got '" + text + "'");
  return fixed(v);
}

std::string Threshold::to_string() const { return is_auto() ? "auto" : std::to_string(*value_); }

} // namespace gaitlock
