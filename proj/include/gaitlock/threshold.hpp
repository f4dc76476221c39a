#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace gaitlock {

using Histogram256 = std::array<std::uint64_t, 256>;

// Otsu's method. Returns t maximizing between-class variance of the split
// {0..t} / {t+1..255}; values strictly greater than t form the upper class.
// A histogram concentrated in one bin returns that bin.
int otsu_threshold(const Histogram256& histogram);

// Either a fixed intensity or `auto` (Otsu).
class Threshold {
public:
  static Threshold automatic() { return Threshold(); }
  static Threshold fixed(int value);
  // Accepts "auto" or an integer in [0, 255].
  static Threshold parse(const std::string& text);

  bool is_auto() const noexcept { return !value_; }
  int value() const { return *value_; }
  std::string to_string() const;

private:
  Threshold() = default;
  std::optional<int> value_;
};

} // namespace gaitlock
