#pragma once

#include "gaitlock/background.hpp"
#include "gaitlock/imagery.hpp"
#include "gaitlock/threshold.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gaitlock {

// Inclusive pixel bounds.
struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  int width() const noexcept { return x_max - x_min + 1; }
  int height() const noexcept { return y_max - y_min + 1; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

class SilhouetteMask {
public:
  SilhouetteMask() = default;
  // `mask` holds 0/1 values; any nonzero input is stored as 1.
  SilhouetteMask(int width, int height, std::vector<std::uint8_t> mask);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool at(int x, int y) const { return mask_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  const std::optional<BoundingBox>& bbox() const noexcept { return bbox_; }
  std::size_t foreground_count() const noexcept;
  // Mean column of the foreground pixels.
  std::optional<double> centroid_x() const;

  // 0/255 image for export.
  Frame to_frame() const;
  // Pixels > 127 become foreground.
  static SilhouetteMask from_frame(const Frame& frame);

  friend bool operator==(const SilhouetteMask&, const SilhouetteMask&) = default;

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> mask_;
  std::optional<BoundingBox> bbox_;
};

// Foreground iff |I - B| > T. `auto` applies Otsu to the difference image.
SilhouetteMask difference_mask(const Frame& frame, const BackgroundModel& bg, Threshold threshold);

// 3x3 majority vote (zero padded) followed by keeping only the largest
// 8-connected component. Equal-size components: first in raster order wins.
SilhouetteMask clean_mask(const SilhouetteMask& raw);

// Number of 8-connected foreground components.
std::size_t count_components(const SilhouetteMask& mask);

std::vector<SilhouetteMask> segment_sequence(const FrameSequence& seq, const BackgroundModel& bg,
                                             Threshold threshold);

} // namespace gaitlock
