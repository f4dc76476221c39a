#include "gaitlock/segmentation.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace gaitlock {

namespace {

std::optional<BoundingBox> tight_box(int w, int h, std::span<const std::uint8_t> m) {
  BoundingBox box{w, h, -1, -1};
  bool any = false;
  for (int y = 0; y < h; ++y) {
    const auto* row = m.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      if (!row[x]) continue;
      any = true;
      box.x_min = std::min(box.x_min, x);
      box.x_max = std::max(box.x_max, x);
      box.y_min = std::min(box.y_min, y);
      box.y_max = std::max(box.y_max, y);
    }
  }
  if (!any) return std::nullopt;
  return box;
}

// Labels 8-connected components; returns labels (0 = background) and sizes
// indexed by label - 1, labels assigned in raster order of first pixel.
std::vector<std::size_t> label_components(int w, int h, std::span<const std::uint8_t> m,
                                          std::vector<int>& labels) {
  labels.assign(m.size(), 0);
  std::vector<std::size_t> sizes;
  std::vector<int> stack;
  for (int start = 0; start < static_cast<int>(m.size()); ++start) {
    if (!m[start] || labels[start]) continue;
    const int label = static_cast<int>(sizes.size()) + 1;
    std::size_t size = 0;
    labels[start] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      ++size;
      const int x = idx % w;
      const int y = idx / w;
      for (int dy = -1; dy <= 1; ++dy) {
        const int ny = y + dy;
        if (ny < 0 || ny >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          if (nx < 0 || nx >= w) continue;
          const int nidx = ny * w + nx;
          if (m[nidx] && !labels[nidx]) {
            labels[nidx] = label;
            stack.push_back(nidx);
          }
        }
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

} // namespace

SilhouetteMask::SilhouetteMask(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::BadDimensions, "mask dimensions must be positive");
  if (mask_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error(ErrorCode::BadDimensions, "mask size does not equal width * height");
  for (auto& v : mask_) v = v ? 1 : 0;
  bbox_ = tight_box(width_, height_, mask_);
}

std::size_t SilhouetteMask::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

std::optional<double> SilhouetteMask::centroid_x() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (at(x, y)) {
        sum += x;
        ++n;
      }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

Frame SilhouetteMask::to_frame() const {
  std::vector<std::uint8_t> px(mask_.size());
  std::transform(mask_.begin(), mask_.end(), px.begin(), [](std::uint8_t v) { return v ? 255 : 0; });
  return Frame(width_, height_, std::move(px));
}

SilhouetteMask SilhouetteMask::from_frame(const Frame& frame) {
  std::vector<std::uint8_t> m(frame.size());
  const auto px = frame.pixels();
  std::transform(px.begin(), px.end(), m.begin(), [](std::uint8_t v) { return v > 127 ? 1 : 0; });
  return SilhouetteMask(frame.width(), frame.height(), std::move(m));
}

SilhouetteMask difference_mask(const Frame& frame, const BackgroundModel& bg, Threshold threshold) {
  if (!frame.same_shape(bg.reference))
    throw Error(ErrorCode::DimensionMismatch, "frame and background differ in size");
  const auto a = frame.pixels();
  const auto b = bg.reference.pixels();
  std::vector<std::uint8_t> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = static_cast<std::uint8_t>(std::abs(int(a[i]) - int(b[i])));

  int t = 0;
  if (threshold.is_auto()) {
    Histogram256 hist{};
    for (auto d : diff) ++hist[d];
    t = otsu_threshold(hist);
  } else {
    t = threshold.value();
  }
  for (auto& d : diff) d = d > t ? 1 : 0;
  return SilhouetteMask(frame.width(), frame.height(), std::move(diff));
}

SilhouetteMask clean_mask(const SilhouetteMask& raw) {
  const int w = raw.width();
  const int h = raw.height();
  if (w == 0 || h == 0) return raw;
  const auto in = raw.mask();

  std::vector<std::uint8_t> voted(in.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int ones = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int ny = y + dy;
        if (ny < 0 || ny >= h) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          if (nx >= 0 && nx < w) ones += in[static_cast<std::size_t>(ny) * w + nx];
        }
      }
      voted[static_cast<std::size_t>(y) * w + x] = ones >= 5 ? 1 : 0;
    }
  }

  std::vector<int> labels;
  const auto sizes = label_components(w, h, voted, labels);
  if (sizes.empty()) return SilhouetteMask(w, h, std::move(voted));
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()) + 1;
  for (std::size_t i = 0; i < voted.size(); ++i) voted[i] = labels[i] == keep ? 1 : 0;
  return SilhouetteMask(w, h, std::move(voted));
}

std::size_t count_components(const SilhouetteMask& mask) {
  std::vector<int> labels;
  return label_components(mask.width(), mask.height(), mask.mask(), labels).size();
}

std::vector<SilhouetteMask> segment_sequence(const FrameSequence& seq, const BackgroundModel& bg,
                                             Threshold threshold) {
  std::vector<SilhouetteMask> out;
  out.reserve(seq.size());
  for (const auto& f : seq.frames()) out.push_back(clean_mask(difference_mask(f, bg, threshold)));
  return out;
}

} // namespace gaitlock
