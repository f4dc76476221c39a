#include "gaitlock/background.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <vector>

namespace gaitlock {

std::string to_string(BackgroundTechnique t) {
  switch (t) {
  case BackgroundTechnique::Cdm: return "cdm";
  case BackgroundTechnique::Median: return "median";
  case BackgroundTechnique::Histogram: return "histogram";
  }
  return "unknown";
}

BackgroundTechnique parse_background_technique(const std::string& text) {
  if (text == "cdm") return BackgroundTechnique::Cdm;
  if (text == "median") return BackgroundTechnique::Median;
  if (text == "histogram") return BackgroundTechnique::Histogram;
  throw Error(ErrorCode::InvalidArgument, "unknown background technique '" + text + "'");
}

namespace {

std::vector<const std::uint8_t*> frame_pointers(const FrameSequence& seq) {
  std::vector<const std::uint8_t*> ptrs;
  ptrs.reserve(seq.size());
  for (const auto& f : seq.frames()) ptrs.push_back(f.pixels().data());
  return ptrs;
}

std::uint8_t lower_median(std::uint8_t* first, std::uint8_t* last) {
  auto* mid = first + (last - first - 1) / 2;
  std::nth_element(first, mid, last);
  return *mid;
}

// Calls fn(pixel_index, history) for every pixel, where history holds that
// pixel's value in each frame. Tiles keep the reads cache friendly.
template <class Fn> void for_each_history(const FrameSequence& seq, Fn&& fn) {
  constexpr std::size_t kTile = 64;
  const auto ptrs = frame_pointers(seq);
  const std::size_t n = ptrs.size();
  const std::size_t npx = static_cast<std::size_t>(seq.width()) * static_cast<std::size_t>(seq.height());
  std::vector<std::uint8_t> tile(kTile * n);
  for (std::size_t base = 0; base < npx; base += kTile) {
    const std::size_t len = std::min(kTile, npx - base);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < len; ++k) tile[k * n + i] = ptrs[i][base + k];
    for (std::size_t k = 0; k < len; ++k) fn(base + k, tile.data() + k * n, tile.data() + (k + 1) * n);
  }
}

} // namespace

BackgroundModel model_median(const FrameSequence& seq) {
  Frame ref(seq.width(), seq.height());
  auto out = ref.pixels();
  for_each_history(seq, [&](std::size_t p, std::uint8_t* first, std::uint8_t* last) { out[p] = lower_median(first, last); });
  return {std::move(ref), BackgroundTechnique::Median, std::nullopt};
}

// A value held by more than half of the frames is the mode, so most pixels
// are settled by counting agreement with frame 0; the rest get a full
// 256-bin count.
BackgroundModel model_histogram(const FrameSequence& seq) {
  constexpr std::size_t kTile = 256;
  const auto ptrs = frame_pointers(seq);
  const std::size_t n = ptrs.size();
  Frame ref(seq.width(), seq.height());
  auto out = ref.pixels();
  std::array<std::uint32_t, kTile> agree{};
  std::array<std::uint32_t, 256> counts{};
  for (std::size_t base = 0; base < out.size(); base += kTile) {
    const std::size_t len = std::min(kTile, out.size() - base);
    const std::uint8_t* first = ptrs[0] + base;
    agree.fill(0);
    for (const auto* f : ptrs)
      for (std::size_t k = 0; k < len; ++k) agree[k] += f[base + k] == first[k];
    for (std::size_t k = 0; k < len; ++k) {
      if (2 * agree[k] > n) {
        out[base + k] = first[k];
        continue;
      }
      for (const auto* f : ptrs) ++counts[f[base + k]];
      int best = 0;
      for (int v = 1; v < 256; ++v)
        if (counts[v] > counts[best]) best = v;
      counts.fill(0);
      out[base + k] = static_cast<std::uint8_t>(best);
    }
  }
  return {std::move(ref), BackgroundTechnique::Histogram, std::nullopt};
}

BackgroundModel model_cdm(const FrameSequence& seq, Threshold threshold) {
  if (seq.size() < 2) throw Error(ErrorCode::TooFewFrames, "change detection needs at least 2 frames");
  const auto ptrs = frame_pointers(seq);
  const std::size_t n = ptrs.size();
  const std::size_t npx = static_cast<std::size_t>(seq.width()) * static_cast<std::size_t>(seq.height());

  int t = 0;
  if (threshold.is_auto()) {
    Histogram256 hist{};
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t p = 0; p < npx; ++p) ++hist[std::abs(int(ptrs[i + 1][p]) - int(ptrs[i][p]))];
    t = std::min(otsu_threshold(hist) + 1, 255);
  } else {
    t = threshold.value();
  }

  Frame ref(seq.width(), seq.height());
  auto out = ref.pixels();
  std::vector<std::uint8_t> column(n);
  for (std::size_t p = 0; p < npx; ++p) {
    std::size_t run_start = 0;
    std::size_t best_start = 0;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = ptrs[i][p];
      const bool boundary =
          i + 1 == n || [&] {
            const int d = std::abs(int(ptrs[i + 1][p]) - int(ptrs[i][p]));
            return d > 0 && d >= t;
          }();
      if (boundary) {
        const std::size_t len = i + 1 - run_start;
        if (len > best_len) {
          best_len = len;
          best_start = run_start;
        }
        run_start = i + 1;
      }
    }
    auto* first = column.data() + best_start;
    out[p] = lower_median(first, first + best_len);
  }
  return {std::move(ref), BackgroundTechnique::Cdm, t};
}

BackgroundModel build_background(const FrameSequence& seq, BackgroundTechnique technique,
                                 Threshold cdm_threshold) {
  switch (technique) {
  case BackgroundTechnique::Cdm: return model_cdm(seq, cdm_threshold);
  case BackgroundTechnique::Median: return model_median(seq);
  case BackgroundTechnique::Histogram: return model_histogram(seq);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown background technique");
}

} // namespace gaitlock
