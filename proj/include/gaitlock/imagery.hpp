#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gaitlock {

// One 8-bit grayscale image, row-major.
class Frame {
public:
  Frame() = default;
  Frame(int width, int height, std::uint8_t fill = 0);
  Frame(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool same_shape(const Frame& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Non-empty list of equally sized frames captured at `fps`.
class FrameSequence {
public:
  FrameSequence(std::vector<Frame> frames, double fps);

  const std::vector<Frame>& frames() const noexcept { return frames_; }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  std::size_t size() const noexcept { return frames_.size(); }
  double fps() const noexcept { return fps_; }
  int width() const noexcept { return frames_.front().width(); }
  int height() const noexcept { return frames_.front().height(); }

private:
  std::vector<Frame> frames_;
  double fps_;
};

// ITU-R BT.601 luma, rounded to nearest.
std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

// Reads P5/P2 (gray) or P6/P3 (color, converted to luminance) netpbm files.
Frame read_pnm(const std::filesystem::path& path);
// Writes binary P5 with maxval 255.
void write_pgm(const std::filesystem::path& path, const Frame& frame);

// `frame_<NNNN>.pgm`, index starting at 1.
std::string frame_filename(std::size_t index);

// Loads every `frame_<N>.pgm` (or `.ppm`) in `directory`, ordered by N.
FrameSequence load_sequence(const std::filesystem::path& directory, double fps);
// Writes frames as frame_0001.pgm, frame_0002.pgm, ... creating the directory.
void save_sequence(const std::filesystem::path& directory, std::span<const Frame> frames);

} // namespace gaitlock
