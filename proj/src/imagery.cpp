#include "gaitlock/imagery.hpp"

#include "gaitlock/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>
#include <string>

namespace fs = std::filesystem;

namespace gaitlock {

Frame::Frame(int width, int height, std::uint8_t fill) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::BadDimensions, "frame dimensions must be positive");
  width_ = width;
  height_ = height;
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::BadDimensions, "frame dimensions must be positive");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error(ErrorCode::BadDimensions, "pixel count does not equal width * height");
  width_ = width;
  height_ = height;
  pixels_ = std::move(pixels);
}

FrameSequence::FrameSequence(std::vector<Frame> frames, double fps)
    : frames_(std::move(frames)), fps_(fps) {
  if (frames_.empty()) throw Error(ErrorCode::Empty, "frame sequence is empty");
  if (!(fps_ > 0.0) || !std::isfinite(fps_))
    throw Error(ErrorCode::InvalidArgument, "fps must be positive");
  for (const auto& f : frames_) {
    if (f.empty()) throw Error(ErrorCode::BadDimensions, "frame has no pixels");
    if (!f.same_shape(frames_.front()))
      throw Error(ErrorCode::DimensionMismatch, "frames differ in size");
  }
}

std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

namespace {

class PnmReader {
public:
  PnmReader(std::string data, const fs::path& path) : data_(std::move(data)), path_(path) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::DecodeError, path_.string() + ": " + why);
  }

  void skip_space() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number() {
    skip_space();
    const std::size_t begin = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (begin == pos_) fail("expected a decimal number");
    if (pos_ - begin > 9) fail("number too large");
    return std::stol(data_.substr(begin, pos_ - begin));
  }

  std::string magic() {
    if (data_.size() < 2 || data_[0] != 'P') fail("not a netpbm file");
    pos_ = 2;
    return data_.substr(0, 2);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void binary_start() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
      fail("missing separator before raster");
    ++pos_;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  unsigned char byte() { return static_cast<unsigned char>(data_[pos_++]); }

private:
  std::string data_;
  fs::path path_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(long v, long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

} // namespace

Frame read_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  PnmReader rd(std::move(data), path);

  const std::string magic = rd.magic();
  const bool color = magic == "P6" || magic == "P3";
  const bool binary = magic == "P5" || magic == "P6";
  if (magic != "P5" && magic != "P2" && !color) rd.fail("unsupported netpbm variant " + magic);

  const long width = rd.number();
  const long height = rd.number();
  const long maxval = rd.number();
  if (width <= 0 || height <= 0) rd.fail("non-positive dimensions");
  if (maxval <= 0 || maxval > 255) rd.fail("maxval must be in 1..255");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t channels = color ? 3 : 1;
  std::vector<std::uint8_t> pixels(count);
  if (binary) rd.binary_start();
  if (binary && rd.remaining() < count * channels) rd.fail("truncated raster");

  auto sample = [&]() -> long {
    const long v = binary ? static_cast<long>(rd.byte()) : rd.number();
    if (v > maxval) rd.fail("sample exceeds maxval");
    return v;
  };
  for (std::size_t i = 0; i < count; ++i) {
    if (color) {
      const auto r = rescale(sample(), maxval);
      const auto g = rescale(sample(), maxval);
      const auto b = rescale(sample(), maxval);
      pixels[i] = luminance(r, g, b);
    } else {
      pixels[i] = rescale(sample(), maxval);
    }
  }
  return Frame(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

void write_pgm(const fs::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  const auto px = frame.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::string frame_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04zu.pgm", index);
  return buf;
}

FrameSequence load_sequence(const fs::path& directory, double fps) {
  if (!fs::is_directory(directory))
    throw Error(ErrorCode::EmptyDirectory, directory.string() + " is not a directory");

  static const std::regex pattern(R"(frame_(\d+)\.(pgm|ppm))");
  std::map<unsigned long long, fs::path> indexed;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) continue;
    const auto idx = std::stoull(m[1].str());
    if (!indexed.emplace(idx, entry.path()).second)
      throw Error(ErrorCode::DecodeError, "duplicate frame index " + m[1].str() + " in " + directory.string());
  }
  if (indexed.empty())
    throw Error(ErrorCode::EmptyDirectory, "no frame_<NNNN>.pgm files in " + directory.string());

  std::vector<Frame> frames;
  frames.reserve(indexed.size());
  for (const auto& [idx, path] : indexed) {
    frames.push_back(read_pnm(path));
    if (!frames.back().same_shape(frames.front()))
      throw Error(ErrorCode::DimensionMismatch, path.string() + " differs in size from the first frame");
  }
  return FrameSequence(std::move(frames), fps);
}

void save_sequence(const fs::path& directory, std::span<const Frame> frames) {
  fs::create_directories(directory);
  for (std::size_t i = 0; i < frames.size(); ++i) write_pgm(directory / frame_filename(i + 1), frames[i]);
}

} // namespace gaitlock
