#include "gaitlock/error.hpp"
#include "gaitlock/imagery.hpp"
#include "support/tempdir.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace gaitlock;
using gaitlock::testing::TempDir;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gaitlock::Error");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("frame invariants") {
  CHECK_THROWS_AS(Frame(0, 3), Error);
  CHECK_THROWS_AS(Frame(2, 2, std::vector<std::uint8_t>{1, 2, 3}), Error);
  Frame f(3, 2, 9);
  CHECK(f.size() == 6);
  f.at(2, 1) = 200;
  CHECK(f.pixels()[5] == 200);
}

TEST_CASE("sequence requires equal shapes and positive fps") {
  CHECK(code_of([] { FrameSequence({Frame(4, 4), Frame(8, 8)}, 25.0); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { FrameSequence({}, 25.0); }) == ErrorCode::Empty);
  CHECK(code_of([] { FrameSequence({Frame(4, 4)}, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("load three constant frames") {
  TempDir dir;
  std::vector<Frame> frames(3, Frame(4, 4, 128));
  save_sequence(dir.path(), frames);
  const auto seq = load_sequence(dir.path(), 25.0);
  REQUIRE(seq.size() == 3);
  for (const auto& f : seq.frames()) CHECK(f == Frame(4, 4, 128));
  CHECK(seq.fps() == 25.0);
}

TEST_CASE("2x2 frame survives byte-exact") {
  TempDir dir;
  const Frame f(2, 2, std::vector<std::uint8_t>{0, 255, 128, 64});
  write_pgm(dir / frame_filename(1), f);
  const auto seq = load_sequence(dir.path(), 25.0);
  REQUIRE(seq.size() == 1);
  CHECK(seq[0] == f);
}

TEST_CASE("mixed sizes are rejected") {
  TempDir dir;
  write_pgm(dir / "frame_0001.pgm", Frame(4, 4));
  write_pgm(dir / "frame_0002.pgm", Frame(8, 8));
  CHECK(code_of([&] { load_sequence(dir.path(), 25.0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("empty directory and malformed files") {
  TempDir dir;
  CHECK(code_of([&] { load_sequence(dir.path(), 25.0); }) == ErrorCode::EmptyDirectory);
  std::ofstream(dir / "notes.txt") << "ignored";
  CHECK(code_of([&] { load_sequence(dir.path(), 25.0); }) == ErrorCode::EmptyDirectory);
  std::ofstream(dir / "frame_0001.pgm", std::ios::binary) << "P5\n4 4\n255\nabc";
  CHECK(code_of([&] { load_sequence(dir.path(), 25.0); }) == ErrorCode::DecodeError);
  std::ofstream(dir / "frame_0001.pgm", std::ios::binary) << "JUNK";
  CHECK(code_of([&] { load_sequence(dir.path(), 25.0); }) == ErrorCode::DecodeError);
}

TEST_CASE("ordering follows the numeric index, not the listing") {
  TempDir dir;
  // Written out of order, with a wider index that sorts first as text.
  write_pgm(dir / "frame_0010.pgm", Frame(2, 1, 10));
  write_pgm(dir / "frame_0002.pgm", Frame(2, 1, 2));
  write_pgm(dir / "frame_00001.pgm", Frame(2, 1, 1));
  const auto seq = load_sequence(dir.path(), 25.0);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0].at(0, 0) == 1);
  CHECK(seq[1].at(0, 0) == 2);
  CHECK(seq[2].at(0, 0) == 10);
}

TEST_CASE("random frames round trip bit-identically") {
  TempDir dir;
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 37), h = 1 + static_cast<int>(rng() % 23);
    std::vector<std::uint8_t> px(static_cast<std::size_t>(w * h));
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    const Frame f(w, h, px);
    write_pgm(dir / "x.pgm", f);
    CHECK(read_pnm(dir / "x.pgm") == f);
  }
}

TEST_CASE("color input is converted to luminance") {
  TempDir dir;
  std::ofstream out(dir / "frame_0001.ppm", std::ios::binary);
  out << "P6\n2 1\n255\n";
  const unsigned char rgb[] = {255, 0, 0, 10, 200, 30};
  out.write(reinterpret_cast<const char*>(rgb), sizeof rgb);
  out.close();
  const auto seq = load_sequence(dir.path(), 25.0);
  CHECK(seq[0].at(0, 0) == 76);  // 0.299 * 255 = 76.245
  CHECK(seq[0].at(1, 0) == 124); // 2.99 + 117.4 + 3.42 = 123.81
}

TEST_CASE("ascii PGM with comments and a smaller maxval") {
  TempDir dir;
  std::ofstream(dir / "a.pgm") << "P2\n# comment\n2 1\n15\n0 15\n";
  const auto f = read_pnm(dir / "a.pgm");
  CHECK(f.at(0, 0) == 0);
  CHECK(f.at(1, 0) == 255);
}
