#include <doctest.h>

#include <png.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "ctslim/codec.hpp"
#include "ctslim/rng.hpp"
#include "ctslim/scan.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace ctslim;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

SliceImage integer_image(int h, int w, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return oracles::random_image_u8(h, w, rng);
}

}  // namespace

TEST_CASE("png round-trips 8-bit gray exactly") {
  TempDir dir("ctslim_png_roundtrip");
  const SliceImage img = integer_image(33, 47, 1);
  write_png_gray8(img, dir.path / "img.png");
  const SliceImage back = read_image(dir.path / "img.png");
  CHECK(back.height == 33);
  CHECK(back.width == 47);
  CHECK(back.pixels == img.pixels);
}

TEST_CASE("png writes are byte-identical across runs") {
  TempDir dir("ctslim_png_determinism");
  const SliceImage img = integer_image(64, 64, 2);
  write_png_gray8(img, dir.path / "a.png");
  write_png_gray8(img, dir.path / "b.png");
  std::ifstream a(dir.path / "a.png", std::ios::binary), b(dir.path / "b.png", std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
  CHECK_FALSE(bytes_a.empty());
}

TEST_CASE("numeric stems order 1, 2, 10") {
  TempDir dir("ctslim_order");
  const SliceImage img(4, 4, 9.f);
  for (const char* name : {"2.png", "10.png", "1.png"}) write_png_gray8(img, dir.path / name);
  const auto files = list_scan_files(dir.path);
  REQUIRE(files.size() == 3);
  CHECK(files[0].filename() == "1.png");
  CHECK(files[1].filename() == "2.png");
  CHECK(files[2].filename() == "10.png");
}

TEST_CASE("embedded and zero-padded numbers sort numerically") {
  TempDir dir("ctslim_order2");
  const SliceImage img(4, 4, 9.f);
  for (const char* name : {"slice_010.png", "slice_9.png", "slice_0100.png"})
    write_png_gray8(img, dir.path / name);
  const auto files = list_scan_files(dir.path);
  CHECK(files[0].filename() == "slice_9.png");
  CHECK(files[1].filename() == "slice_010.png");
  CHECK(files[2].filename() == "slice_0100.png");
}

TEST_CASE("stems without digits fall back to lexicographic order") {
  TempDir dir("ctslim_order3");
  const SliceImage img(4, 4, 9.f);
  for (const char* name : {"b7.png", "apex.png", "a9.png"}) write_png_gray8(img, dir.path / name);
  const auto files = list_scan_files(dir.path);
  CHECK(files[0].filename() == "a9.png");
  CHECK(files[1].filename() == "apex.png");
  CHECK(files[2].filename() == "b7.png");
}

TEST_CASE("load_scan ingests a single slice") {
  TempDir dir("ctslim_single");
  write_png_gray8(integer_image(512, 512, 3), dir.path / "0.png");
  const ScanVolume scan = load_scan(dir.path);
  CHECK(scan.scan_id == "ctslim_single");
  REQUIRE(scan.slices.size() == 1);
  CHECK(scan.slices[0].height == 512);
  CHECK(scan.slices[0].width == 512);
  CHECK(scan.label == Label::kUnknown);
}

TEST_CASE("mixed dimensions name the offending file") {
  TempDir dir("ctslim_mixed");
  write_png_gray8(SliceImage(16, 16, 1.f), dir.path / "1.png");
  write_png_gray8(SliceImage(8, 8, 1.f), dir.path / "2.png");
  try {
    load_scan(dir.path);
    FAIL("expected dimension mismatch");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("2.png") != std::string::npos);
  }
}

TEST_CASE("empty directories and undecodable files are errors") {
  TempDir dir("ctslim_bad");
  CHECK_THROWS_AS(load_scan(dir.path), Error);

  std::ofstream(dir.path / "junk.png") << "this is not a png";
  try {
    load_scan(dir.path);
    FAIL("expected decode failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("junk.png") != std::string::npos);
  }
}

TEST_CASE("non-image files are ignored") {
  TempDir dir("ctslim_ignore");
  write_png_gray8(SliceImage(8, 8, 5.f), dir.path / "1.png");
  std::ofstream(dir.path / "notes.txt") << "sidecar";
  const ScanVolume scan = load_scan(dir.path);
  CHECK(scan.slices.size() == 1);
}

TEST_CASE("loading is deterministic") {
  TempDir dir("ctslim_determ");
  for (int i = 0; i < 4; ++i)
    write_png_gray8(integer_image(24, 24, 100 + i), dir.path / (std::to_string(i) + ".png"));
  const ScanVolume a = load_scan(dir.path);
  const ScanVolume b = load_scan(dir.path);
  REQUIRE(a.slices.size() == b.slices.size());
  for (std::size_t i = 0; i < a.slices.size(); ++i)
    CHECK(a.slices[i].pixels == b.slices[i].pixels);
}

TEST_CASE("gray png read back is the identity") {
  TempDir dir("ctslim_gray");
  SliceImage ramp(1, 256);
  for (int j = 0; j < 256; ++j) ramp.at(0, j) = static_cast<float>(j);
  write_png_gray8(ramp, dir.path / "ramp.png");
  const SliceImage back = read_image(dir.path / "ramp.png");
  for (int j = 0; j < 256; ++j) CHECK(back.at(0, j) == static_cast<float>(j));
}

TEST_CASE("rgb png collapses to rec601 luminance") {
  TempDir dir("ctslim_rgb");
  const int w = 256;
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * 3);
  for (int j = 0; j < w; ++j) {
    rgb[j * 3 + 0] = static_cast<std::uint8_t>(j);        // gray ramp
    rgb[j * 3 + 1] = static_cast<std::uint8_t>(j);
    rgb[j * 3 + 2] = static_cast<std::uint8_t>(j);
  }
  rgb[0] = 10, rgb[1] = 20, rgb[2] = 30;  // one color pixel
  png_image im;
  std::memset(&im, 0, sizeof(im));
  im.version = PNG_IMAGE_VERSION;
  im.width = w;
  im.height = 1;
  im.format = PNG_FORMAT_RGB;
  REQUIRE(png_image_write_to_file(&im, (dir.path / "rgb.png").string().c_str(), 0, rgb.data(), 0,
                                  nullptr));
  const SliceImage back = read_image(dir.path / "rgb.png");
  CHECK(back.at(0, 0) == luminance_rec601(10, 20, 30));
  for (int j = 1; j < w; ++j) CHECK(back.at(0, j) == static_cast<float>(j));  // (v,v,v) -> v
}

TEST_CASE("16-bit png is rejected") {
  TempDir dir("ctslim_16bit");
  const int w = 8;
  std::vector<std::uint16_t> gray16(w, 0x7fff);
  png_image im;
  std::memset(&im, 0, sizeof(im));
  im.version = PNG_IMAGE_VERSION;
  im.width = w;
  im.height = 1;
  im.format = PNG_FORMAT_LINEAR_Y;
  REQUIRE(png_image_write_to_file(&im, (dir.path / "deep.png").string().c_str(), 0, gray16.data(),
                                  0, nullptr));
  CHECK_THROWS_AS(read_image(dir.path / "deep.png"), Error);
}
