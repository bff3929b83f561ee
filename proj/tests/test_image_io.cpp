#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "augen/image_io.hpp"
#include "fixtures.hpp"
#include "testutil.hpp"

using namespace augen;

namespace {

void append_u16le(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(x & 0xFF);
  v.push_back((x >> 8) & 0xFF);
}
void append_u32le(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xFF);
}

// Minimal BITMAPINFOHEADER bitmap built by hand.
std::vector<std::uint8_t> make_bmp(int width, int height, int bpp,
                                   const std::vector<std::uint8_t>& palette_bgra,
                                   const std::vector<std::uint8_t>& rows_bottom_up) {
  std::vector<std::uint8_t> bmp = {'B', 'M'};
  const std::uint32_t pixel_offset = 14 + 40 + static_cast<std::uint32_t>(palette_bgra.size());
  append_u32le(bmp, pixel_offset + static_cast<std::uint32_t>(rows_bottom_up.size()));
  append_u32le(bmp, 0);
  append_u32le(bmp, pixel_offset);
  append_u32le(bmp, 40);  // BITMAPINFOHEADER
  append_u32le(bmp, static_cast<std::uint32_t>(width));
  append_u32le(bmp, static_cast<std::uint32_t>(height));
  append_u16le(bmp, 1);
  append_u16le(bmp, static_cast<std::uint16_t>(bpp));
  append_u32le(bmp, 0);  // BI_RGB
  append_u32le(bmp, static_cast<std::uint32_t>(rows_bottom_up.size()));
  append_u32le(bmp, 2835);
  append_u32le(bmp, 2835);
  append_u32le(bmp, static_cast<std::uint32_t>(palette_bgra.size() / 4));
  append_u32le(bmp, 0);
  bmp.insert(bmp.end(), palette_bgra.begin(), palette_bgra.end());
  bmp.insert(bmp.end(), rows_bottom_up.begin(), rows_bottom_up.end());
  return bmp;
}

}  // namespace

TEST_CASE("a 1x1 white PNG decodes to a single 255 pixel", "[image_io]") {
  testutil::TempDir tmp;
  const auto file = tmp.path / "white.png";
  testutil::write_bytes(file, fixtures::kWhite1x1Png);
  const Image img = load_image(file);
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  CHECK((img.channels == 1 || img.channels == 3));
  CHECK(img.domain == byte_domain);
  for (float v : img.pixels) CHECK(v == 255.0f);
}

TEST_CASE("16-bit PNG samples scale as round(v*255/65535)", "[image_io]") {
  testutil::TempDir tmp;
  const auto file = tmp.path / "gray16.png";
  testutil::write_bytes(file, fixtures::kGray16Png);
  const Image img = load_image(file);
  REQUIRE(img.width == 4);
  REQUIRE(img.channels == 1);
  CHECK(img.pixels == std::vector<float>{0.0f, 1.0f, 128.0f, 255.0f});
}

TEST_CASE("RGB PNG decodes with exact channel values", "[image_io]") {
  testutil::TempDir tmp;
  const auto file = tmp.path / "rgb.png";
  testutil::write_bytes(file, fixtures::kRgb2x2Png);
  const Image img = load_image(file);
  REQUIRE(img.channels == 3);
  CHECK(img.at(0, 0, 0) == 255.0f);
  CHECK(img.at(0, 0, 1) == 0.0f);
  CHECK(img.at(1, 0, 1) == 255.0f);
  CHECK(img.at(0, 1, 2) == 255.0f);
  CHECK(img.at(1, 1, 0) == 255.0f);
  CHECK(img.at(1, 1, 1) == 255.0f);
  CHECK(img.at(1, 1, 2) == 255.0f);
}

TEST_CASE("alpha channels are stripped on load", "[image_io]") {
  testutil::TempDir tmp;
  const auto file = tmp.path / "rgba.png";
  testutil::write_bytes(file, fixtures::kRgba1x2Png);
  const Image img = load_image(file);
  REQUIRE(img.channels == 3);
  CHECK(img.at(0, 0, 0) == 10.0f);
  CHECK(img.at(0, 0, 1) == 20.0f);
  CHECK(img.at(0, 0, 2) == 30.0f);
  CHECK(img.at(0, 1, 0) == 40.0f);  // fully transparent pixel keeps its color
}

TEST_CASE("CMYK JPEG is reported as unsupported", "[image_io]") {
  testutil::TempDir tmp;
  const auto file = tmp.path / "cmyk.jpg";
  testutil::write_bytes(file, fixtures::kCmykJpeg);
  CHECK_THROWS_MATCHES(load_image(file), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::unsupported_format;
                       }));
}

TEST_CASE("PNG round-trip is bit-exact", "[image_io]") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const Image img = testutil::random_image(rng, 1 + trial, 1 + trial % 7, trial % 2 ? 3 : 1);
    const auto file = tmp.path / ("rt" + std::to_string(trial) + ".png");
    save_image(img, file, ImageFormat::Png);
    REQUIRE(load_image(file) == img);
  }
}

TEST_CASE("JPEG round-trip is lossy but close on smooth content", "[image_io]") {
  testutil::TempDir tmp;
  Image img(32, 32, 1, byte_domain);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) img.at(x, y) = static_cast<float>(4 * ((x + y) / 2));
  const auto file = tmp.path / "smooth.jpg";
  save_image(img, file, ImageFormat::Jpeg);
  const Image back = load_image(file);
  REQUIRE(back.same_shape(img));
  double err = 0;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    err += std::abs(img.pixels[i] - back.pixels[i]);
  CHECK(err / img.pixels.size() < 5.0);
}

TEST_CASE("truncated JPEG raises a decode error", "[image_io]") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(82);
  const Image img = testutil::random_image(rng, 24, 24, 1);
  const auto file = tmp.path / "full.jpg";
  save_image(img, file, ImageFormat::Jpeg);
  auto bytes = testutil::read_bytes(file);
  bytes.resize(bytes.size() * 6 / 10);
  const auto cut = tmp.path / "cut.jpg";
  testutil::write_bytes(cut, bytes);
  CHECK_THROWS_MATCHES(load_image(cut), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::decode_error;
                       }));
}

TEST_CASE("corrupted PNG raises a decode error", "[image_io]") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(83);
  const Image img = testutil::random_image(rng, 16, 16, 1);
  const auto file = tmp.path / "ok.png";
  save_image(img, file, ImageFormat::Png);
  auto bytes = testutil::read_bytes(file);
  for (std::size_t i = 40; i < std::min<std::size_t>(bytes.size(), 80); ++i) bytes[i] ^= 0xA5;
  const auto bad = tmp.path / "bad.png";
  testutil::write_bytes(bad, bytes);
  CHECK_THROWS_AS(load_image(bad), Error);
}

TEST_CASE("load_image error taxonomy", "[image_io]") {
  testutil::TempDir tmp;
  CHECK_THROWS_MATCHES(load_image(tmp.path / "missing.png"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::io_error; }));

  const auto junk = tmp.path / "junk.png";
  testutil::write_bytes(junk, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK_THROWS_MATCHES(load_image(junk), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::decode_error;
                       }));
}

TEST_CASE("format detection follows magic bytes, not extension", "[image_io]") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(84);
  const Image img = testutil::random_image(rng, 5, 5, 1);
  const auto mislabeled = tmp.path / "actually_png.jpg";
  save_image(img, mislabeled, ImageFormat::Png);
  CHECK(load_image(mislabeled) == img);
}

TEST_CASE("save_image rejects Unit-domain images and bad paths", "[image_io]") {
  testutil::TempDir tmp;
  std::mt19937_64 rng(85);
  const Image unit = testutil::random_image(rng, 3, 3, 1, unit_domain);
  CHECK_THROWS_MATCHES(save_image(unit, tmp.path / "u.png", ImageFormat::Png), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::domain_mismatch; }));

  const Image img = testutil::random_image(rng, 3, 3, 1);
  CHECK_THROWS_MATCHES(save_image(img, tmp.path / "no_dir" / "x.png", ImageFormat::Png), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::io_error; }));
}

TEST_CASE("24-bit BMP decodes BGR rows bottom-up", "[image_io]") {
  testutil::TempDir tmp;
  // 2x2: top row (red, green), bottom row (blue, gray). Rows padded to 4
  // bytes and stored bottom-up.
  std::vector<std::uint8_t> rows = {
      255, 0, 0,  128, 128, 128, 0, 0,  // bottom row: blue, gray + padding
      0,   0, 255, 0,   255, 0,   0, 0,  // top row: red, green + padding
  };
  const auto file = tmp.path / "rgb.bmp";
  testutil::write_bytes(file, make_bmp(2, 2, 24, {}, rows));
  const Image img = load_image(file);
  REQUIRE(img.channels == 3);
  CHECK(img.at(0, 0, 0) == 255.0f);  // red
  CHECK(img.at(1, 0, 1) == 255.0f);  // green
  CHECK(img.at(0, 1, 2) == 255.0f);  // blue
  CHECK(img.at(1, 1, 0) == 128.0f);  // gray
}

TEST_CASE("8-bit BMP with a gray palette loads as grayscale", "[image_io]") {
  testutil::TempDir tmp;
  std::vector<std::uint8_t> palette;
  for (int i = 0; i < 256; ++i) {
    palette.push_back(static_cast<std::uint8_t>(i));  // B
    palette.push_back(static_cast<std::uint8_t>(i));  // G
    palette.push_back(static_cast<std::uint8_t>(i));  // R
    palette.push_back(0);
  }
  const std::vector<std::uint8_t> rows = {7, 200, 33, 0};  // 3x1, padded
  const auto file = tmp.path / "gray.bmp";
  testutil::write_bytes(file, make_bmp(3, 1, 8, palette, rows));
  const Image img = load_image(file);
  REQUIRE(img.channels == 1);
  CHECK(img.pixels == std::vector<float>{7.0f, 200.0f, 33.0f});
}

TEST_CASE("8-bit BMP with a color palette expands to RGB", "[image_io]") {
  testutil::TempDir tmp;
  const std::vector<std::uint8_t> palette = {
      0, 0, 255, 0,  // entry 0: red
      0, 255, 0, 0,  // entry 1: green
  };
  const std::vector<std::uint8_t> rows = {0, 1, 0, 0};  // 2x1, padded
  const auto file = tmp.path / "pal.bmp";
  testutil::write_bytes(file, make_bmp(2, 1, 8, palette, rows));
  const Image img = load_image(file);
  REQUIRE(img.channels == 3);
  CHECK(img.at(0, 0, 0) == 255.0f);
  CHECK(img.at(1, 0, 1) == 255.0f);
}

TEST_CASE("BMP error taxonomy", "[image_io]") {
  testutil::TempDir tmp;
  const std::vector<std::uint8_t> rows = {1, 2, 3, 0};
  auto bmp = make_bmp(1, 1, 24, {}, rows);

  auto truncated = bmp;
  truncated.resize(truncated.size() - 3);
  const auto cut = tmp.path / "cut.bmp";
  testutil::write_bytes(cut, truncated);
  CHECK_THROWS_MATCHES(load_image(cut), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::decode_error;
                       }));

  auto compressed = bmp;
  compressed[30] = 1;  // BI_RLE8
  const auto rle = tmp.path / "rle.bmp";
  testutil::write_bytes(rle, compressed);
  CHECK_THROWS_MATCHES(load_image(rle), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::unsupported_format;
                       }));
}
