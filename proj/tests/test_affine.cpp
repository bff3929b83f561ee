#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "augen/affine.hpp"
#include "testutil.hpp"

using namespace augen;

namespace {

// Scalar reference: the transform one pixel at a time in double precision,
// independent of the lookup-table path inside apply_affine.
float reference_pixel(float f, double alpha, double beta, PixelDomain domain) {
  const double v = alpha * static_cast<double>(f) + beta;
  const double clipped = std::min(std::max(v, domain.lo()), domain.hi());
  if (domain.kind == DomainKind::Byte255) return static_cast<float>(std::llround(clipped));
  return static_cast<float>(clipped);
}

}  // namespace

TEST_CASE("apply_affine matches hand-checked scalars", "[affine]") {
  Image img(1, 1, 1, byte_domain);
  img.pixels[0] = 100.0f;
  CHECK(apply_affine(img, {1.15, -0.1}).pixels[0] == 115.0f);  // 114.9 rounds to nearest

  img.pixels[0] = 255.0f;
  CHECK(apply_affine(img, {1.35, 0.4}).pixels[0] == 255.0f);  // clipped

  Image unit(1, 1, 1, unit_domain);
  unit.pixels[0] = 0.5f;
  CHECK(apply_affine(unit, {1.35, 0.4}).pixels[0] == 1.0f);  // 1.075 clips to hi
}

TEST_CASE("apply_affine with alpha=1 beta=0 is the bit-exact identity", "[affine]") {
  std::mt19937_64 rng(21);
  for (auto domain : {byte_domain, unit_domain}) {
    const Image img = testutil::random_image(rng, 16, 9, 3, domain);
    CHECK(apply_affine(img, {1.0, 0.0}) == img);
  }
}

TEST_CASE("apply_affine rejects bad parameters", "[affine]") {
  std::mt19937_64 rng(22);
  const Image img = testutil::random_image(rng, 2, 2, 1);
  for (double alpha : {0.0, -1.0}) {
    CHECK_THROWS_MATCHES(apply_affine(img, {alpha, 0.0}), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::invalid_params; }));
  }
  CHECK_THROWS_MATCHES(apply_affine(img, {1.0, std::nan("")}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::domain_mismatch; }));
}

TEST_CASE("apply_affine equals the scalar reference", "[affine]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> alpha_dist(0.05, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const PixelDomain domain = trial % 2 ? unit_domain : byte_domain;
    const Image img = testutil::random_image(rng, 1 + trial % 17, 1 + trial % 13,
                                             trial % 3 ? 1 : 3, domain);
    const double alpha = alpha_dist(rng);
    std::uniform_real_distribution<double> beta_dist(-0.2 * domain.hi(), 0.5 * domain.hi());
    const double beta = beta_dist(rng);

    const Image out = apply_affine(img, {alpha, beta});
    REQUIRE(out.same_shape(img));
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
      REQUIRE(out.pixels[i] == reference_pixel(img.pixels[i], alpha, beta, domain));
  }
}

TEST_CASE("apply_affine keeps every output within the domain", "[affine]") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> alpha_dist(0.01, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PixelDomain domain = trial % 2 ? unit_domain : byte_domain;
    const Image img = testutil::random_image(rng, 8, 8, 1, domain);
    std::uniform_real_distribution<double> beta_dist(-2.0 * domain.hi(), 2.0 * domain.hi());
    const Image out = apply_affine(img, {alpha_dist(rng), beta_dist(rng)});
    for (float v : out.pixels) REQUIRE((v >= domain.lo() && v <= domain.hi()));
  }
}

TEST_CASE("apply_affine preserves pixelwise order under positive gain", "[affine]") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    Image lo = testutil::random_image(rng, 6, 6, 1);
    Image hi = lo;
    std::uniform_int_distribution<int> bump(0, 40);
    for (std::size_t i = 0; i < hi.pixels.size(); ++i)
      hi.pixels[i] = std::min(255.0f, hi.pixels[i] + static_cast<float>(bump(rng)));
    const AffineParams params{0.5 + trial * 0.05, trial - 25.0};
    const Image out_lo = apply_affine(lo, params);
    const Image out_hi = apply_affine(hi, params);
    for (std::size_t i = 0; i < out_lo.pixels.size(); ++i)
      REQUIRE(out_lo.pixels[i] <= out_hi.pixels[i]);
  }
}

TEST_CASE("apply_affine treats channels independently", "[affine]") {
  std::mt19937_64 rng(26);
  const Image rgb = testutil::random_image(rng, 7, 5, 3);
  const AffineParams params{1.25, 12.0};
  const Image out = apply_affine(rgb, params);

  for (int c = 0; c < 3; ++c) {
    Image channel(rgb.width, rgb.height, 1, rgb.domain);
    for (int y = 0; y < rgb.height; ++y)
      for (int x = 0; x < rgb.width; ++x) channel.at(x, y) = rgb.at(x, y, c);
    const Image out_channel = apply_affine(channel, params);
    for (int y = 0; y < rgb.height; ++y)
      for (int x = 0; x < rgb.width; ++x) REQUIRE(out.at(x, y, c) == out_channel.at(x, y));
  }
}

TEST_CASE("apply_affine is pure", "[affine]") {
  std::mt19937_64 rng(27);
  const Image img = testutil::random_image(rng, 9, 4, 1);
  const Image copy = img;
  const Image a = apply_affine(img, {1.15, 0.4});
  const Image b = apply_affine(img, {1.15, 0.4});
  CHECK(a == b);
  CHECK(img == copy);  // input untouched
}
