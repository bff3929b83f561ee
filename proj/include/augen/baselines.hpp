#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "augen/error.hpp"
#include "augen/image.hpp"

namespace augen {

struct GammaParams {
  double gamma = 1.0;
};

namespace detail {

inline std::array<std::uint64_t, 256> level_histogram(const Image& image) {
  std::array<std::uint64_t, 256> hist{};
  for (float v : image.pixels) ++hist[clamp_unchecked(static_cast<int>(v), 0, 255)];
  return hist;
}

inline Image apply_level_map(const Image& image, const std::array<float, 256>& lut) {
  Image out(image.width, image.height, image.channels, image.domain);
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    out.pixels[i] = lut[clamp_unchecked(static_cast<int>(image.pixels[i]), 0, 255)];
  return out;
}

}  // namespace detail

/// Global histogram equalization for grayscale Byte255 images:
/// out = round(255 * (CDF(f) - CDF_min) / (N - CDF_min)) with CDF_min the
/// smallest nonzero cumulative count. A constant image maps to level 0
/// (degenerate denominator).
inline Image histogram_equalize(const Image& image) {
  if (image.channels != 1)
    raise(errc::unsupported_channels, "histogram_equalize: grayscale input required");
  if (image.domain.kind != DomainKind::Byte255)
    raise(errc::unsupported_domain, "histogram_equalize: Byte255 input required");

  const auto hist = detail::level_histogram(image);
  std::array<std::uint64_t, 256> cdf{};
  std::uint64_t running = 0, cdf_min = 0;
  for (int l = 0; l < 256; ++l) {
    running += hist[l];
    cdf[l] = running;
    if (cdf_min == 0 && running > 0) cdf_min = running;
  }
  const std::uint64_t n = image.pixels.size();

  std::array<float, 256> lut{};
  for (int l = 0; l < 256; ++l) {
    if (n > cdf_min) {
      const double v = 255.0 * static_cast<double>(cdf[l] - cdf_min) / static_cast<double>(n - cdf_min);
      lut[l] = static_cast<float>(std::llround(v));
    } else {
      lut[l] = 0.0f;
    }
  }
  return detail::apply_level_map(image, lut);
}

/// Power-law correction out = hi * (f / hi)^gamma, rounded in Byte255.
/// Works on grayscale and RGB in either domain.
inline Image gamma_correct(const Image& image, const GammaParams& params) {
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma))
    raise(errc::invalid_params, "gamma must be positive and finite");
  if (image.domain.kind == DomainKind::Byte255) {
    std::array<float, 256> lut{};
    for (int l = 0; l < 256; ++l)
      lut[l] = static_cast<float>(std::llround(255.0 * std::pow(l / 255.0, params.gamma)));
    return detail::apply_level_map(image, lut);
  }
  Image out(image.width, image.height, image.channels, image.domain);
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    out.pixels[i] =
        static_cast<float>(std::pow(static_cast<double>(image.pixels[i]), params.gamma));
  return out;
}

/// Per-level gamma modulated by the image's own cumulative distribution:
/// out(l) = round(255 * (l/255)^(1 - c(l))) with c(l) the normalized CDF.
/// The exponent never goes negative, so the level map is monotone
/// non-decreasing. A single-level image has c = 1 and maps to 255 (0^0 = 1
/// under IEEE pow); that degenerate case follows the formula as written.
inline Image adaptive_gamma_cdf(const Image& image) {
  if (image.channels != 1)
    raise(errc::unsupported_channels, "adaptive_gamma_cdf: grayscale input required");
  if (image.domain.kind != DomainKind::Byte255)
    raise(errc::unsupported_domain, "adaptive_gamma_cdf: Byte255 input required");

  const auto hist = detail::level_histogram(image);
  const double n = static_cast<double>(image.pixels.size());
  std::array<float, 256> lut{};
  std::uint64_t running = 0;
  for (int l = 0; l < 256; ++l) {
    running += hist[l];
    const double c = static_cast<double>(running) / n;
    lut[l] = static_cast<float>(std::llround(255.0 * std::pow(l / 255.0, 1.0 - c)));
  }
  return detail::apply_level_map(image, lut);
}

}  // namespace augen
