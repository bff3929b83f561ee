#pragma once

#include <array>
#include <cmath>

#include "augen/error.hpp"
#include "augen/image.hpp"

namespace augen {

/// Gain/bias pair for the pointwise transform g = alpha * f + beta.
/// alpha is dimensionless; beta is expressed in the image's domain units.
struct AffineParams {
  double alpha = 1.0;
  double beta = 0.0;
};

inline void validate(const AffineParams& params) {
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
    raise(errc::invalid_params, "alpha must be positive and finite");
  if (!std::isfinite(params.beta)) raise(errc::domain_mismatch, "beta must be finite");
}

/// Enhance an image with g = clip(alpha * f + beta, lo, hi). Byte255 outputs
/// are rounded to the nearest level, ties away from zero; Unit outputs stay
/// real. Returns a new image; the input is untouched.
inline Image apply_affine(const Image& image, const AffineParams& params) {
  validate(params);
  Image out(image.width, image.height, image.channels, image.domain);
  const std::size_t n = image.pixels.size();
  if (image.domain.kind == DomainKind::Byte255) {
    // Byte255 pixels are integral levels, so the transform collapses to a
    // 256-entry lookup table and a single pass.
    std::array<float, 256> lut;
    for (int level = 0; level < 256; ++level) {
      const double v = detail::clamp_unchecked(params.alpha * level + params.beta, 0.0, 255.0);
      lut[level] = static_cast<float>(std::llround(v));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int level = detail::clamp_unchecked(static_cast<int>(image.pixels[i]), 0, 255);
      out.pixels[i] = lut[level];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = params.alpha * static_cast<double>(image.pixels[i]) + params.beta;
      out.pixels[i] = static_cast<float>(detail::clamp_unchecked(v, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace augen
