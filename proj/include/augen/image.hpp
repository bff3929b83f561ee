#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "augen/error.hpp"

namespace augen {

enum class DomainKind : std::uint8_t { Byte255, Unit };

/// Value range pixels live in: 8-bit integer levels [0, 255] or normalized
/// reals [0, 1]. The kind determines the bounds exactly.
struct PixelDomain {
  DomainKind kind = DomainKind::Byte255;

  constexpr double lo() const noexcept { return 0.0; }
  constexpr double hi() const noexcept { return kind == DomainKind::Byte255 ? 255.0 : 1.0; }

  friend constexpr bool operator==(PixelDomain a, PixelDomain b) noexcept { return a.kind == b.kind; }
  friend constexpr bool operator!=(PixelDomain a, PixelDomain b) noexcept { return !(a == b); }
};

inline constexpr PixelDomain byte_domain{DomainKind::Byte255};
inline constexpr PixelDomain unit_domain{DomainKind::Unit};

inline const char* domain_name(PixelDomain d) noexcept {
  return d.kind == DomainKind::Byte255 ? "byte" : "unit";
}

/// Saturate value to [lo, hi].
template <typename T>
inline T clip(T value, T lo, T hi) {
  if (lo > hi) raise(errc::invalid_bounds, "clip: lo > hi");
  return value < lo ? lo : (value > hi ? hi : value);
}

namespace detail {

// Bounds come pre-validated from a PixelDomain; no check in the hot path.
template <typename T>
constexpr T clamp_unchecked(T value, T lo, T hi) noexcept {
  return value < lo ? lo : (value > hi ? hi : value);
}

}  // namespace detail

/// Interleaved row-major raster. Byte255 images hold integral levels stored
/// as floats; Unit images hold reals in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  PixelDomain domain = byte_domain;
  std::vector<float> pixels;  // width * height * channels samples

  Image() = default;
  Image(int w, int h, int c, PixelDomain d)
      : width(w), height(h), channels(c), domain(d),
        pixels(static_cast<std::size_t>(w) * h * c, 0.0f) {}
  Image(int w, int h, int c, PixelDomain d, std::vector<float> px)
      : width(w), height(h), channels(c), domain(d), pixels(std::move(px)) {}

  std::size_t sample_count() const noexcept { return pixels.size(); }

  float& at(int x, int y, int c = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(const Image& other) const noexcept {
    return width == other.width && height == other.height && channels == other.channels &&
           domain == other.domain;
  }

  /// Throws Error when any structural or value invariant is violated.
  void validate() const {
    if (width <= 0 || height <= 0) raise(errc::invalid_params, "image dimensions must be positive");
    if (channels != 1 && channels != 3) raise(errc::unsupported_channels, "channels must be 1 or 3");
    if (pixels.size() != static_cast<std::size_t>(width) * height * channels)
      raise(errc::invalid_params, "pixel buffer size does not match width*height*channels");
    const double lo = domain.lo(), hi = domain.hi();
    const bool integral = domain.kind == DomainKind::Byte255;
    for (float v : pixels) {
      if (!(v >= lo && v <= hi))
        raise(errc::domain_mismatch, "pixel value " + std::to_string(v) + " outside domain bounds");
      if (integral && v != std::floor(v))
        raise(errc::domain_mismatch, "Byte255 pixel value " + std::to_string(v) + " is not integral");
    }
  }
};

inline bool operator==(const Image& a, const Image& b) noexcept {
  return a.same_shape(b) && a.pixels == b.pixels;
}
inline bool operator!=(const Image& a, const Image& b) noexcept { return !(a == b); }

/// Re-express pixels in the target domain. Byte255 -> Unit divides by 255;
/// Unit -> Byte255 multiplies by 255 and rounds to nearest (ties away from
/// zero). Same-domain conversion is the identity.
inline Image convert_domain(const Image& image, PixelDomain target) {
  if (image.domain == target) return image;
  Image out(image.width, image.height, image.channels, target);
  if (target.kind == DomainKind::Unit) {
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
      out.pixels[i] = static_cast<float>(static_cast<double>(image.pixels[i]) / 255.0);
  } else {
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
      out.pixels[i] = static_cast<float>(std::llround(static_cast<double>(image.pixels[i]) * 255.0));
  }
  return out;
}

}  // namespace augen
