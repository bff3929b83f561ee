#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "augen/error.hpp"
#include "augen/image.hpp"

namespace augen {

/// Objective brightness / contrast / information measures. For RGB input the
/// statistics describe the per-pixel channel mean (a plain luminance proxy),
/// so the affine laws mean' = a*mean + b and rms' = a*rms hold exactly
/// before quantization.
struct ImageStats {
  double mean_brightness = 0.0;  // domain units
  double rms_contrast = 0.0;     // population standard deviation
  double entropy = 0.0;          // bits over a 256-bin histogram, in [0, 8]
};

struct MetricsDelta {
  ImageStats before;
  ImageStats after;
  double brightness_gain = 0.0;
  double contrast_gain = 0.0;
};

inline ImageStats compute_stats(const Image& image) {
  const std::size_t pixel_count = static_cast<std::size_t>(image.width) * image.height;
  if (pixel_count == 0) raise(errc::invalid_params, "compute_stats: empty image");
  const int ch = image.channels;
  const double bin_scale = image.domain.kind == DomainKind::Byte255 ? 1.0 : 256.0;

  double sum = 0.0;
  std::array<std::uint64_t, 256> hist{};
  for (std::size_t p = 0; p < pixel_count; ++p) {
    double v = 0.0;
    for (int c = 0; c < ch; ++c) v += image.pixels[p * ch + c];
    v /= ch;
    sum += v;
    const int bin = detail::clamp_unchecked(static_cast<int>(std::floor(v * bin_scale)), 0, 255);
    ++hist[bin];
  }
  const double mean = sum / static_cast<double>(pixel_count);

  double ss = 0.0;
  for (std::size_t p = 0; p < pixel_count; ++p) {
    double v = 0.0;
    for (int c = 0; c < ch; ++c) v += image.pixels[p * ch + c];
    v /= ch;
    ss += (v - mean) * (v - mean);
  }

  double entropy = 0.0;
  for (std::uint64_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(pixel_count);
    entropy -= p * std::log2(p);
  }

  ImageStats stats;
  stats.mean_brightness = mean;
  stats.rms_contrast = std::sqrt(ss / static_cast<double>(pixel_count));
  stats.entropy = entropy;
  return stats;
}

inline MetricsDelta compare(const Image& before, const Image& after) {
  if (!before.same_shape(after))
    raise(errc::dimension_mismatch, "compare: images differ in shape or domain");
  MetricsDelta delta;
  delta.before = compute_stats(before);
  delta.after = compute_stats(after);
  delta.brightness_gain = delta.after.mean_brightness - delta.before.mean_brightness;
  delta.contrast_gain = delta.after.rms_contrast - delta.before.rms_contrast;
  return delta;
}

}  // namespace augen
