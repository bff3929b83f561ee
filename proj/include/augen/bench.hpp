#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "augen/error.hpp"
#include "augen/image.hpp"
#include "augen/image_io.hpp"
#include "augen/manifest.hpp"
#include "augen/pipeline.hpp"

namespace augen {

struct BenchResult {
  std::string method;
  std::uint64_t images = 0;
  double total_seconds = 0.0;
  double images_per_second = 0.0;
  double p50_us = 0.0;
  double p95_us = 0.0;
  double max_us = 0.0;
};

namespace detail {

inline double percentile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t idx = static_cast<std::size_t>(q * (sorted.size() - 1));
  return sorted[idx];
}

}  // namespace detail

/// Time each mode over the same pre-decoded images. One warm-up pass is
/// excluded; total_seconds is the median wall time of `repeats` passes and
/// the per-image percentiles come from that median pass. A mode that fails
/// (e.g. histeq over RGB input) is skipped and reported through
/// `mode_errors`; remaining modes still run.
inline std::vector<BenchResult> run_bench_images(const std::vector<Image>& images,
                                                 const std::vector<EnhanceConfig>& modes,
                                                 int repeats,
                                                 std::vector<std::string>* mode_errors = nullptr) {
  if (images.empty()) raise(errc::invalid_params, "bench requires a non-empty image list");
  if (repeats < 3) raise(errc::invalid_params, "bench requires repeats >= 3");

  using clock = std::chrono::steady_clock;
  std::vector<BenchResult> results;
  volatile float sink = 0.0f;  // keeps the enhancement work observable

  for (const auto& config : modes) {
    try {
      config.validate();
      struct Pass {
        double wall = 0.0;
        std::vector<double> per_image_us;
      };
      std::vector<Pass> passes(static_cast<std::size_t>(repeats) + 1);  // [0] is warm-up
      for (auto& pass : passes) {
        pass.per_image_us.reserve(images.size());
        const auto pass_start = clock::now();
        for (std::size_t i = 0; i < images.size(); ++i) {
          const auto t0 = clock::now();
          Image out = detail::enhance_one(images[i], config, i);
          const auto t1 = clock::now();
          sink = sink + out.pixels[0];
          pass.per_image_us.push_back(
              std::chrono::duration<double, std::micro>(t1 - t0).count());
        }
        pass.wall = std::chrono::duration<double>(clock::now() - pass_start).count();
      }
      passes.erase(passes.begin());  // drop warm-up

      std::sort(passes.begin(), passes.end(),
                [](const Pass& a, const Pass& b) { return a.wall < b.wall; });
      const Pass& median = passes[passes.size() / 2];

      std::vector<double> sorted = median.per_image_us;
      std::sort(sorted.begin(), sorted.end());

      BenchResult r;
      r.method = mode_name(config.mode);
      r.images = images.size();
      r.total_seconds = median.wall;
      r.images_per_second =
          median.wall > 0.0 ? static_cast<double>(images.size()) / median.wall : 0.0;
      r.p50_us = detail::percentile_sorted(sorted, 0.50);
      r.p95_us = detail::percentile_sorted(sorted, 0.95);
      r.max_us = sorted.back();
      results.push_back(std::move(r));
    } catch (const Error& e) {
      if (mode_errors) mode_errors->push_back(std::string(mode_name(config.mode)) + ": " + e.what());
    }
  }
  return results;
}

/// Decode every manifest record once, then bench over the shared decoded
/// list so I/O never counts against any mode.
inline std::vector<BenchResult> run_bench(const DatasetManifest& manifest,
                                          const std::filesystem::path& in_root,
                                          const std::vector<EnhanceConfig>& modes, int repeats,
                                          std::vector<std::string>* mode_errors = nullptr) {
  if (manifest.records.empty()) raise(errc::invalid_params, "bench requires a non-empty manifest");
  std::vector<Image> images;
  images.reserve(manifest.records.size());
  for (const auto& record : manifest.records)
    images.push_back(load_image(in_root / std::filesystem::path(record.path)));
  return run_bench_images(images, modes, repeats, mode_errors);
}

inline constexpr const char* kBenchCsvHeader =
    "method,images,total_seconds,images_per_second,p50_us,p95_us,max_us";

inline void write_bench_csv(const std::vector<BenchResult>& results, std::ostream& os) {
  os << kBenchCsvHeader << '\n';
  char buf[256];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof(buf), "%s,%llu,%.6f,%.3f,%.3f,%.3f,%.3f", r.method.c_str(),
                  static_cast<unsigned long long>(r.images), r.total_seconds, r.images_per_second,
                  r.p50_us, r.p95_us, r.max_us);
    os << buf << '\n';
  }
}

inline std::vector<BenchResult> parse_bench_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kBenchCsvHeader)
    raise(errc::invalid_config, "bench CSV missing expected header");
  std::vector<BenchResult> results;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    BenchResult r;
    auto next = [&]() -> std::string {
      if (!std::getline(row, field, ',')) raise(errc::invalid_config, "malformed bench row: " + line);
      return field;
    };
    try {
      r.method = next();
      r.images = std::stoull(next());
      r.total_seconds = std::stod(next());
      r.images_per_second = std::stod(next());
      r.p50_us = std::stod(next());
      r.p95_us = std::stod(next());
      r.max_us = std::stod(next());
    } catch (const std::logic_error&) {
      raise(errc::invalid_config, "malformed bench row: " + line);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace augen
