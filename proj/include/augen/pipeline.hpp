#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "augen/affine.hpp"
#include "augen/baselines.hpp"
#include "augen/error.hpp"
#include "augen/image.hpp"
#include "augen/image_io.hpp"
#include "augen/manifest.hpp"
#include "augen/param_set.hpp"
#include "augen/rng.hpp"

namespace augen {

enum class EnhanceMode { RandomAffine, FixedAffine, HistEq, Gamma, AdaptiveGamma };

inline const char* mode_name(EnhanceMode m) noexcept {
  switch (m) {
    case EnhanceMode::RandomAffine: return "random";
    case EnhanceMode::FixedAffine: return "fixed";
    case EnhanceMode::HistEq: return "histeq";
    case EnhanceMode::Gamma: return "gamma";
    case EnhanceMode::AdaptiveGamma: return "adaptive-gamma";
  }
  return "unknown";
}

inline EnhanceMode mode_from_name(std::string_view name) {
  if (name == "random") return EnhanceMode::RandomAffine;
  if (name == "fixed") return EnhanceMode::FixedAffine;
  if (name == "histeq") return EnhanceMode::HistEq;
  if (name == "gamma") return EnhanceMode::Gamma;
  if (name == "adaptive-gamma") return EnhanceMode::AdaptiveGamma;
  raise(errc::invalid_config, "unknown enhancement mode '" + std::string(name) + "'");
}

struct EnhanceConfig {
  EnhanceMode mode = EnhanceMode::RandomAffine;
  ParamSet param_set = default_param_set();  // RandomAffine draws
  AffineParams fixed_params;                 // FixedAffine
  GammaParams gamma_params;                  // Gamma
  PixelDomain domain = byte_domain;
  std::uint64_t master_seed = 0;
  int batch_size = 16;
  int workers = 1;

  void validate() const {
    if (batch_size < 1) raise(errc::invalid_config, "batch_size must be >= 1");
    if (workers < 1) raise(errc::invalid_config, "workers must be >= 1");
    if (mode == EnhanceMode::RandomAffine && (param_set.alphas.empty() || param_set.betas.empty()))
      raise(errc::invalid_config, "RandomAffine mode requires a non-empty parameter set");
  }
};

struct DrawnParams {
  std::uint64_t image_index = 0;
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const DrawnParams&, const DrawnParams&) = default;
};

struct FailureRecord {
  std::string path;  // "#<index>" for in-memory batches
  std::string error;
};

struct EnhanceReport {
  std::uint64_t images_processed = 0;
  double wall_time = 0.0;   // seconds
  double throughput = 0.0;  // images per second
  std::vector<DrawnParams> per_image_params;
  std::vector<FailureRecord> failures;
};

namespace detail {

template <typename Fn>
inline void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t nthreads =
      std::min<std::size_t>(std::max(workers, 1), n == 0 ? 1 : n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Single-image dispatch. RandomAffine derives the per-image stream here, so
// the result depends only on (master_seed, image_index), never on which
// worker ran it.
inline Image enhance_one(const Image& image, const EnhanceConfig& config,
                         std::uint64_t image_index, std::optional<DrawnParams>* drawn = nullptr) {
  switch (config.mode) {
    case EnhanceMode::RandomAffine: {
      RngStream stream = derive_stream(config.master_seed, image_index);
      const AffineParams params = draw_params(config.param_set, stream);
      if (drawn) *drawn = DrawnParams{image_index, params.alpha, params.beta};
      return apply_affine(image, params);
    }
    case EnhanceMode::FixedAffine:
      return apply_affine(image, config.fixed_params);
    case EnhanceMode::HistEq:
      return histogram_equalize(image);
    case EnhanceMode::Gamma:
      return gamma_correct(image, config.gamma_params);
    case EnhanceMode::AdaptiveGamma:
      return adaptive_gamma_cdf(image);
  }
  raise(errc::invalid_config, "unhandled enhancement mode");
}

inline void finalize_report(EnhanceReport& report, double wall_seconds) {
  report.wall_time = wall_seconds;
  report.throughput =
      wall_seconds > 0.0 ? static_cast<double>(report.images_processed) / wall_seconds : 0.0;
}

}  // namespace detail

/// Enhance a batch. The output list is positionally aligned with the input;
/// an image that fails (wrong domain, baseline precondition) is passed
/// through unchanged and recorded in report.failures. `first_image_index`
/// offsets the per-image stream indices so callers can batch a larger run.
inline std::pair<std::vector<Image>, EnhanceReport> enhance_batch(
    const std::vector<Image>& images, const EnhanceConfig& config,
    std::uint64_t first_image_index = 0) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = images.size();
  std::vector<Image> outputs(n);
  std::vector<std::optional<DrawnParams>> drawn(n);
  std::vector<std::optional<FailureRecord>> errors(n);

  detail::parallel_for(n, config.workers, [&](std::size_t i) {
    const std::uint64_t index = first_image_index + i;
    if (images[i].domain != config.domain) {
      errors[i] = FailureRecord{"#" + std::to_string(index),
                                std::string(errc_name(errc::domain_mismatch)) +
                                    ": image domain does not match config.domain"};
      outputs[i] = images[i];
      return;
    }
    try {
      outputs[i] = detail::enhance_one(images[i], config, index, &drawn[i]);
    } catch (const Error& e) {
      errors[i] = FailureRecord{"#" + std::to_string(index), e.what()};
      outputs[i] = images[i];
    }
  });

  EnhanceReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      report.failures.push_back(*errors[i]);
    } else {
      ++report.images_processed;
      if (drawn[i]) report.per_image_params.push_back(*drawn[i]);
    }
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
  detail::finalize_report(report, elapsed.count());
  return {std::move(outputs), report};
}

inline constexpr const char* kReportSidecarName = "enhance_report.csv";

namespace detail {

// Sidecar rows: index,relative_path,alpha,beta,status ordered by index.
inline void write_report_sidecar(const std::filesystem::path& file,
                                 const std::vector<std::string>& rows) {
  std::ofstream os(file, std::ios::binary);
  if (!os) raise(errc::io_error, "cannot write report sidecar: " + file.string());
  for (const auto& row : rows) os << row << '\n';
}

inline std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Status column holds a single comma-free token: "ok" or the error code
// prefix of the failure message.
inline std::string status_token(const std::string& error_message) {
  const auto colon = error_message.find(':');
  std::string token = colon == std::string::npos ? error_message : error_message.substr(0, colon);
  for (char& c : token)
    if (c == ',' || c == '\n') c = ';';
  return token;
}

}  // namespace detail

/// Enhance every manifest record from `in_root`, mirroring the directory
/// structure under `out_dir`. The stream index for each image is its manifest
/// position, so renaming files keeps draws stable while reordering changes
/// them. Per-file failures are collected, not fatal. BMP inputs are
/// re-encoded as PNG (save_image writes PNG/JPEG only).
inline EnhanceReport enhance_dataset(const DatasetManifest& manifest, const EnhanceConfig& config,
                                     const std::filesystem::path& in_root,
                                     const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  config.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    raise(errc::io_error, "cannot create output directory: " + out_dir.string());

  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = manifest.records.size();
  std::vector<std::optional<DrawnParams>> drawn(n);
  std::vector<std::optional<FailureRecord>> errors(n);

  // Parent directories are created up front; workers then only touch
  // distinct files.
  for (const auto& record : manifest.records) {
    const fs::path out_path = out_dir / fs::path(record.path);
    fs::create_directories(out_path.parent_path(), ec);
  }

  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  for (std::size_t start = 0; start < n; start += batch) {
    const std::size_t count = std::min(batch, n - start);
    detail::parallel_for(count, config.workers, [&](std::size_t k) {
      const std::size_t i = start + k;
      const auto& record = manifest.records[i];
      try {
        Image img = load_image(in_root / fs::path(record.path));
        if (config.domain.kind == DomainKind::Unit) img = convert_domain(img, unit_domain);
        Image enhanced = detail::enhance_one(img, config, i, &drawn[i]);
        if (enhanced.domain.kind == DomainKind::Unit)
          enhanced = convert_domain(enhanced, byte_domain);
        fs::path out_path = out_dir / fs::path(record.path);
        const ImageFormat format = format_for_extension(out_path);
        if (format == ImageFormat::Png) out_path.replace_extension(".png");
        save_image(enhanced, out_path, format);
      } catch (const Error& e) {
        errors[i] = FailureRecord{record.path, e.what()};
      }
    });
  }

  EnhanceReport report;
  std::vector<std::string> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& record = manifest.records[i];
    std::string alpha_field, beta_field;
    if (drawn[i]) {
      alpha_field = detail::format_param(drawn[i]->alpha);
      beta_field = detail::format_param(drawn[i]->beta);
    } else if (!errors[i] && (config.mode == EnhanceMode::FixedAffine)) {
      alpha_field = detail::format_param(config.fixed_params.alpha);
      beta_field = detail::format_param(config.fixed_params.beta);
    }
    const std::string status = errors[i] ? detail::status_token(errors[i]->error) : "ok";
    rows.push_back(std::to_string(i) + ',' + record.path + ',' + alpha_field + ',' + beta_field +
                   ',' + status);
    if (errors[i]) {
      report.failures.push_back(*errors[i]);
    } else {
      ++report.images_processed;
      if (drawn[i]) report.per_image_params.push_back(*drawn[i]);
    }
  }
  detail::write_report_sidecar(out_dir / kReportSidecarName, rows);

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
  detail::finalize_report(report, elapsed.count());
  return report;
}

/// All |alphas| x |betas| affine variants of one image in row-major
/// (alpha-major) order: cell (i, j) equals apply_affine with
/// (alphas[i], betas[j]).
inline std::vector<Image> sweep_grid(const Image& image, const std::vector<double>& alphas,
                                     const std::vector<double>& betas) {
  if (alphas.empty() || betas.empty())
    raise(errc::invalid_params, "sweep_grid: alpha and beta lists must be non-empty");
  for (double a : alphas)
    if (!(a > 0.0)) raise(errc::invalid_params, "sweep_grid: alpha values must be positive");
  std::vector<Image> grid;
  grid.reserve(alphas.size() * betas.size());
  for (double a : alphas)
    for (double b : betas) grid.push_back(apply_affine(image, AffineParams{a, b}));
  return grid;
}

}  // namespace augen
