#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "augen/augen.hpp"

namespace augen {
namespace cli {

namespace fs = std::filesystem;

/// Flag/config values shared by the enhancement-driven subcommands. The JSON
/// config file mirrors these fields; explicit flags win over file values.
struct EnhanceOpts {
  std::string mode = "random";
  std::string domain = "byte";
  std::uint64_t seed = 0;
  int workers = 1;
  int batch_size = 16;
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  std::vector<double> alpha_range = {1.15, 1.35};
  std::vector<double> beta_range = {-0.1, 0.4};
  double step = 0.05;
  std::string config_path;
  std::string dump_config_path;
};

struct EnhanceOptRefs {
  CLI::Option* mode = nullptr;
  CLI::Option* domain = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* batch_size = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* alpha_range = nullptr;
  CLI::Option* beta_range = nullptr;
  CLI::Option* step = nullptr;
};

inline EnhanceOptRefs add_enhance_options(CLI::App* cmd, EnhanceOpts& opts) {
  EnhanceOptRefs refs;
  refs.mode = cmd->add_option("--mode", opts.mode, "Enhancement mode")
                  ->check(CLI::IsMember({"random", "fixed", "histeq", "gamma", "adaptive-gamma"}));
  refs.domain = cmd->add_option("--domain", opts.domain, "Pixel domain")
                    ->check(CLI::IsMember({"byte", "unit"}));
  refs.seed = cmd->add_option("--seed", opts.seed, "Master seed for random draws");
  refs.workers = cmd->add_option("--workers", opts.workers, "Worker thread count")
                     ->check(CLI::PositiveNumber);
  refs.batch_size = cmd->add_option("--batch-size", opts.batch_size, "Images per batch")
                        ->check(CLI::PositiveNumber);
  refs.alpha = cmd->add_option("--alpha", opts.alpha, "Gain for fixed mode");
  refs.beta = cmd->add_option("--beta", opts.beta, "Bias for fixed mode");
  refs.gamma = cmd->add_option("--gamma", opts.gamma, "Exponent for gamma mode");
  refs.alpha_range = cmd->add_option("--alpha-range", opts.alpha_range, "Gain range a,b")
                         ->delimiter(',')
                         ->expected(2);
  refs.beta_range = cmd->add_option("--beta-range", opts.beta_range, "Bias range a,b")
                        ->delimiter(',')
                        ->expected(2);
  refs.step = cmd->add_option("--step", opts.step, "Range discretization step");
  cmd->add_option("--config", opts.config_path, "JSON config file (flags override)");
  cmd->add_option("--dump-config", opts.dump_config_path, "Write the effective config as JSON");
  return refs;
}

inline nlohmann::ordered_json to_json(const EnhanceOpts& o) {
  nlohmann::ordered_json j;
  j["mode"] = o.mode;
  j["domain"] = o.domain;
  j["seed"] = o.seed;
  j["workers"] = o.workers;
  j["batch_size"] = o.batch_size;
  j["alpha"] = o.alpha;
  j["beta"] = o.beta;
  j["gamma"] = o.gamma;
  j["alpha_range"] = o.alpha_range;
  j["beta_range"] = o.beta_range;
  j["step"] = o.step;
  return j;
}

// File values fill in everything the user did not set on the command line.
inline void merge_config_file(EnhanceOpts& opts, const EnhanceOptRefs& refs) {
  if (opts.config_path.empty()) return;
  std::ifstream is(opts.config_path);
  if (!is) raise(errc::io_error, "cannot open config file: " + opts.config_path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::invalid_config, "malformed config JSON: " + std::string(e.what()));
  }
  try {
    auto take = [&](const char* key, CLI::Option* flag, auto& field) {
      if (flag->count() == 0 && j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("mode", refs.mode, opts.mode);
    take("domain", refs.domain, opts.domain);
    take("seed", refs.seed, opts.seed);
    take("workers", refs.workers, opts.workers);
    take("batch_size", refs.batch_size, opts.batch_size);
    take("alpha", refs.alpha, opts.alpha);
    take("beta", refs.beta, opts.beta);
    take("gamma", refs.gamma, opts.gamma);
    take("alpha_range", refs.alpha_range, opts.alpha_range);
    take("beta_range", refs.beta_range, opts.beta_range);
    take("step", refs.step, opts.step);
  } catch (const nlohmann::json::exception& e) {
    raise(errc::invalid_config, "bad config value: " + std::string(e.what()));
  }
}

inline void dump_config(const EnhanceOpts& opts) {
  if (opts.dump_config_path.empty()) return;
  std::ofstream os(opts.dump_config_path, std::ios::binary);
  if (!os) raise(errc::io_error, "cannot write config file: " + opts.dump_config_path);
  os << to_json(opts).dump(2) << '\n';
}

inline PixelDomain domain_from_name(const std::string& name) {
  if (name == "byte") return byte_domain;
  if (name == "unit") return unit_domain;
  raise(errc::invalid_config, "unknown domain '" + name + "'");
}

inline EnhanceConfig build_config(const EnhanceOpts& o) {
  if (o.alpha_range.size() != 2 || o.beta_range.size() != 2)
    raise(errc::invalid_config, "alpha/beta ranges need exactly two values");
  EnhanceConfig cfg;
  cfg.mode = mode_from_name(o.mode);
  cfg.domain = domain_from_name(o.domain);
  cfg.master_seed = o.seed;
  cfg.workers = o.workers;
  cfg.batch_size = o.batch_size;
  cfg.fixed_params = {o.alpha, o.beta};
  cfg.gamma_params = {o.gamma};
  if (cfg.mode == EnhanceMode::RandomAffine)
    cfg.param_set =
        build_param_set(o.alpha_range[0], o.alpha_range[1], o.beta_range[0], o.beta_range[1], o.step);
  cfg.validate();
  return cfg;
}

inline void print_failures(const EnhanceReport& report) {
  for (const auto& f : report.failures) std::cerr << "failed: " << f.path << ": " << f.error << '\n';
}

inline int run_enhance(const EnhanceOpts& opts, const std::string& in_dir,
                       const std::string& out_dir) {
  dump_config(opts);
  if (in_dir.empty() && !opts.dump_config_path.empty()) return 0;
  if (in_dir.empty() || out_dir.empty())
    raise(errc::invalid_config, "enhance requires --in and --out");
  const EnhanceConfig cfg = build_config(opts);
  const DatasetManifest manifest = scan_dataset(in_dir);
  const EnhanceReport report = enhance_dataset(manifest, cfg, in_dir, out_dir);
  std::cout << "enhanced " << report.images_processed << "/" << manifest.records.size()
            << " images in " << report.wall_time << " s (" << report.throughput << " img/s)\n"
            << "report: " << (fs::path(out_dir) / kReportSidecarName).string() << '\n';
  print_failures(report);
  return report.failures.empty() ? 0 : 2;
}

inline int run_split(const std::string& in_path, const std::string& out_csv,
                     const std::vector<double>& ratios, std::uint64_t seed) {
  if (ratios.size() != 3) raise(errc::invalid_ratios, "--ratios needs exactly three values");
  DatasetManifest manifest;
  if (fs::path(in_path).extension() == ".csv")
    manifest = read_manifest_csv(in_path);
  else
    manifest = scan_dataset(in_path);
  const SplitRatios r{ratios[0], ratios[1], ratios[2]};
  const DatasetManifest assigned = stratified_split(manifest, r, seed);
  write_manifest_csv(assigned, out_csv);
  std::size_t counts[4] = {};
  for (const auto& rec : assigned.records) counts[static_cast<int>(rec.split)]++;
  std::cout << "split " << assigned.records.size() << " records: train "
            << counts[static_cast<int>(Split::Train)] << ", val "
            << counts[static_cast<int>(Split::Val)] << ", test "
            << counts[static_cast<int>(Split::Test)] << " -> " << out_csv << '\n';
  return 0;
}

inline int run_sweep(const std::string& in_file, const std::string& out_dir,
                     const std::vector<double>& alphas, const std::vector<double>& betas,
                     const std::string& domain_name) {
  const PixelDomain domain = domain_from_name(domain_name);
  Image original = load_image(in_file);
  if (domain.kind == DomainKind::Unit) original = convert_domain(original, unit_domain);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    raise(errc::io_error, "cannot create output directory: " + out_dir);

  auto save_byte = [&](const Image& img, const fs::path& p) {
    save_image(img.domain.kind == DomainKind::Unit ? convert_domain(img, byte_domain) : img, p,
               ImageFormat::Png);
  };
  save_byte(original, fs::path(out_dir) / "original.png");

  const std::vector<Image> grid = sweep_grid(original, alphas, betas);
  char name[64];
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      std::snprintf(name, sizeof(name), "a%.2f_b%.2f.png", alphas[i], betas[j]);
      save_byte(grid[i * betas.size() + j], fs::path(out_dir) / name);
    }
  }
  std::cout << "wrote " << (grid.size() + 1) << " images to " << out_dir << '\n';
  return 0;
}

inline int run_metrics(const EnhanceOpts& opts, const std::string& in_dir,
                       const std::string& out_csv) {
  dump_config(opts);
  if (in_dir.empty() && !opts.dump_config_path.empty()) return 0;
  if (in_dir.empty() || out_csv.empty())
    raise(errc::invalid_config, "metrics requires --in and --out");
  const EnhanceConfig cfg = build_config(opts);
  const DatasetManifest manifest = scan_dataset(in_dir);

  std::ofstream os(out_csv, std::ios::binary);
  if (!os) raise(errc::io_error, "cannot write metrics CSV: " + out_csv);
  os << "path,mean_before,mean_after,rms_before,rms_after,entropy_before,entropy_after\n";

  std::size_t failures = 0;
  char buf[256];
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const auto& record = manifest.records[i];
    try {
      Image img = load_image(fs::path(in_dir) / record.path);
      if (cfg.domain.kind == DomainKind::Unit) img = convert_domain(img, unit_domain);
      const Image enhanced = detail::enhance_one(img, cfg, i);
      const MetricsDelta delta = compare(img, enhanced);
      std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f", record.path.c_str(),
                    delta.before.mean_brightness, delta.after.mean_brightness,
                    delta.before.rms_contrast, delta.after.rms_contrast, delta.before.entropy,
                    delta.after.entropy);
      os << buf << '\n';
    } catch (const Error& e) {
      std::cerr << "failed: " << record.path << ": " << e.what() << '\n';
      ++failures;
    }
  }
  std::cout << "metrics for " << (manifest.records.size() - failures) << "/"
            << manifest.records.size() << " images -> " << out_csv << '\n';
  return failures == 0 ? 0 : 2;
}

inline int run_bench_cmd(const EnhanceOpts& opts, const std::string& in_dir,
                         const std::string& out_csv, const std::vector<std::string>& mode_names,
                         int repeats) {
  dump_config(opts);
  if (in_dir.empty() && !opts.dump_config_path.empty()) return 0;
  if (in_dir.empty()) raise(errc::invalid_config, "bench requires --in");

  std::vector<EnhanceConfig> modes;
  for (const auto& name : mode_names) {
    EnhanceOpts mode_opts = opts;
    mode_opts.mode = name;
    modes.push_back(build_config(mode_opts));
  }
  const DatasetManifest manifest = scan_dataset(in_dir);
  std::vector<std::string> mode_errors;
  const std::vector<BenchResult> results = run_bench(manifest, in_dir, modes, repeats, &mode_errors);

  if (out_csv.empty() || out_csv == "-") {
    write_bench_csv(results, std::cout);
  } else {
    std::ofstream os(out_csv, std::ios::binary);
    if (!os) raise(errc::io_error, "cannot write bench CSV: " + out_csv);
    write_bench_csv(results, os);
    std::cout << "bench results -> " << out_csv << '\n';
  }
  for (const auto& e : mode_errors) std::cerr << "mode failed: " << e << '\n';
  return mode_errors.empty() ? 0 : 2;
}

}  // namespace cli

/// Entry point behind the `augen` binary. Returns 0 on success, 1 on usage
/// errors (help goes to stderr), 2 on runtime failures.
inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"augen - deterministic image enhancement and augmentation toolkit"};
  app.require_subcommand(1);

  cli::EnhanceOpts enhance_opts, metrics_opts, bench_opts;
  std::string in_path, out_path;
  std::string metrics_in, metrics_out;
  std::string bench_in, bench_out;
  std::string split_in, split_out;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  std::uint64_t split_seed = 0;
  std::string sweep_in, sweep_out, sweep_domain = "byte";
  std::vector<double> sweep_alphas = {1.15, 1.35};
  std::vector<double> sweep_betas = {-0.1, 0.4};
  std::vector<std::string> bench_modes = {"random", "histeq", "gamma", "adaptive-gamma"};
  int bench_repeats = 5;

  CLI::App* enhance = app.add_subcommand("enhance", "Enhance a dataset tree");
  enhance->add_option("--in", in_path, "Input dataset root (<root>/<label>/images)");
  enhance->add_option("--out", out_path, "Output directory");
  auto enhance_refs = cli::add_enhance_options(enhance, enhance_opts);

  CLI::App* split = app.add_subcommand("split", "Stratified train/val/test split");
  split->add_option("--in", split_in, "Dataset root or manifest CSV")->required();
  split->add_option("--out", split_out, "Output manifest CSV")->required();
  split->add_option("--ratios", ratios, "train,val,test fractions")->delimiter(',')->expected(3);
  split->add_option("--seed", split_seed, "Shuffle seed");

  CLI::App* sweep = app.add_subcommand("sweep", "Write the alpha/beta ablation grid for one image");
  sweep->add_option("--in", sweep_in, "Input image")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--alphas", sweep_alphas, "Gain values")->delimiter(',');
  sweep->add_option("--betas", sweep_betas, "Bias values")->delimiter(',');
  sweep->add_option("--domain", sweep_domain, "Pixel domain")
      ->check(CLI::IsMember({"byte", "unit"}));

  CLI::App* metrics = app.add_subcommand("metrics", "Before/after enhancement statistics");
  metrics->add_option("--in", metrics_in, "Input dataset root");
  metrics->add_option("--out", metrics_out, "Output CSV");
  auto metrics_refs = cli::add_enhance_options(metrics, metrics_opts);

  CLI::App* bench = app.add_subcommand("bench", "Throughput comparison across modes");
  bench->add_option("--in", bench_in, "Input dataset root");
  bench->add_option("--out", bench_out, "Results CSV ('-' for stdout)");
  bench->add_option("--modes", bench_modes, "Modes to time")->delimiter(',');
  bench->add_option("--repeats", bench_repeats, "Timed passes per mode (>= 3)");
  auto bench_refs = cli::add_enhance_options(bench, bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    if (enhance->parsed()) {
      cli::merge_config_file(enhance_opts, enhance_refs);
      return cli::run_enhance(enhance_opts, in_path, out_path);
    }
    if (split->parsed()) return cli::run_split(split_in, split_out, ratios, split_seed);
    if (sweep->parsed())
      return cli::run_sweep(sweep_in, sweep_out, sweep_alphas, sweep_betas, sweep_domain);
    if (metrics->parsed()) {
      cli::merge_config_file(metrics_opts, metrics_refs);
      return cli::run_metrics(metrics_opts, metrics_in, metrics_out);
    }
    if (bench->parsed()) {
      cli::merge_config_file(bench_opts, bench_refs);
      return cli::run_bench_cmd(bench_opts, bench_in, bench_out, bench_modes, bench_repeats);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 1;
}

}  // namespace augen
