#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "augen/error.hpp"
#include "augen/rng.hpp"

namespace augen {

enum class Split : std::uint8_t { Unassigned, Train, Val, Test };

inline const char* split_name(Split s) noexcept {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Unassigned: break;
  }
  return "unassigned";
}

inline Split split_from_name(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  if (name == "unassigned" || name.empty()) return Split::Unassigned;
  raise(errc::invalid_config, "unknown split name '" + std::string(name) + "'");
}

struct ManifestRecord {
  std::string path;  // relative to the dataset root, '/' separators
  std::string label;
  Split split = Split::Unassigned;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// Ordered list of (path, label, split) records. Scanning an unchanged tree
/// always yields the same ordering (lexicographic by path).
struct DatasetManifest {
  std::vector<ManifestRecord> records;
};

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;

  void validate() const {
    const double parts[3] = {train, val, test};
    for (double p : parts)
      if (!(p >= 0.0 && p <= 1.0)) raise(errc::invalid_ratios, "each ratio must be in [0, 1]");
    if (std::abs(train + val + test - 1.0) > 1e-9)
      raise(errc::invalid_ratios, "ratios must sum to 1");
  }
};

inline bool is_supported_image_file(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

/// Walk a `<root>/<label>/...` tree and list every supported image file. The
/// immediate subdirectory names become class labels; non-image files are
/// skipped. Records come back sorted by relative path.
inline DatasetManifest scan_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    raise(errc::io_error, "dataset root is not a readable directory: " + root.string());

  DatasetManifest manifest;
  try {
    for (const auto& label_entry : fs::directory_iterator(root)) {
      if (!label_entry.is_directory()) continue;
      const std::string label = label_entry.path().filename().string();
      for (const auto& entry : fs::recursive_directory_iterator(label_entry.path())) {
        if (!entry.is_regular_file() || !is_supported_image_file(entry.path())) continue;
        const std::string rel = fs::relative(entry.path(), root).generic_string();
        manifest.records.push_back({rel, label, Split::Unassigned});
      }
    }
  } catch (const fs::filesystem_error& e) {
    raise(errc::io_error, "cannot scan dataset tree: " + std::string(e.what()));
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) { return a.path < b.path; });
  return manifest;
}

namespace detail {

// Largest-remainder apportionment of n over three ratios, then a floor pass:
// with >= 3 samples every nonzero-ratio split keeps at least one sample, paid
// for by the currently largest split.
inline std::array<std::size_t, 3> split_counts(std::size_t n, const SplitRatios& ratios) {
  const double quota[3] = {n * ratios.train, n * ratios.val, n * ratios.test};
  std::array<std::size_t, 3> counts{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = static_cast<std::size_t>(quota[i]);
    assigned += counts[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double fa = quota[a] - std::floor(quota[a]);
    const double fb = quota[b] - std::floor(quota[b]);
    return fa != fb ? fa > fb : a < b;
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) counts[order[k % 3]] += 1;

  const double ratio[3] = {ratios.train, ratios.val, ratios.test};
  if (n >= 3) {
    for (int i = 0; i < 3; ++i) {
      if (ratio[i] > 0.0 && counts[i] == 0) {
        const int donor = static_cast<int>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        counts[donor] -= 1;
        counts[i] += 1;
      }
    }
  }
  return counts;
}

}  // namespace detail

/// Assign train/val/test within each label so per-label counts follow the
/// ratios (largest-remainder rounding, endpoints guaranteed a sample when the
/// label has >= 3). The shuffle is a pure function of (manifest, ratios,
/// seed): each label gets its own stream, so labels never influence each
/// other's assignment.
inline DatasetManifest stratified_split(const DatasetManifest& manifest, const SplitRatios& ratios,
                                        std::uint64_t seed) {
  ratios.validate();
  for (const auto& r : manifest.records)
    if (r.split != Split::Unassigned)
      raise(errc::already_split, "record '" + r.path + "' already has a split assignment");

  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < manifest.records.size(); ++i)
    by_label[manifest.records[i].label].push_back(i);

  DatasetManifest out = manifest;
  std::uint64_t label_ordinal = 0;
  for (auto& [label, indices] : by_label) {
    RngStream stream = derive_stream(seed, label_ordinal++);
    for (std::size_t i = indices.size(); i > 1; --i)  // Fisher-Yates
      std::swap(indices[i - 1], indices[stream.next_below(i)]);

    const auto counts = detail::split_counts(indices.size(), ratios);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < counts[0]; ++k) out.records[indices[pos++]].split = Split::Train;
    for (std::size_t k = 0; k < counts[1]; ++k) out.records[indices[pos++]].split = Split::Val;
    for (std::size_t k = 0; k < counts[2]; ++k) out.records[indices[pos++]].split = Split::Test;
  }
  return out;
}

/// Manifest CSV: header `path,label,split`, UTF-8, LF line endings. Fields
/// must be comma- and newline-free.
inline void write_manifest_csv(const DatasetManifest& manifest, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) raise(errc::io_error, "cannot open manifest for writing: " + file.string());
  os << "path,label,split\n";
  for (const auto& r : manifest.records) {
    if (r.path.find_first_of(",\n") != std::string::npos ||
        r.label.find_first_of(",\n") != std::string::npos)
      raise(errc::io_error, "manifest fields must not contain commas or newlines: " + r.path);
    os << r.path << ',' << r.label << ',' << split_name(r.split) << '\n';
  }
  if (!os.flush()) raise(errc::io_error, "failed writing manifest: " + file.string());
}

inline DatasetManifest read_manifest_csv(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) raise(errc::io_error, "cannot open manifest: " + file.string());
  std::string line;
  if (!std::getline(is, line) || (line != "path,label,split" && line != "path,label,split\r"))
    raise(errc::invalid_config, "manifest missing 'path,label,split' header: " + file.string());
  DatasetManifest manifest;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      raise(errc::invalid_config, "malformed manifest row: " + line);
    ManifestRecord rec;
    rec.path = line.substr(0, c1);
    rec.label = line.substr(c1 + 1, c2 - c1 - 1);
    rec.split = split_from_name(std::string_view(line).substr(c2 + 1));
    if (rec.path.empty() || rec.label.empty())
      raise(errc::invalid_config, "manifest row with empty path or label: " + line);
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

}  // namespace augen
