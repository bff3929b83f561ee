#pragma once

#include <stdexcept>
#include <string>

namespace augen {

enum class errc {
  invalid_params,
  invalid_bounds,
  invalid_range,
  domain_mismatch,
  dimension_mismatch,
  unsupported_channels,
  unsupported_domain,
  unsupported_format,
  decode_error,
  io_error,
  invalid_ratios,
  already_split,
  invalid_config,
};

inline const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::invalid_params: return "invalid_params";
    case errc::invalid_bounds: return "invalid_bounds";
    case errc::invalid_range: return "invalid_range";
    case errc::domain_mismatch: return "domain_mismatch";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::unsupported_channels: return "unsupported_channels";
    case errc::unsupported_domain: return "unsupported_domain";
    case errc::unsupported_format: return "unsupported_format";
    case errc::decode_error: return "decode_error";
    case errc::io_error: return "io_error";
    case errc::invalid_ratios: return "invalid_ratios";
    case errc::already_split: return "already_split";
    case errc::invalid_config: return "invalid_config";
  }
  return "unknown";
}

/// Library error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace augen
