#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "augen/affine.hpp"
#include "augen/error.hpp"
#include "augen/rng.hpp"

namespace augen {

struct ParamSetMeta {
  double alpha_start = 0.0;
  double alpha_end = 0.0;
  double beta_start = 0.0;
  double beta_end = 0.0;
  double step = 0.0;
};

/// Discrete candidate gains and biases for random draws. Both lists are
/// strictly increasing with the range endpoints always present.
struct ParamSet {
  std::vector<double> alphas;
  std::vector<double> betas;
  ParamSetMeta meta{};
};

namespace detail {

inline long long to_cents(double v) { return std::llround(v * 100.0); }

// Arithmetic progression start, start+step, ... snapped to two decimals,
// deduplicated, with the range end appended even when the step overshoots it.
inline std::vector<double> arithmetic_grid(double start, double end, double step) {
  const long long end_c = to_cents(end);
  const double span = (end - start) / step;
  if (span > 1e6) raise(errc::invalid_range, "step too small for range");
  std::vector<double> values;
  for (long long i = 0;; ++i) {
    const long long c = to_cents(start + static_cast<double>(i) * step);
    if (c > end_c) break;
    if (values.empty() || to_cents(values.back()) != c) values.push_back(c / 100.0);
  }
  if (values.empty() || to_cents(values.back()) != end_c) values.push_back(end_c / 100.0);
  return values;
}

}  // namespace detail

/// Build the candidate sets over [alpha_start, alpha_end] and
/// [beta_start, beta_end] with the given increment. Values are snapped to two
/// decimals so repeated addition cannot drift.
inline ParamSet build_param_set(double alpha_start, double alpha_end, double beta_start,
                                double beta_end, double step) {
  if (!(step > 0.0)) raise(errc::invalid_range, "step must be positive");
  if (alpha_start > alpha_end) raise(errc::invalid_range, "alpha_start > alpha_end");
  if (beta_start > beta_end) raise(errc::invalid_range, "beta_start > beta_end");
  ParamSet set;
  set.alphas = detail::arithmetic_grid(alpha_start, alpha_end, step);
  set.betas = detail::arithmetic_grid(beta_start, beta_end, step);
  if (set.alphas.front() <= 0.0) raise(errc::invalid_range, "alpha values must be positive");
  set.meta = {set.alphas.front(), set.alphas.back(), set.betas.front(), set.betas.back(), step};
  return set;
}

/// Default operating ranges, sampled on a 0.05 grid: alpha in [1.15, 1.35],
/// beta in [-0.1, 0.4]. Pass step = 0.15 to build_param_set for the coarse
/// grid those ranges were searched on.
inline ParamSet default_param_set() { return build_param_set(1.15, 1.35, -0.1, 0.4, 0.05); }

/// Draw one (alpha, beta) pair, each axis uniform and independent. Consumes
/// exactly two words from the stream.
inline AffineParams draw_params(const ParamSet& set, RngStream& stream) {
  if (set.alphas.empty() || set.betas.empty()) raise(errc::invalid_range, "empty parameter set");
  const double alpha = set.alphas[stream.next_below(set.alphas.size())];
  const double beta = set.betas[stream.next_below(set.betas.size())];
  return {alpha, beta};
}

}  // namespace augen
