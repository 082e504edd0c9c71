#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qaplon/qap.hpp"

namespace qaplon {

/// Flat fitness series: the autocorrelation function is undefined.
class ZeroVarianceError : public std::runtime_error {
 public:
  ZeroVarianceError() : std::runtime_error("autocorrelation: series variance is zero") {}
};

struct AutocorrParams {
  int walk_length = 1'000'000;  ///< steps T; the series has T+1 entries
  int n_walks = 10;             ///< independent walks averaged
  int s_max = 0;                ///< max lag; 0 means n^2
  double epsilon = 0.0;         ///< truncation band; 0 means 2/sqrt(T)
};

struct AutocorrEstimate {
  std::vector<double> r;  ///< r[0..s_max]
  double ell = 0.0;       ///< truncated sum of r(s)
  int s_cut = 0;          ///< first lag below the truncation band
  int walk_length = 0;
  int n_walks = 0;
  bool exact = false;
};

/// Fitness series along a uniform random swap walk of `length` steps starting
/// at `start`; the series has length+1 entries and is deterministic per seed.
std::vector<double> random_walk(const QapInstance& inst, const Permutation& start,
                                int length, std::uint64_t seed);

/// Sample autocorrelation: r(s) = ((1/(T-s+1)) sum_t f_t f_{t+s} - mu^2) / var,
/// with mu and var the full-series moments; r(0) is exactly 1. Computed on the
/// centered series for stability. Throws ZeroVarianceError on a flat series.
std::vector<double> autocorrelation(std::span<const double> series, int s_max);

/// Truncated length: s_cut = first lag with r(s) < epsilon (capped at s_max),
/// ell = sum of r(s) for s < s_cut.
std::pair<double, int> autocorr_length(std::span<const double> r, double epsilon, int s_max);

/// Walk-based estimate: r(s) is estimated per walk and averaged across walks,
/// then truncated at the white-noise band.
AutocorrEstimate estimate_autocorr(const QapInstance& inst, const AutocorrParams& params,
                                   std::uint64_t seed);

/// Exact oracle for n <= 6: builds the one-step transition operator of the
/// uniform swap walk (stationary distribution is uniform on all n!
/// permutations since the neighborhood graph is regular) and computes
/// r(s) = <f, P^s f> centered moments exactly, with ell truncated at the
/// first negative r(s).
AutocorrEstimate exact_autocorr(const QapInstance& inst, int s_max);

}  // namespace qaplon
