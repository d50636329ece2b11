#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rs/estimation.hpp"

namespace rs {

// e(t) = empirical - convolution on the shared grid and its running sum E(t).
struct DifferenceCurves {
  double bin_width = 1.0;
  std::size_t first_bin = 0;  // 1 when the origin bin was excluded
  std::vector<double> e;
  std::vector<double> E;

  double time_of(std::size_t i) const noexcept {
    return static_cast<double>(first_bin + i) * bin_width;
  }
};

DifferenceCurves difference(const RenewalDensityEstimate& empirical,
                            const RenewalDensityEstimate& convolution,
                            bool exclude_origin_bin = false);

// Running sum; exposed so the curves can be rebuilt from a bare e(t).
std::vector<double> cumulative(const std::vector<double>& e);

enum class Zone { low, middle, high };

std::string_view to_string(Zone zone);

struct ZoneThresholds {
  // Calibrated at 1 s bins, k = 100, m = 1e5: iid streams stayed below 0.0018
  // over 120 seeds; strongly clustered streams reach 0.012 and above.
  double low = 0.002;
  double high = 0.01;

  void validate() const;
};

// low below `low`, middle on [low, high), high from `high` up.
Zone classify_zone(double e_max_norm, const ZoneThresholds& thresholds);

struct CharacterizationResult {
  double e_max_norm = 0.0;       // max(E) / k
  double peak_time = 0.0;        // seconds
  double position_tweets = 0.0;  // peak_time * source rate
  Zone zone = Zone::low;
};

// The earliest index wins when E has a plateau at its maximum.
CharacterizationResult characterize(const DifferenceCurves& curves, std::size_t k,
                                    double source_rate, const ZoneThresholds& thresholds = {});

}  // namespace rs
