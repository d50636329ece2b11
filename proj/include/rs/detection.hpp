#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rs/estimation.hpp"

namespace rs {

struct DetectionConfig {
  std::size_t n_sub = 8;
  // Smoothing half-window in bins; unset means N_bins / 2.
  std::optional<std::size_t> half_window;
  double trim_fraction = 0.35;
  double p_fa = 0.05;
  bool exclude_origin_bin = false;

  void validate() const;
};

struct SubDensityResult {
  std::size_t index = 0;
  double chi2 = 0.0;
  double p = 0.0;
  bool flag = false;
};

struct DetectionReport {
  std::size_t n_sub = 0;
  std::size_t n_bins = 0;
  std::size_t dropped_bins = 0;
  std::size_t half_window = 0;
  double trim_fraction = 0.0;
  double p_fa = 0.0;
  bool exclude_origin_bin = false;
  std::vector<SubDensityResult> subs;
  bool detected = false;
};

// Scales so the maximum is exactly 10.
std::vector<double> normalize_rd(std::span<const double> values);

struct SubDensities {
  std::size_t n_bins = 0;
  std::size_t dropped = 0;  // trailing bins beyond n_sub * n_bins
  std::vector<std::vector<double>> blocks;
};

SubDensities split_subdensities(std::span<const double> values, std::size_t n_sub);

// For each bin, the mean of its +/-half_window neighbours (centre excluded,
// clipped at the block edges) after dropping floor(trim_fraction * n) values
// from each end of the sorted neighbourhood.
std::vector<double> trimmed_mean_smooth(std::span<const double> block, std::size_t half_window,
                                        double trim_fraction);

// Pearson statistic sum (observed - smooth)^2 / smooth.
double chi_square_stat(std::span<const double> observed, std::span<const double> smoothed);

// Chi-square CDF, i.e. the regularised lower incomplete gamma P(dof/2, x/2).
double chi_square_cdf(double x, double dof);

DetectionReport detect(std::span<const double> rd_values, const DetectionConfig& cfg);
DetectionReport detect(const RenewalDensityEstimate& rd, const DetectionConfig& cfg);

}  // namespace rs
