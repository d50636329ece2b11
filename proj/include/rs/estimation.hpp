#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rs/histogram.hpp"
#include "rs/ingest.hpp"

namespace rs {

// Sliding-window partial sums. For m inter-arrivals and maximum order k there
// are m - k windows; window i contributes S_j = M_{i+1} + ... + M_{i+j} to
// order j for j = 1..k.
struct PartialSumTable {
  std::size_t max_order = 0;
  double source_rate = 0.0;
  std::vector<std::vector<double>> sums;  // sums[j - 1] holds order j

  const std::vector<double>& order(std::size_t j) const { return sums.at(j - 1); }
  std::size_t windows() const noexcept { return sums.empty() ? 0 : sums.front().size(); }
};

PartialSumTable partial_sums(const InterArrivals& gaps, std::size_t k);

enum class EstimateKind { empirical, convolution };

std::string_view to_string(EstimateKind kind);

// Renewal density on the grid [0, bins * bin_width), in events per second.
struct RenewalDensityEstimate {
  EstimateKind kind = EstimateKind::empirical;
  double bin_width = 1.0;
  std::size_t max_order = 0;
  double source_rate = 0.0;
  std::vector<double> values;
  // Below this time the k-order truncation drops under ~1% of the renewal
  // mass, so values there estimate the full renewal density.
  double untruncated_end = 0.0;

  std::size_t bins() const noexcept { return values.size(); }
  double t_max() const noexcept { return static_cast<double>(values.size()) * bin_width; }
  double bin_start(std::size_t i) const noexcept { return static_cast<double>(i) * bin_width; }
};

// Sum over orders of the normalised per-order histograms, divided by the bin
// width. Every order must have at least one realisation inside the grid.
RenewalDensityEstimate empirical_rd(const PartialSumTable& table, double bin_width, double t_max);

// Same result as building the table first, without holding all k orders in
// memory at once.
RenewalDensityEstimate empirical_rd(const InterArrivals& gaps, std::size_t k, double bin_width,
                                    double t_max);

Density first_order_pdf(const InterArrivals& gaps, double bin_width, double t_max);

// Full linear convolution of two mass sequences (length n1 + n2 - 1).
Density convolve(const Density& a, const Density& b);
// Linear convolution truncated to the first `max_bins` bins.
Density convolve(const Density& a, const Density& b, std::size_t max_bins);

// sum_{n=1..k} f1^{*n} / bin_width on f1's grid; each power is truncated to
// the grid before the next convolution.
RenewalDensityEstimate convolution_rd(const Density& f1, std::size_t k);

// ---- defaults used when the caller does not pin the grid ----

// min(1000, floor(m / 10)), at least 1, where m is the number of inter-arrivals.
std::size_t default_max_order(std::size_t inter_arrival_count);

// Shimazaki-optimal width over default_bin_width_grid, evaluated on the
// first-order inter-arrivals.
double choose_bin_width(const InterArrivals& gaps);

// Grid end for the empirical estimate: the 99th percentile of the order-k
// window sums, rounded up to a whole bin that contains it.
double empirical_grid_end(const InterArrivals& gaps, std::size_t k, double bin_width);

// Grid end for the convolution estimate: 1.5 * k * mean inter-arrival,
// rounded up to a whole bin.
double convolution_grid_end(const InterArrivals& gaps, std::size_t k, double bin_width);

}  // namespace rs
