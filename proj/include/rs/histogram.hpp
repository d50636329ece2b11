#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rs {

// Uniform half-open bins [origin + i*width, origin + (i+1)*width).
struct Histogram {
  double bin_width = 1.0;
  double origin = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t overflow = 0;  // samples outside [origin, t_max)

  std::size_t bins() const noexcept { return counts.size(); }
  std::uint64_t total() const noexcept;
  double bin_start(std::size_t i) const noexcept { return origin + static_cast<double>(i) * bin_width; }
};

// Probability mass per bin.
struct Density {
  double bin_width = 1.0;
  double origin = 0.0;
  std::vector<double> values;

  std::size_t bins() const noexcept { return values.size(); }
  double bin_start(std::size_t i) const noexcept { return origin + static_cast<double>(i) * bin_width; }
};

// ceil(t_max / bin_width) bins starting at 0; samples >= t_max go to the
// overflow tally.
Histogram build_histogram(std::span<const double> samples, double bin_width, double t_max);

// Shimazaki-Shinomoto cost (2*mean - var) / width^2 over the bin counts, with
// the biased (1/N) variance.
double shimazaki_cost(const Histogram& h);

// Minimises shimazaki_cost over the candidate widths, each histogram covering
// [0, t_max). Ties go to the smaller width.
double optimal_bin_width(std::span<const double> samples, std::span<const double> candidates,
                         double t_max);

// `count` log-spaced widths between 1 s and t_max / 20, rounded to whole
// seconds and deduplicated (inputs live on a 1 s lattice, so fractional
// widths would alias).
std::vector<double> default_bin_width_grid(double t_max, std::size_t count = 50);

Density normalize(const Histogram& h);

}  // namespace rs
