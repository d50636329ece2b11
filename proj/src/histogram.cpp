#include "rs/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rs/error.hpp"

namespace rs {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram build_histogram(std::span<const double> samples, double bin_width, double t_max) {
  if (!(bin_width > 0.0) || !(t_max > 0.0) || !std::isfinite(bin_width) || !std::isfinite(t_max)) {
    throw Error(ErrorKind::invalid_config, "histogram needs bin width > 0 and t_max > 0");
  }
  Histogram h;
  h.bin_width = bin_width;
  h.counts.assign(static_cast<std::size_t>(std::ceil(t_max / bin_width)), 0);
  const std::size_t n = h.counts.size();
  for (double x : samples) {
    if (!(x >= 0.0) || x >= t_max) {
      ++h.overflow;
      continue;
    }
    // floor of a non-negative finite value; clamp guards the last partial bin
    const auto idx = std::min(static_cast<std::size_t>(x / bin_width), n - 1);
    ++h.counts[idx];
  }
  return h;
}

double shimazaki_cost(const Histogram& h) {
  if (h.counts.empty()) throw Error(ErrorKind::invalid_config, "cost of a histogram with no bins");
  const double n = static_cast<double>(h.counts.size());
  double sum = 0.0;
  for (auto c : h.counts) sum += static_cast<double>(c);
  const double mean = sum / n;
  double ss = 0.0;
  for (auto c : h.counts) {
    const double d = mean - static_cast<double>(c);
    ss += d * d;
  }
  const double var = ss / n;
  return (2.0 * mean - var) / (h.bin_width * h.bin_width);
}

double optimal_bin_width(std::span<const double> samples, std::span<const double> candidates,
                         double t_max) {
  if (candidates.empty()) throw Error(ErrorKind::invalid_config, "empty bin-width grid");
  if (samples.size() < 2) {
    throw Error(ErrorKind::insufficient_data, "bin-width search needs at least 2 samples");
  }
  std::vector<double> grid(candidates.begin(), candidates.end());
  std::sort(grid.begin(), grid.end());
  if (!(grid.front() > 0.0)) throw Error(ErrorKind::invalid_config, "bin widths must be positive");

  double best = grid.front();
  double best_cost = shimazaki_cost(build_histogram(samples, best, t_max));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cost = shimazaki_cost(build_histogram(samples, grid[i], t_max));
    if (cost < best_cost) {
      best_cost = cost;
      best = grid[i];
    }
  }
  return best;
}

std::vector<double> default_bin_width_grid(double t_max, std::size_t count) {
  const double hi = t_max / 20.0;
  std::vector<double> grid;
  if (count < 2 || hi <= 1.0) return {1.0};
  const double step = std::log(hi) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = std::max(1.0, std::round(std::exp(step * static_cast<double>(i))));
    if (grid.empty() || grid.back() != w) grid.push_back(w);
  }
  return grid;
}

Density normalize(const Histogram& h) {
  const std::uint64_t total = h.total();
  if (total == 0) throw Error(ErrorKind::empty_density, "histogram has no in-range samples");
  Density d;
  d.bin_width = h.bin_width;
  d.origin = h.origin;
  d.values.resize(h.counts.size());
  const double denom = static_cast<double>(total);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    d.values[i] = static_cast<double>(h.counts[i]) / denom;
  }
  return d;
}

}  // namespace rs
