#include "rs/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rs/error.hpp"

namespace rs {

namespace {

constexpr double kTruncationMass = 0.01;

void check_order(std::size_t k, std::size_t m) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "maximum order must be >= 1");
  if (k >= m) {
    throw Error(ErrorKind::insufficient_data,
                "maximum order " + std::to_string(k) + " leaves no windows over " +
                    std::to_string(m) + " inter-arrivals");
  }
}

// Nearest-rank quantile.
double quantile(std::vector<double> values, double q) {
  const auto n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank), values.end());
  return values[rank];
}

void add_order(std::vector<double>& acc, std::span<const double> sums, std::size_t order,
               double bin_width, double t_max) {
  if (sums.empty()) {
    throw Error(ErrorKind::insufficient_data,
                "order " + std::to_string(order) + " has no realisations");
  }
  const Histogram h = build_histogram(sums, bin_width, t_max);
  if (h.total() == 0) {
    throw Error(ErrorKind::insufficient_data,
                "order " + std::to_string(order) + " has no realisations inside the grid");
  }
  const Density d = normalize(h);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d.values[i];
}

RenewalDensityEstimate finish_empirical(std::vector<double> acc, std::size_t k, double rate,
                                        double bin_width, const std::vector<double>& top_order) {
  RenewalDensityEstimate r;
  r.kind = EstimateKind::empirical;
  r.bin_width = bin_width;
  r.max_order = k;
  r.source_rate = rate;
  for (double& v : acc) v /= bin_width;
  r.values = std::move(acc);
  r.untruncated_end = std::min(quantile(top_order, kTruncationMass), r.t_max());
  return r;
}

double sequence_rate(const InterArrivals& gaps) {
  const auto total = gaps.total();
  return total > 0 ? static_cast<double>(gaps.size()) / static_cast<double>(total) : 0.0;
}

bool same_width(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string_view to_string(EstimateKind kind) {
  return kind == EstimateKind::empirical ? "empirical" : "convolution";
}

PartialSumTable partial_sums(const InterArrivals& gaps, std::size_t k) {
  check_order(k, gaps.size());
  const std::size_t windows = gaps.size() - k;
  PartialSumTable table;
  table.max_order = k;
  table.source_rate = sequence_rate(gaps);
  table.sums.assign(k, std::vector<double>(windows));
  for (std::size_t i = 0; i < windows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s += static_cast<double>(gaps.values[i + j]);
      table.sums[j][i] = s;
    }
  }
  return table;
}

RenewalDensityEstimate empirical_rd(const PartialSumTable& table, double bin_width, double t_max) {
  if (table.max_order < 1 || table.sums.size() != table.max_order) {
    throw Error(ErrorKind::insufficient_data, "partial-sum table is empty");
  }
  std::vector<double> acc(build_histogram({}, bin_width, t_max).bins(), 0.0);
  for (std::size_t j = 1; j <= table.max_order; ++j) {
    add_order(acc, table.order(j), j, bin_width, t_max);
  }
  return finish_empirical(std::move(acc), table.max_order, table.source_rate, bin_width,
                          table.order(table.max_order));
}

RenewalDensityEstimate empirical_rd(const InterArrivals& gaps, std::size_t k, double bin_width,
                                    double t_max) {
  check_order(k, gaps.size());
  const std::size_t windows = gaps.size() - k;
  std::vector<double> acc(build_histogram({}, bin_width, t_max).bins(), 0.0);
  // cur[i] walks window i through orders 1..k
  std::vector<double> cur(windows, 0.0);
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t i = 0; i < windows; ++i) {
      cur[i] += static_cast<double>(gaps.values[i + j - 1]);
    }
    add_order(acc, cur, j, bin_width, t_max);
  }
  return finish_empirical(std::move(acc), k, sequence_rate(gaps), bin_width, cur);
}

Density first_order_pdf(const InterArrivals& gaps, double bin_width, double t_max) {
  std::vector<double> samples(gaps.values.begin(), gaps.values.end());
  return normalize(build_histogram(samples, bin_width, t_max));
}

Density convolve(const Density& a, const Density& b) {
  if (a.values.empty() || b.values.empty()) {
    throw Error(ErrorKind::empty_density, "convolution of an empty density");
  }
  return convolve(a, b, a.bins() + b.bins() - 1);
}

Density convolve(const Density& a, const Density& b, std::size_t max_bins) {
  if (!same_width(a.bin_width, b.bin_width)) {
    throw Error(ErrorKind::grid_mismatch, "convolution operands have different bin widths");
  }
  Density out;
  out.bin_width = a.bin_width;
  out.origin = a.origin + b.origin;
  if (a.values.empty() || b.values.empty()) return out;
  out.values.assign(std::min(max_bins, a.bins() + b.bins() - 1), 0.0);

  // restrict both loops to the non-zero extent; powers of a sparse pdf stay sparse
  const auto first_nz = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; }) - v.begin());
  };
  const auto last_nz = [](const std::vector<double>& v) {
    auto it = std::find_if(v.rbegin(), v.rend(), [](double x) { return x != 0.0; });
    return static_cast<std::size_t>(v.rend() - it);  // one past the last non-zero
  };
  const std::size_t a_lo = first_nz(a.values), a_hi = last_nz(a.values);
  const std::size_t b_lo = first_nz(b.values), b_hi = last_nz(b.values);
  const std::size_t n = out.values.size();
  for (std::size_t i = a_lo; i < a_hi && i + b_lo < n; ++i) {
    const double ai = a.values[i];
    if (ai == 0.0) continue;
    const std::size_t j_end = std::min(b_hi, n - i);
    double* dst = out.values.data() + i;
    for (std::size_t j = b_lo; j < j_end; ++j) dst[j] += ai * b.values[j];
  }
  return out;
}

RenewalDensityEstimate convolution_rd(const Density& f1, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "maximum order must be >= 1");
  if (f1.values.empty()) throw Error(ErrorKind::empty_density, "first-order pdf is empty");

  const std::size_t n = f1.bins();
  std::vector<double> total = f1.values;
  Density power = f1;
  for (std::size_t order = 2; order <= k; ++order) {
    power = convolve(power, f1, n);
    power.values.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) total[i] += power.values[i];
  }

  RenewalDensityEstimate r;
  r.kind = EstimateKind::convolution;
  r.bin_width = f1.bin_width;
  r.max_order = k;
  for (double& v : total) v /= f1.bin_width;
  r.values = std::move(total);

  r.untruncated_end = r.t_max();
  double cdf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cdf += power.values[i];
    if (cdf >= kTruncationMass) {
      r.untruncated_end = r.bin_start(i);
      break;
    }
  }
  return r;
}

std::size_t default_max_order(std::size_t inter_arrival_count) {
  return std::max<std::size_t>(1, std::min<std::size_t>(1000, inter_arrival_count / 10));
}

double choose_bin_width(const InterArrivals& gaps) {
  if (gaps.size() < 2) {
    throw Error(ErrorKind::insufficient_data, "bin-width search needs at least 2 inter-arrivals");
  }
  std::vector<double> samples(gaps.values.begin(), gaps.values.end());
  const double t_max = *std::max_element(samples.begin(), samples.end()) + 1.0;
  const auto grid = default_bin_width_grid(t_max);
  return optimal_bin_width(samples, grid, t_max);
}

double empirical_grid_end(const InterArrivals& gaps, std::size_t k, double bin_width) {
  check_order(k, gaps.size());
  const std::size_t windows = gaps.size() - k;
  std::vector<double> top(windows);
  Seconds s = 0;
  for (std::size_t j = 0; j < k; ++j) s += gaps.values[j];
  for (std::size_t i = 0; i < windows; ++i) {
    top[i] = static_cast<double>(s);
    s += gaps.values[i + k] - gaps.values[i];
  }
  const double p99 = quantile(std::move(top), 0.99);
  return (std::floor(p99 / bin_width) + 1.0) * bin_width;
}

double convolution_grid_end(const InterArrivals& gaps, std::size_t k, double bin_width) {
  const double span = 1.5 * static_cast<double>(k) * gaps.mean();
  return std::max(1.0, std::ceil(span / bin_width)) * bin_width;
}

}  // namespace rs
