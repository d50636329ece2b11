#include "rs/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "rs/error.hpp"

namespace rs {

namespace {
constexpr double kNormalizedPeak = 10.0;
}

void DetectionConfig::validate() const {
  if (n_sub < 1) throw Error(ErrorKind::invalid_config, "number of sub-densities must be >= 1");
  if (half_window && *half_window < 1) {
    throw Error(ErrorKind::invalid_config, "smoothing half-window must be >= 1");
  }
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.5)) {
    throw Error(ErrorKind::invalid_config, "trim fraction must lie in [0, 0.5)");
  }
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw Error(ErrorKind::invalid_config, "false-alarm probability must lie in (0, 1)");
  }
}

std::vector<double> normalize_rd(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw Error(ErrorKind::domain, "renewal density values must be finite and non-negative");
    }
    peak = std::max(peak, v);
  }
  if (peak <= 0.0) throw Error(ErrorKind::empty_density, "renewal density is identically zero");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] == peak ? kNormalizedPeak : kNormalizedPeak * (values[i] / peak);
  }
  return out;
}

SubDensities split_subdensities(std::span<const double> values, std::size_t n_sub) {
  if (n_sub < 1 || n_sub > values.size()) {
    throw Error(ErrorKind::invalid_config,
                "cannot split " + std::to_string(values.size()) + " bins into " +
                    std::to_string(n_sub) + " sub-densities");
  }
  SubDensities out;
  out.n_bins = values.size() / n_sub;
  out.dropped = values.size() - out.n_bins * n_sub;
  out.blocks.reserve(n_sub);
  for (std::size_t i = 0; i < n_sub; ++i) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(i * out.n_bins);
    out.blocks.emplace_back(first, first + static_cast<std::ptrdiff_t>(out.n_bins));
  }
  return out;
}

std::vector<double> trimmed_mean_smooth(std::span<const double> block, std::size_t half_window,
                                        double trim_fraction) {
  if (block.size() < 2) {
    throw Error(ErrorKind::insufficient_data, "smoothing needs a sub-density of at least 2 bins");
  }
  if (half_window < 1) throw Error(ErrorKind::invalid_config, "smoothing half-window must be >= 1");
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.5)) {
    throw Error(ErrorKind::invalid_config, "trim fraction must lie in [0, 0.5)");
  }

  const std::size_t n = block.size();
  std::vector<double> out(n);
  std::vector<double> hood;
  hood.reserve(2 * half_window);
  for (std::size_t t = 0; t < n; ++t) {
    hood.clear();
    const std::size_t lo = t >= half_window ? t - half_window : 0;
    const std::size_t hi = std::min(n - 1, t + half_window);
    for (std::size_t i = lo; i <= hi; ++i) {
      if (i != t) hood.push_back(block[i]);
    }
    std::sort(hood.begin(), hood.end());
    const auto cut = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(hood.size())));
    std::size_t first = cut, last = hood.size() - cut;
    if (first >= last) {
      first = 0;
      last = hood.size();
    }
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) sum += hood[i];
    out[t] = sum / static_cast<double>(last - first);
  }
  return out;
}

double chi_square_stat(std::span<const double> observed, std::span<const double> smoothed) {
  if (observed.size() != smoothed.size()) {
    throw Error(ErrorKind::grid_mismatch, "observed and smoothed lengths differ");
  }
  double chi2 = 0.0;
  for (std::size_t m = 0; m < observed.size(); ++m) {
    const double s = smoothed[m];
    if (s <= 0.0) {
      if (observed[m] == 0.0) continue;
      throw Error(ErrorKind::degenerate_bin,
                  "bin " + std::to_string(m) + " has a zero baseline but a non-zero value");
    }
    const double d = observed[m] - s;
    chi2 += d * d / s;
  }
  return chi2;
}

double chi_square_cdf(double x, double dof) {
  if (std::isnan(x) || x < 0.0) throw Error(ErrorKind::domain, "chi-square CDF needs x >= 0");
  if (!(dof > 0.0)) throw Error(ErrorKind::domain, "chi-square CDF needs dof > 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

DetectionReport detect(std::span<const double> rd_values, const DetectionConfig& cfg) {
  cfg.validate();
  if (rd_values.empty()) throw Error(ErrorKind::insufficient_data, "renewal density is empty");
  std::span<const double> values = rd_values;
  if (cfg.exclude_origin_bin) values = values.subspan(1);

  const auto normalized = normalize_rd(values);
  const auto split = split_subdensities(normalized, cfg.n_sub);

  DetectionReport report;
  report.n_sub = cfg.n_sub;
  report.n_bins = split.n_bins;
  report.dropped_bins = split.dropped;
  report.half_window = cfg.half_window.value_or(std::max<std::size_t>(1, split.n_bins / 2));
  report.trim_fraction = cfg.trim_fraction;
  report.p_fa = cfg.p_fa;
  report.exclude_origin_bin = cfg.exclude_origin_bin;

  for (std::size_t i = 0; i < split.blocks.size(); ++i) {
    const auto& block = split.blocks[i];
    const auto smooth = trimmed_mean_smooth(block, report.half_window, cfg.trim_fraction);
    SubDensityResult r;
    r.index = i;
    r.chi2 = chi_square_stat(block, smooth);
    r.p = chi_square_cdf(r.chi2, static_cast<double>(split.n_bins));
    r.flag = r.p > 1.0 - cfg.p_fa;
    report.detected = report.detected || r.flag;
    report.subs.push_back(r);
  }
  return report;
}

DetectionReport detect(const RenewalDensityEstimate& rd, const DetectionConfig& cfg) {
  return detect(std::span<const double>(rd.values), cfg);
}

}  // namespace rs
