#include "rs/characterization.hpp"

#include <algorithm>
#include <cmath>

#include "rs/error.hpp"

namespace rs {

std::vector<double> cumulative(const std::vector<double>& e) {
  std::vector<double> E(e.size());
  double run = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    run += e[i];
    E[i] = run;
  }
  return E;
}

DifferenceCurves difference(const RenewalDensityEstimate& empirical,
                            const RenewalDensityEstimate& convolution, bool exclude_origin_bin) {
  const double w = empirical.bin_width;
  if (std::abs(w - convolution.bin_width) > 1e-12 * std::max(w, convolution.bin_width)) {
    throw Error(ErrorKind::grid_mismatch, "estimates use different bin widths");
  }
  const std::size_t first = exclude_origin_bin ? 1 : 0;
  const std::size_t common = std::min(empirical.bins(), convolution.bins());
  if (common <= first) {
    throw Error(ErrorKind::insufficient_overlap, "estimates share no grid bins");
  }
  DifferenceCurves d;
  d.bin_width = w;
  d.first_bin = first;
  d.e.reserve(common - first);
  for (std::size_t i = first; i < common; ++i) {
    d.e.push_back(empirical.values[i] - convolution.values[i]);
  }
  d.E = cumulative(d.e);
  return d;
}

std::string_view to_string(Zone zone) {
  switch (zone) {
    case Zone::low: return "low";
    case Zone::middle: return "middle";
    case Zone::high: return "high";
  }
  return "low";
}

void ZoneThresholds::validate() const {
  if (!(low >= 0.0 && low < high)) {
    throw Error(ErrorKind::invalid_config, "zone thresholds must satisfy 0 <= low < high");
  }
}

Zone classify_zone(double e_max_norm, const ZoneThresholds& thresholds) {
  thresholds.validate();
  if (e_max_norm < thresholds.low) return Zone::low;
  if (e_max_norm < thresholds.high) return Zone::middle;
  return Zone::high;
}

CharacterizationResult characterize(const DifferenceCurves& curves, std::size_t k,
                                    double source_rate, const ZoneThresholds& thresholds) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "number of pdfs must be >= 1");
  if (!(source_rate > 0.0)) throw Error(ErrorKind::invalid_config, "source rate must be > 0");
  if (curves.E.empty()) throw Error(ErrorKind::insufficient_overlap, "empty difference curves");

  const auto peak = std::max_element(curves.E.begin(), curves.E.end());
  const auto idx = static_cast<std::size_t>(peak - curves.E.begin());
  CharacterizationResult r;
  r.e_max_norm = *peak / static_cast<double>(k);
  r.peak_time = curves.time_of(idx);
  r.position_tweets = r.peak_time * source_rate;
  r.zone = classify_zone(r.e_max_norm, thresholds);
  return r;
}

}  // namespace rs
