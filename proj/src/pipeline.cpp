#include "rs/pipeline.hpp"

#include <string>

#include "rs/error.hpp"

namespace rs {

namespace {

std::vector<std::string> convergence_warnings(std::size_t events) {
  if (events >= kConvergenceEvents) return {};
  return {"only " + std::to_string(events) + " events; histograms may not have converged (" +
          std::to_string(kConvergenceEvents) + "+ recommended)"};
}

}  // namespace

PreparedGaps prepare(const EventStream& stream, const EstimationOptions& options) {
  PreparedGaps p;
  p.gaps = inter_arrivals(stream);
  if (options.downsample) p.gaps = downsample(p.gaps, *options.downsample, options.seed);
  if (p.gaps.size() < 2) {
    throw Error(ErrorKind::insufficient_data, "fewer than 2 inter-arrivals to analyse");
  }
  if (p.gaps.total() <= 0) {
    throw Error(ErrorKind::insufficient_data, "all events share one timestamp");
  }
  p.max_order = options.max_order.value_or(default_max_order(p.gaps.size()));
  if (p.max_order < 1) throw Error(ErrorKind::invalid_config, "maximum order must be >= 1");
  if (options.bin_width) {
    if (!(*options.bin_width > 0.0)) throw Error(ErrorKind::invalid_config, "bin width must be > 0");
    p.bin_width = *options.bin_width;
  } else {
    p.bin_width = choose_bin_width(p.gaps);
  }
  return p;
}

RenewalDensityEstimate estimate_empirical(const PreparedGaps& p) {
  const double t_max = empirical_grid_end(p.gaps, p.max_order, p.bin_width);
  return empirical_rd(p.gaps, p.max_order, p.bin_width, t_max);
}

RenewalDensityEstimate estimate_convolution(const PreparedGaps& p) {
  const double t_max = convolution_grid_end(p.gaps, p.max_order, p.bin_width);
  auto rd = convolution_rd(first_order_pdf(p.gaps, p.bin_width, t_max), p.max_order);
  rd.source_rate = p.gaps.rate();
  return rd;
}

Analysis analyze(const EventStream& stream, const AnalysisOptions& options) {
  options.thresholds.validate();
  const PreparedGaps p = prepare(stream, options.estimation);
  Analysis a;
  a.events = p.gaps.size() + 1;
  a.rate = p.gaps.rate();
  a.max_order = p.max_order;
  a.bin_width = p.bin_width;
  a.empirical = estimate_empirical(p);
  a.convolution = estimate_convolution(p);
  a.curves = difference(a.empirical, a.convolution, options.detection.exclude_origin_bin);
  a.characterization = characterize(a.curves, p.max_order, a.rate, options.thresholds);
  a.warnings = convergence_warnings(a.events);
  return a;
}

DetectionRun run_detection(const EventStream& stream, const AnalysisOptions& options) {
  options.detection.validate();
  const PreparedGaps p = prepare(stream, options.estimation);
  DetectionRun run;
  run.events = p.gaps.size() + 1;
  run.max_order = p.max_order;
  run.bin_width = p.bin_width;
  run.report = detect(estimate_empirical(p), options.detection);
  run.warnings = convergence_warnings(run.events);
  return run;
}

nlohmann::json summary_json(const Analysis& a) {
  return {
      {"rate", a.rate},
      {"m", a.events},
      {"k", a.max_order},
      {"delta", a.bin_width},
      {"e_max_norm", a.characterization.e_max_norm},
      {"position_tweets", a.characterization.position_tweets},
      {"zone", std::string(to_string(a.characterization.zone))},
      {"peak_time", a.characterization.peak_time},
      {"empirical_untruncated_end", a.empirical.untruncated_end},
      {"convolution_untruncated_end", a.convolution.untruncated_end},
  };
}

}  // namespace rs
