#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rs/characterization.hpp"
#include "rs/detection.hpp"
#include "rs/estimation.hpp"
#include "rs/ingest.hpp"

namespace rs {

// Streams shorter than this may not give converged histograms; detection
// still runs but reports a warning.
inline constexpr std::size_t kConvergenceEvents = 5000;

struct EstimationOptions {
  std::optional<std::size_t> max_order;   // default_max_order when unset
  std::optional<double> bin_width;        // choose_bin_width when unset
  std::optional<GroupRange> downsample;   // no grouping when unset
  std::uint64_t seed = 1;                 // downsampling only
};

struct AnalysisOptions {
  EstimationOptions estimation;
  DetectionConfig detection;
  ZoneThresholds thresholds;
};

// Inter-arrivals after optional downsampling, with the resolved k and width.
struct PreparedGaps {
  InterArrivals gaps;
  std::size_t max_order = 0;
  double bin_width = 1.0;
};

PreparedGaps prepare(const EventStream& stream, const EstimationOptions& options);

RenewalDensityEstimate estimate_empirical(const PreparedGaps& prepared);
RenewalDensityEstimate estimate_convolution(const PreparedGaps& prepared);

struct Analysis {
  std::size_t events = 0;
  double rate = 0.0;  // of the analysed (possibly downsampled) sequence
  std::size_t max_order = 0;
  double bin_width = 1.0;
  RenewalDensityEstimate empirical;
  RenewalDensityEstimate convolution;
  DifferenceCurves curves;
  CharacterizationResult characterization;
  std::vector<std::string> warnings;
};

Analysis analyze(const EventStream& stream, const AnalysisOptions& options);

struct DetectionRun {
  std::size_t events = 0;
  std::size_t max_order = 0;
  double bin_width = 1.0;
  DetectionReport report;
  std::vector<std::string> warnings;
};

DetectionRun run_detection(const EventStream& stream, const AnalysisOptions& options);

// rate, m, k, delta, e_max_norm, position_tweets, zone
nlohmann::json summary_json(const Analysis& analysis);

}  // namespace rs
