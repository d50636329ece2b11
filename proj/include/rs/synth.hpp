#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "rs/ingest.hpp"

namespace rs {

// Inter-arrival laws for plain renewal streams. All parameters in seconds.
struct ExponentialGaps {
  double mean = 1.0;
};
struct GammaGaps {
  double shape = 1.0;
  double mean = 1.0;
};
struct UniformGaps {
  double lo = 0.0;
  double hi = 1.0;
};
using GapLaw = std::variant<ExponentialGaps, GammaGaps, UniformGaps>;

// Bursts start at Poisson times (mean spacing trigger_mean); each burst holds a
// geometric number of events (mean mean_burst_size, at least 1) separated by
// exponential gaps of mean intra_gap_mean.
struct ClusterSpec {
  double trigger_mean = 10.0;
  double mean_burst_size = 5.0;
  double intra_gap_mean = 0.25;

  double rate() const { return mean_burst_size / trigger_mean; }
};

// `sources` independent trains, each at period `period` with a random phase
// and per-event jitter uniform on [-jitter, jitter]; `count` events in total.
struct PeriodicSpec {
  double period = 100.0;
  double jitter = 0.0;
  std::size_t count = 0;
  std::size_t sources = 1;
};

enum class EventLabel : std::uint8_t { background, injected };

std::string_view to_string(EventLabel label);

struct LabeledStream {
  EventStream stream;
  std::vector<EventLabel> labels;  // aligned with stream.times

  std::size_t count(EventLabel label) const;
};

// Continuous iid draws before rounding; gen_renewal uses exactly these.
std::vector<double> draw_gaps(const GapLaw& law, std::size_t n, std::uint64_t seed);

// m events starting at `start`. Each gap is rounded to whole seconds with
// unbiased dithering (floor(x + u), u ~ U[0,1)), which keeps the gaps iid and
// their mean equal to the continuous mean.
EventStream gen_renewal(const GapLaw& law, std::size_t m, std::uint64_t seed, Seconds start = 0);
EventStream gen_poisson(double mean_gap, std::size_t m, std::uint64_t seed, Seconds start = 0);

// Continuous burst times are floored to whole seconds.
EventStream gen_cluster(const ClusterSpec& spec, std::size_t m, std::uint64_t seed,
                        Seconds start = 0);

// Merges periodic events into `base`. Phases are drawn so every train starts
// inside the first period after base's first event.
LabeledStream inject_periodic(const EventStream& base, const PeriodicSpec& spec, std::uint64_t seed);

// Number of injected events that makes them `fraction` of the merged stream.
std::size_t injected_count_for_fraction(std::size_t base_events, double fraction);

// Smallest number of trains at `period` whose events fit inside base's span.
std::size_t sources_to_fit(const EventStream& base, double period, std::size_t count);

struct PoissonGen {
  double mean_gap = 1.0;
};
struct RenewalGen {
  GapLaw law;
};
struct ClusterGen {
  ClusterSpec spec;
};

struct GeneratorSpec {
  std::variant<PoissonGen, RenewalGen, ClusterGen> base = PoissonGen{};
  // Optional overlay; count == 0 disables it and sources == 0 means "as
  // many trains as needed to span the base stream".
  PeriodicSpec overlay{};
  std::size_t m = 1000;  // base events
  std::uint64_t seed = 1;
};

LabeledStream generate(const GeneratorSpec& spec);

}  // namespace rs
