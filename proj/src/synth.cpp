#include "rs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>
#include <string>
#include <utility>

#include "rs/error.hpp"

namespace rs {

namespace {

// Second stream for the rounding dither so the continuous draws depend on the
// seed alone.
constexpr std::uint64_t kDitherSalt = 0x9e3779b97f4a7c15ULL;

void check_law(const GapLaw& law) {
  std::visit(
      [](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ExponentialGaps>) {
          if (!(l.mean > 0.0)) throw Error(ErrorKind::invalid_config, "exponential mean must be > 0");
        } else if constexpr (std::is_same_v<T, GammaGaps>) {
          if (!(l.shape > 0.0) || !(l.mean > 0.0)) {
            throw Error(ErrorKind::invalid_config, "gamma shape and mean must be > 0");
          }
        } else {
          if (!(l.lo >= 0.0) || !(l.hi > l.lo)) {
            throw Error(ErrorKind::invalid_config, "uniform gaps need 0 <= lo < hi");
          }
        }
      },
      law);
}

}  // namespace

std::string_view to_string(EventLabel label) {
  return label == EventLabel::background ? "background" : "injected";
}

std::size_t LabeledStream::count(EventLabel label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

std::vector<double> draw_gaps(const GapLaw& law, std::size_t n, std::uint64_t seed) {
  check_law(law);
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ExponentialGaps>) {
          std::exponential_distribution<double> dist(1.0 / l.mean);
          for (auto& x : out) x = dist(rng);
        } else if constexpr (std::is_same_v<T, GammaGaps>) {
          std::gamma_distribution<double> dist(l.shape, l.mean / l.shape);
          for (auto& x : out) x = dist(rng);
        } else {
          std::uniform_real_distribution<double> dist(l.lo, l.hi);
          for (auto& x : out) x = dist(rng);
        }
      },
      law);
  return out;
}

EventStream gen_renewal(const GapLaw& law, std::size_t m, std::uint64_t seed, Seconds start) {
  if (m < 2) throw Error(ErrorKind::invalid_config, "a generated stream needs m >= 2");
  const auto gaps = draw_gaps(law, m - 1, seed);
  std::mt19937_64 dither_rng(seed ^ kDitherSalt);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EventStream s;
  s.times.reserve(m);
  s.times.push_back(start);
  for (double g : gaps) {
    s.times.push_back(s.times.back() + static_cast<Seconds>(std::floor(g + unit(dither_rng))));
  }
  return s;
}

EventStream gen_poisson(double mean_gap, std::size_t m, std::uint64_t seed, Seconds start) {
  return gen_renewal(ExponentialGaps{mean_gap}, m, seed, start);
}

EventStream gen_cluster(const ClusterSpec& spec, std::size_t m, std::uint64_t seed, Seconds start) {
  if (m < 2) throw Error(ErrorKind::invalid_config, "a generated stream needs m >= 2");
  if (!(spec.trigger_mean > 0.0) || !(spec.mean_burst_size >= 1.0) || !(spec.intra_gap_mean >= 0.0)) {
    throw Error(ErrorKind::invalid_config,
                "cluster spec needs trigger_mean > 0, mean_burst_size >= 1, intra_gap_mean >= 0");
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> trigger_gap(1.0 / spec.trigger_mean);
  std::geometric_distribution<int> extra(1.0 / spec.mean_burst_size);  // burst size - 1
  std::exponential_distribution<double> intra_gap(
      spec.intra_gap_mean > 0.0 ? 1.0 / spec.intra_gap_mean : 1.0);

  // Pending burst events wait in a min-heap; once a later trigger arrives,
  // everything before it is final because new bursts start at the trigger.
  std::priority_queue<double, std::vector<double>, std::greater<>> pending;
  std::vector<double> times;
  times.reserve(m);
  double trigger = 0.0;
  while (times.size() < m) {
    trigger += trigger_gap(rng);
    while (!pending.empty() && pending.top() <= trigger && times.size() < m) {
      times.push_back(pending.top());
      pending.pop();
    }
    if (times.size() >= m) break;
    const int size = 1 + extra(rng);
    double t = trigger;
    for (int i = 0; i < size; ++i) {
      if (i > 0 && spec.intra_gap_mean > 0.0) t += intra_gap(rng);
      pending.push(t);
    }
  }
  EventStream s;
  s.times.reserve(m);
  for (double t : times) s.times.push_back(start + static_cast<Seconds>(std::floor(t)));
  return s;
}

LabeledStream inject_periodic(const EventStream& base, const PeriodicSpec& spec, std::uint64_t seed) {
  if (!(spec.period > 0.0) || !(spec.jitter >= 0.0)) {
    throw Error(ErrorKind::invalid_config, "periodic overlay needs period > 0 and jitter >= 0");
  }
  if (spec.count > 0 && spec.sources < 1) {
    throw Error(ErrorKind::invalid_config, "periodic overlay needs at least one source");
  }
  if (base.empty()) throw Error(ErrorKind::empty_stream, "periodic overlay needs a base stream");

  std::vector<std::pair<Seconds, EventLabel>> merged;
  merged.reserve(base.size() + spec.count);
  for (Seconds t : base.times) merged.emplace_back(t, EventLabel::background);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, spec.period);
  std::uniform_real_distribution<double> jitter(-spec.jitter, spec.jitter);
  const double t0 = static_cast<double>(base.times.front());
  for (std::size_t src = 0; src < spec.sources && spec.count > 0; ++src) {
    const std::size_t n = spec.count / spec.sources + (src < spec.count % spec.sources ? 1 : 0);
    const double offset = t0 + std::floor(phase(rng));
    for (std::size_t i = 0; i < n; ++i) {
      double t = offset + static_cast<double>(i) * spec.period;
      if (spec.jitter > 0.0) t += jitter(rng);
      merged.emplace_back(static_cast<Seconds>(std::floor(t)), EventLabel::injected);
    }
  }
  std::sort(merged.begin(), merged.end());

  LabeledStream out;
  out.stream.times.reserve(merged.size());
  out.labels.reserve(merged.size());
  for (const auto& [t, label] : merged) {
    out.stream.times.push_back(t);
    out.labels.push_back(label);
  }
  return out;
}

std::size_t injected_count_for_fraction(std::size_t base_events, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw Error(ErrorKind::invalid_config, "injected fraction must lie in [0, 1)");
  }
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(base_events) / (1.0 - fraction)));
}

std::size_t sources_to_fit(const EventStream& base, double period, std::size_t count) {
  const double span = static_cast<double>(base.span());
  if (count == 0 || span <= 0.0) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(static_cast<double>(count) * period / span)));
}

LabeledStream generate(const GeneratorSpec& spec) {
  const EventStream base = std::visit(
      [&](const auto& g) -> EventStream {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PoissonGen>) {
          return gen_poisson(g.mean_gap, spec.m, spec.seed);
        } else if constexpr (std::is_same_v<T, RenewalGen>) {
          return gen_renewal(g.law, spec.m, spec.seed);
        } else {
          return gen_cluster(g.spec, spec.m, spec.seed);
        }
      },
      spec.base);
  if (spec.overlay.count == 0) {
    return LabeledStream{base, std::vector<EventLabel>(base.size(), EventLabel::background)};
  }
  PeriodicSpec overlay = spec.overlay;
  if (overlay.sources == 0) overlay.sources = sources_to_fit(base, overlay.period, overlay.count);
  return inject_periodic(base, overlay, spec.seed ^ kDitherSalt);
}

}  // namespace rs
