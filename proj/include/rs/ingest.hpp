#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rs {

// Event times are whole seconds; the source data has 1 s resolution and
// same-second events are legal.
using Seconds = std::int64_t;

struct EventStream {
  std::vector<Seconds> times;  // non-decreasing

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  Seconds span() const noexcept {
    return times.size() < 2 ? 0 : times.back() - times.front();
  }
  // (m - 1) / span; throws insufficient_data when m < 2 or the span is 0.
  double rate() const;
};

struct InterArrivals {
  std::vector<Seconds> values;  // each >= 0

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  Seconds total() const noexcept;
  double mean() const;
  // Events per second of the sequence, i.e. 1 / mean.
  double rate() const;
};

// Uniform integer range for the number of inter-arrivals merged per group.
struct GroupRange {
  int min = 1;
  int max = 1;

  static GroupRange parse(std::string_view text);  // "min:max" or "n"
};

// Sorts the times; input order is irrelevant and duplicates are kept.
EventStream make_stream(std::vector<Seconds> times);

// One event per line, either integer epoch seconds or YYYY-MM-DDTHH:MM:SS
// (interpreted as UTC). Blank lines and lines starting with '#' are skipped.
EventStream parse_stream(std::string_view text);
EventStream read_stream(const std::filesystem::path& path);

// Inverse of parse_stream for integer-epoch input: one integer per line,
// each line newline-terminated.
std::string serialize_stream(const EventStream& stream);
void write_stream(const std::filesystem::path& path, const EventStream& stream);

// Parses a single timestamp field. Exposed for tests.
Seconds parse_timestamp(std::string_view field);

InterArrivals inter_arrivals(const EventStream& stream);

// Rebuilds absolute times from an origin and a gap sequence.
EventStream integrate(Seconds origin, const InterArrivals& gaps);

// Replaces consecutive runs of g gaps (g uniform in [range.min, range.max],
// drawn per group) by their sum. A trailing short group is emitted as its
// sum, so the total is preserved exactly.
InterArrivals downsample(const InterArrivals& gaps, GroupRange range, std::uint64_t seed);

}  // namespace rs
