#include "rs/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "rs/error.hpp"

namespace rs {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_fixed_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

Seconds parse_iso(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS with an optional trailing Z
  if (s.size() == 20 && s.back() == 'Z') s.remove_suffix(1);
  if (s.size() > 19 && s[19] == '.') {
    throw Error(ErrorKind::parse, "sub-second timestamps are not supported");
  }
  if (s.size() != 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':') {
    throw Error(ErrorKind::parse, "unrecognised timestamp '" + std::string(s) + "'");
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  if (!parse_fixed_digits(s.substr(0, 4), y) || !parse_fixed_digits(s.substr(5, 2), mo) ||
      !parse_fixed_digits(s.substr(8, 2), d) || !parse_fixed_digits(s.substr(11, 2), h) ||
      !parse_fixed_digits(s.substr(14, 2), mi) || !parse_fixed_digits(s.substr(17, 2), sec)) {
    throw Error(ErrorKind::parse, "unrecognised timestamp '" + std::string(s) + "'");
  }
  using namespace std::chrono;
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok() || h > 23 || mi > 59 || sec > 59) {
    throw Error(ErrorKind::parse, "timestamp out of range '" + std::string(s) + "'");
  }
  const auto days = sys_days{date}.time_since_epoch().count();
  return static_cast<Seconds>(days) * 86400 + h * 3600 + mi * 60 + sec;
}

}  // namespace

double EventStream::rate() const {
  if (times.size() < 2 || span() <= 0) {
    throw Error(ErrorKind::insufficient_data,
                "rate needs at least two events spanning a positive interval");
  }
  return static_cast<double>(times.size() - 1) / static_cast<double>(span());
}

Seconds InterArrivals::total() const noexcept {
  return std::accumulate(values.begin(), values.end(), Seconds{0});
}

double InterArrivals::mean() const {
  if (values.empty()) {
    throw Error(ErrorKind::insufficient_data, "mean of an empty inter-arrival sequence");
  }
  return static_cast<double>(total()) / static_cast<double>(values.size());
}

double InterArrivals::rate() const {
  const double m = mean();
  if (m <= 0.0) {
    throw Error(ErrorKind::insufficient_data, "all inter-arrivals are zero; rate is undefined");
  }
  return 1.0 / m;
}

GroupRange GroupRange::parse(std::string_view text) {
  const auto colon = text.find(':');
  GroupRange r;
  const auto parse_int = [&](std::string_view s, int& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::invalid_config,
                  "bad group range '" + std::string(text) + "', expected min:max");
    }
  };
  if (colon == std::string_view::npos) {
    parse_int(text, r.min);
    r.max = r.min;
  } else {
    parse_int(text.substr(0, colon), r.min);
    parse_int(text.substr(colon + 1), r.max);
  }
  return r;
}

EventStream make_stream(std::vector<Seconds> times) {
  std::sort(times.begin(), times.end());
  return EventStream{std::move(times)};
}

Seconds parse_timestamp(std::string_view field) {
  field = trim(field);
  if (field.empty()) throw Error(ErrorKind::parse, "empty timestamp");
  if (field.size() >= 19 && field[4] == '-') return parse_iso(field);

  Seconds value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr == field.data()) {
    throw Error(ErrorKind::parse, "unrecognised timestamp '" + std::string(field) + "'");
  }
  if (ptr != field.data() + field.size()) {
    if (*ptr == '.' || *ptr == 'e' || *ptr == 'E') {
      throw Error(ErrorKind::parse, "sub-second timestamps are not supported");
    }
    throw Error(ErrorKind::parse, "unrecognised timestamp '" + std::string(field) + "'");
  }
  return value;
}

EventStream parse_stream(std::string_view text) {
  std::vector<Seconds> times;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    try {
      times.push_back(parse_timestamp(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (times.empty()) throw Error(ErrorKind::empty_stream, "input contains no events");
  return make_stream(std::move(times));
}

EventStream read_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stream(buf.str());
}

std::string serialize_stream(const EventStream& stream) {
  std::string out;
  out.reserve(stream.size() * 11);
  char buf[24];
  for (Seconds t : stream.times) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
    out.append(buf, ptr);
    out.push_back('\n');
  }
  return out;
}

void write_stream(const std::filesystem::path& path, const EventStream& stream) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  out << serialize_stream(stream);
}

InterArrivals inter_arrivals(const EventStream& stream) {
  if (stream.size() < 2) {
    throw Error(ErrorKind::insufficient_data,
                "need at least 2 events, got " + std::to_string(stream.size()));
  }
  InterArrivals gaps;
  gaps.values.reserve(stream.size() - 1);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    gaps.values.push_back(stream.times[i] - stream.times[i - 1]);
  }
  return gaps;
}

EventStream integrate(Seconds origin, const InterArrivals& gaps) {
  EventStream s;
  s.times.reserve(gaps.size() + 1);
  s.times.push_back(origin);
  for (Seconds g : gaps.values) s.times.push_back(s.times.back() + g);
  return s;
}

InterArrivals downsample(const InterArrivals& gaps, GroupRange range, std::uint64_t seed) {
  if (range.min < 1 || range.max < range.min) {
    throw Error(ErrorKind::invalid_config,
                "group range must satisfy 1 <= min <= max, got " + std::to_string(range.min) +
                    ":" + std::to_string(range.max));
  }
  if (gaps.empty()) throw Error(ErrorKind::insufficient_data, "nothing to downsample");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> group_size(range.min, range.max);
  InterArrivals out;
  out.values.reserve(gaps.size() / static_cast<std::size_t>(range.min) + 1);
  std::size_t i = 0;
  while (i < gaps.size()) {
    const auto g = static_cast<std::size_t>(group_size(rng));
    const std::size_t end = std::min(gaps.size(), i + g);
    Seconds sum = 0;
    for (; i < end; ++i) sum += gaps.values[i];
    out.values.push_back(sum);
  }
  return out;
}

}  // namespace rs
