#include "rs/io.hpp"

#include <cstdio>
#include <fstream>

#include "rs/error.hpp"

namespace rs {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

namespace {

template <typename Values, typename StartOf>
std::string two_column_csv(const char* header, const Values& values, StartOf start_of) {
  std::string out = header;
  out += '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += format_number(start_of(i));
    out += ',';
    out += format_number(static_cast<double>(values[i]));
    out += '\n';
  }
  return out;
}

}  // namespace

std::string histogram_csv(const Histogram& h) {
  return two_column_csv("bin_start,value", h.counts, [&](std::size_t i) { return h.bin_start(i); });
}

std::string density_csv(const Density& d) {
  return two_column_csv("bin_start,value", d.values, [&](std::size_t i) { return d.bin_start(i); });
}

std::string rd_csv(const RenewalDensityEstimate& rd) {
  return two_column_csv("t,value", rd.values, [&](std::size_t i) { return rd.bin_start(i); });
}

std::string difference_csv(const DifferenceCurves& d) {
  std::string out = "t,e,E\n";
  for (std::size_t i = 0; i < d.e.size(); ++i) {
    out += format_number(d.time_of(i));
    out += ',';
    out += format_number(d.e[i]);
    out += ',';
    out += format_number(d.E[i]);
    out += '\n';
  }
  return out;
}

std::string labels_csv(const LabeledStream& s) {
  std::string out = "time,label\n";
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    out += std::to_string(s.stream.times[i]);
    out += ',';
    out += to_string(s.labels[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json rd_json(const RenewalDensityEstimate& rd) {
  return {
      {"kind", std::string(to_string(rd.kind))},
      {"delta", rd.bin_width},
      {"k", rd.max_order},
      {"rate", rd.source_rate},
      {"values", rd.values},
  };
}

RenewalDensityEstimate rd_from_json(const nlohmann::json& j) {
  try {
    RenewalDensityEstimate rd;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "empirical") {
      rd.kind = EstimateKind::empirical;
    } else if (kind == "convolution") {
      rd.kind = EstimateKind::convolution;
    } else {
      throw Error(ErrorKind::parse, "unknown estimate kind '" + kind + "'");
    }
    rd.bin_width = j.at("delta").get<double>();
    rd.max_order = j.at("k").get<std::size_t>();
    rd.source_rate = j.at("rate").get<double>();
    rd.values = j.at("values").get<std::vector<double>>();
    if (!(rd.bin_width > 0.0)) throw Error(ErrorKind::parse, "delta must be > 0");
    rd.untruncated_end = rd.t_max();
    return rd;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bad renewal density JSON: ") + e.what());
  }
}

nlohmann::json detection_json(const DetectionReport& report) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : report.subs) {
    subs.push_back({{"index", s.index}, {"chi2", s.chi2}, {"p", s.p}, {"flag", s.flag}});
  }
  return {
      {"n_sub", report.n_sub},
      {"n_bins", report.n_bins},
      {"p_fa", report.p_fa},
      {"subs", std::move(subs)},
      {"detected", report.detected},
  };
}

nlohmann::json characterization_json(const CharacterizationResult& result) {
  return {
      {"e_max_norm", result.e_max_norm},
      {"position_tweets", result.position_tweets},
      {"zone", std::string(to_string(result.zone))},
  };
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

}  // namespace rs
