#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rs/error.hpp"
#include "rs/io.hpp"
#include "rs/pipeline.hpp"
#include "rs/synth.hpp"

namespace rs::cli {

namespace {

namespace fs = std::filesystem;

// Raw option text keyed by option name. Values come from flags first, then
// the --config JSON file, then built-in defaults.
class Settings {
 public:
  CLI::Option* bind(CLI::App* app, const std::string& name, const std::string& help) {
    auto* opt = app->add_option("--" + name, flags_[name], help);
    options_[name].push_back(opt);
    return opt;
  }

  void bind_flag(CLI::App* app, const std::string& name, const std::string& help) {
    options_[name].push_back(app->add_flag("--" + name, help));
  }

  void load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open config '" + path.string() + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, "config '" + path.string() + "': " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::parse, "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      std::string name = key;
      std::replace(name.begin(), name.end(), '_', '-');
      if (value.is_string()) {
        config_[name] = value.get<std::string>();
      } else if (value.is_array()) {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
        config_[name] = joined;
      } else {
        config_[name] = value.dump();
      }
    }
  }

  std::optional<std::string> raw(const std::string& name) const {
    if (auto it = options_.find(name); it != options_.end()) {
      for (const auto* opt : it->second) {
        if (opt->count() > 0) {
          if (opt->get_expected_min() == 0) return "true";
          return flags_.at(name);
        }
      }
    }
    if (auto it = config_.find(name); it != config_.end()) return it->second;
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> get(const std::string& name) const {
    const auto text = raw(name);
    if (!text) return std::nullopt;
    return convert<T>(name, *text);
  }

  template <typename T>
  T get_or(const std::string& name, T fallback) const {
    return get<T>(name).value_or(fallback);
  }

 private:
  template <typename T>
  static T convert(const std::string& name, const std::string& text) {
    const auto bad = [&] {
      return Error(ErrorKind::invalid_config, "bad value '" + text + "' for --" + name);
    };
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw bad();
    } else if constexpr (std::is_floating_point_v<T>) {
      std::istringstream in(text);
      in.imbue(std::locale::classic());
      T v{};
      if (!(in >> v) || !in.eof()) throw bad();
      return v;
    } else {
      T v{};
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) throw bad();
      return v;
    }
  }

  std::map<std::string, std::string> flags_;
  std::map<std::string, std::vector<CLI::Option*>> options_;
  std::map<std::string, std::string> config_;
};

std::uint64_t resolve_seed(const Settings& s) {
  if (auto seed = s.get<std::uint64_t>("seed")) return *seed;
  if (const char* env = std::getenv("RS_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw Error(ErrorKind::invalid_config, "RS_SEED must be an unsigned integer");
    }
    return v;
  }
  return 1;
}

ZoneThresholds parse_thresholds(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorKind::invalid_config, "thresholds must be given as lo,hi");
  }
  ZoneThresholds t;
  try {
    std::size_t used = 0;
    t.low = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("lo");
    const std::string hi = text.substr(comma + 1);
    t.high = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("hi");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_config, "bad thresholds '" + text + "'");
  }
  t.validate();
  return t;
}

AnalysisOptions analysis_options(const Settings& s) {
  AnalysisOptions o;
  o.estimation.max_order = s.get<std::size_t>("k");
  o.estimation.bin_width = s.get<double>("delta");
  if (auto ds = s.get<std::string>("downsample")) o.estimation.downsample = GroupRange::parse(*ds);
  o.estimation.seed = resolve_seed(s);
  o.detection.n_sub = s.get_or<std::size_t>("n-sub", o.detection.n_sub);
  o.detection.half_window = s.get<std::size_t>("half-window");
  o.detection.trim_fraction = s.get_or<double>("trim", o.detection.trim_fraction);
  o.detection.p_fa = s.get_or<double>("p-fa", o.detection.p_fa);
  o.detection.exclude_origin_bin = s.get_or<bool>("exclude-origin-bin", false);
  if (auto th = s.get<std::string>("thresholds")) o.thresholds = parse_thresholds(*th);
  o.detection.validate();
  o.thresholds.validate();
  return o;
}

void add_analysis_flags(CLI::App* app, Settings& s) {
  s.bind(app, "k", "maximum pdf order (default min(1000, m/10))");
  s.bind(app, "delta", "bin width in seconds (default: Shimazaki-optimal)");
  s.bind(app, "n-sub", "number of sub-densities (default 8)");
  s.bind(app, "half-window", "trimmed-mean half-window T in bins (default N_bins/2)");
  s.bind(app, "trim", "trim fraction per side (default 0.35)");
  s.bind(app, "p-fa", "false-alarm probability (default 0.05)");
  s.bind(app, "thresholds", "zone thresholds lo,hi");
  s.bind_flag(app, "exclude-origin-bin", "drop bin 0 before detection and differencing");
  s.bind(app, "downsample", "group inter-arrivals, group size uniform on min:max");
  s.bind(app, "seed", "random seed (falls back to RS_SEED, then 1)");
  s.bind(app, "out-dir", "directory for output files");
}

fs::path out_dir(const Settings& s) {
  fs::path dir = s.get_or<std::string>("out-dir", ".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "rstream: warning: " << w << '\n';
}

int cmd_analyze(const Settings& s, const std::string& input, std::ostream& out, std::ostream& err) {
  const auto options = analysis_options(s);
  const auto analysis = analyze(read_stream(input), options);
  warn(err, analysis.warnings);
  const fs::path dir = out_dir(s);
  write_text(dir / "rd_empirical.csv", rd_csv(analysis.empirical));
  write_text(dir / "rd_convolution.csv", rd_csv(analysis.convolution));
  write_text(dir / "e.csv", difference_csv(analysis.curves));
  const std::string summary = summary_json(analysis).dump(2) + "\n";
  write_text(dir / "summary.json", summary);
  out << summary;
  return kExitClean;
}

int cmd_detect(const Settings& s, const std::string& input, std::ostream& out, std::ostream& err) {
  const auto options = analysis_options(s);
  const auto run = run_detection(read_stream(input), options);
  warn(err, run.warnings);
  const std::string report = detection_json(run.report).dump(2) + "\n";
  if (s.raw("out-dir")) write_text(out_dir(s) / "detection.json", report);
  out << report;
  return run.report.detected ? kExitDetected : kExitClean;
}

int cmd_characterize(const Settings& s, const std::string& input, std::ostream& out,
                     std::ostream& err) {
  const auto options = analysis_options(s);
  const auto analysis = analyze(read_stream(input), options);
  warn(err, analysis.warnings);
  const std::string summary = characterization_json(analysis.characterization).dump(2) + "\n";
  if (s.raw("out-dir")) {
    const fs::path dir = out_dir(s);
    write_text(dir / "e.csv", difference_csv(analysis.curves));
    write_text(dir / "characterization.json", summary);
  }
  out << summary;
  return kExitClean;
}

int cmd_downsample(const Settings& s, const std::string& input, std::ostream& out) {
  const auto range = s.get<std::string>("downsample");
  if (!range) throw Error(ErrorKind::invalid_config, "downsample needs --downsample min:max");
  const EventStream stream = read_stream(input);
  const auto gaps = downsample(inter_arrivals(stream), GroupRange::parse(*range), resolve_seed(s));
  const EventStream result = integrate(stream.times.front(), gaps);
  if (auto path = s.get<std::string>("out")) {
    write_stream(*path, result);
  } else {
    out << serialize_stream(result);
  }
  return kExitClean;
}

GeneratorSpec generator_spec(const Settings& s) {
  GeneratorSpec spec;
  spec.m = s.get_or<std::size_t>("m", 1000);
  spec.seed = resolve_seed(s);
  const auto kind = s.get_or<std::string>("kind", "poisson");
  const double mean = s.get_or<double>("mean", 1.0);
  if (kind == "poisson") {
    spec.base = PoissonGen{mean};
  } else if (kind == "renewal") {
    const auto law = s.get_or<std::string>("law", "exponential");
    if (law == "exponential") {
      spec.base = RenewalGen{ExponentialGaps{mean}};
    } else if (law == "gamma") {
      spec.base = RenewalGen{GammaGaps{s.get_or<double>("shape", 1.0), mean}};
    } else if (law == "uniform") {
      spec.base = RenewalGen{UniformGaps{s.get_or<double>("lo", 0.0), s.get_or<double>("hi", 2.0 * mean)}};
    } else {
      throw Error(ErrorKind::invalid_config, "unknown gap law '" + law + "'");
    }
  } else if (kind == "cluster") {
    ClusterSpec c;
    c.trigger_mean = s.get_or<double>("trigger-mean", c.trigger_mean);
    c.mean_burst_size = s.get_or<double>("burst-size", c.mean_burst_size);
    c.intra_gap_mean = s.get_or<double>("intra-gap", c.intra_gap_mean);
    spec.base = ClusterGen{c};
  } else {
    throw Error(ErrorKind::invalid_config, "unknown generator kind '" + kind + "'");
  }

  const auto period = s.get<double>("period");
  if (period) {
    spec.overlay.period = *period;
    spec.overlay.jitter = s.get_or<double>("jitter", 0.0);
    if (auto count = s.get<std::size_t>("count")) {
      spec.overlay.count = *count;
    } else {
      spec.overlay.count = injected_count_for_fraction(spec.m, s.get_or<double>("fraction", 0.05));
    }
    spec.overlay.sources = s.get_or<std::size_t>("sources", 0);
  }
  return spec;
}

int cmd_simulate(const Settings& s, std::ostream& out) {
  const auto path = s.get<std::string>("out");
  if (!path) throw Error(ErrorKind::invalid_config, "simulate needs --out FILE");
  const auto spec = generator_spec(s);
  const LabeledStream result = generate(spec);
  write_stream(*path, result.stream);
  const fs::path labels = fs::path(*path).string() + ".labels.csv";
  write_text(labels, labels_csv(result));
  out << "wrote " << result.stream.size() << " events to " << *path << " ("
      << result.count(EventLabel::injected) << " injected)\n";
  return kExitClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renewal-density analysis of timestamped event streams"};
  app.name("rstream");
  app.require_subcommand(1);
  Settings settings;
  std::string input;
  std::string config_path;

  const auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "event log, one timestamp per line")->required();
    sub->add_option("--config", config_path, "JSON config file; flags win on conflict");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "write both renewal densities, e(t)/E(t) and a summary");
  auto* detect_cmd = app.add_subcommand("detect", "chi-square test for periodic events (exit 2 when detected)");
  auto* characterize_cmd = app.add_subcommand("characterize", "memory characterization from E(t)");
  auto* downsample_cmd = app.add_subcommand("downsample", "group inter-arrivals and write the reduced stream");
  auto* simulate_cmd = app.add_subcommand("simulate", "write a synthetic stream and its label sidecar");

  for (auto* sub : {analyze_cmd, detect_cmd, characterize_cmd}) {
    with_input(sub);
    add_analysis_flags(sub, settings);
  }

  with_input(downsample_cmd);
  settings.bind(downsample_cmd, "downsample", "group size range min:max")->required();
  settings.bind(downsample_cmd, "seed", "random seed (falls back to RS_SEED, then 1)");
  settings.bind(downsample_cmd, "out", "output file (default stdout)");

  simulate_cmd->add_option("--config", config_path, "JSON config file; flags win on conflict");
  settings.bind(simulate_cmd, "kind", "poisson | renewal | cluster");
  settings.bind(simulate_cmd, "law", "renewal gap law: exponential | gamma | uniform");
  settings.bind(simulate_cmd, "m", "number of base events (default 1000)");
  settings.bind(simulate_cmd, "mean", "mean inter-arrival in seconds (default 1)");
  settings.bind(simulate_cmd, "shape", "gamma shape");
  settings.bind(simulate_cmd, "lo", "uniform lower bound");
  settings.bind(simulate_cmd, "hi", "uniform upper bound");
  settings.bind(simulate_cmd, "trigger-mean", "cluster: mean time between bursts");
  settings.bind(simulate_cmd, "burst-size", "cluster: mean events per burst");
  settings.bind(simulate_cmd, "intra-gap", "cluster: mean gap inside a burst");
  settings.bind(simulate_cmd, "period", "periodic overlay period in seconds");
  settings.bind(simulate_cmd, "jitter", "periodic overlay jitter half-width");
  settings.bind(simulate_cmd, "count", "injected event count");
  settings.bind(simulate_cmd, "fraction", "injected fraction of the merged stream (default 0.05)");
  settings.bind(simulate_cmd, "sources", "number of periodic trains (default: enough to span the base)");
  settings.bind(simulate_cmd, "seed", "random seed (falls back to RS_SEED, then 1)");
  settings.bind(simulate_cmd, "out", "output stream file; labels go to FILE.labels.csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitError;
  }

  try {
    if (!config_path.empty()) settings.load_config(config_path);
    if (analyze_cmd->parsed()) return cmd_analyze(settings, input, out, err);
    if (detect_cmd->parsed()) return cmd_detect(settings, input, out, err);
    if (characterize_cmd->parsed()) return cmd_characterize(settings, input, out, err);
    if (downsample_cmd->parsed()) return cmd_downsample(settings, input, out);
    return cmd_simulate(settings, out);
  } catch (const Error& e) {
    err << "rstream: " << to_string(e.kind()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "rstream: error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace rs::cli
