#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rs/characterization.hpp"
#include "rs/detection.hpp"
#include "rs/estimation.hpp"
#include "rs/histogram.hpp"
#include "rs/synth.hpp"

namespace rs {

// Plain decimal rendering used by every CSV writer ("%.12g", C locale).
std::string format_number(double value);

std::string histogram_csv(const Histogram& h);  // bin_start,value
std::string density_csv(const Density& d);      // bin_start,value
std::string rd_csv(const RenewalDensityEstimate& rd);  // t,value
std::string difference_csv(const DifferenceCurves& d);  // t,e,E
std::string labels_csv(const LabeledStream& s);         // time,label

nlohmann::json rd_json(const RenewalDensityEstimate& rd);
RenewalDensityEstimate rd_from_json(const nlohmann::json& j);

nlohmann::json detection_json(const DetectionReport& report);
nlohmann::json characterization_json(const CharacterizationResult& result);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rs
