#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rispeb/channel.hpp"
#include "rispeb/geometry.hpp"
#include "rispeb/riscontrol.hpp"
#include "rispeb/sweep.hpp"
#include "rispeb/waveform.hpp"

namespace rispeb {

/// Parse or validation failure, tagged with the source name and line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Everything a CLI run needs. Defaults reproduce the reference scenario:
/// 28 GHz, 100 MHz, 129 subcarriers, 0 dBm, five 100-element RIS on the wall
/// y = 10 m, reflector [1, 6] with gamma 0.3, scatter point at [3.5, 10].
struct RunConfig {
  // [scene]
  double wall_offset_m = 10.0;
  int ris_count = 5;
  double ris_first_center_x_m = 1.5;
  double ris_spacing_m = 1.0;
  int ris_elements = 100;
  bool reflector_enabled = true;
  double reflector_h1_m = 1.0;
  double reflector_h2_m = 6.0;
  double reflector_gamma = 0.3;
  bool scatterer_enabled = true;
  double scatterer_x_m = 3.5;
  double scatterer_rcs_m2 = 0.01;
  // [waveform]
  double carrier_hz = 28e9;
  double bandwidth_hz = 100e6;
  int subcarriers = 129;
  double power_dbm = 0.0;
  double noise_temperature_k = kReferenceNoiseTemperature;
  double noise_figure_db = 0.0;
  // [grid]
  GridSpec grid;
  // [run]
  Mode mode = Mode::Ris;
  int kbar = 1;
  double peb_cap_m = 5.0;
  unsigned threads = 0;
  std::string out_dir = "out";
  // [validate]
  int validate_positions = 50;
  unsigned validate_seed = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Effective configuration in the same format; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

Scene make_scene(const RunConfig& cfg);
WaveformConfig make_waveform(const RunConfig& cfg);
SelectionConstraints make_constraints(const RunConfig& cfg);

}  // namespace rispeb
