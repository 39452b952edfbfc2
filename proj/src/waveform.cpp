#include "rispeb/waveform.hpp"

#include <cmath>
#include <numbers>

#include "rispeb/geometry.hpp"

namespace rispeb {

void WaveformConfig::validate() const {
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) {
    throw WaveformError("carrier frequency must be positive");
  }
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw WaveformError("bandwidth must be positive");
  }
  if (subcarrier_count < 1 || subcarrier_count % 2 == 0) {
    throw WaveformError("subcarrier count must be a positive odd integer");
  }
  if (!(transmit_power_w > 0.0) || !std::isfinite(transmit_power_w)) {
    throw WaveformError("transmit power must be positive");
  }
  if (!(noise_psd_w_per_hz > 0.0) || !std::isfinite(noise_psd_w_per_hz)) {
    throw WaveformError("noise PSD must be positive");
  }
}

double WaveformConfig::wavelength() const { return kSpeedOfLight / carrier_hz; }

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double noise_psd(double noise_figure_db, double temperature_k) {
  return kBoltzmann * temperature_k * db_to_linear(noise_figure_db);
}

std::complex<double> s_delta(const WaveformConfig& cfg, double delta_s) {
  // Terms n and -n pair into 2 n^2 cos(.), so only the positive half is summed.
  const int half = cfg.half_index();
  const double period = static_cast<double>(cfg.subcarrier_count);
  const double step = 2.0 * std::numbers::pi * cfg.bandwidth_hz / (period * kSpeedOfLight);
  const double phase_step = 2.0 * std::numbers::pi * delta_s * cfg.bandwidth_hz / period;
  double acc = 0.0;
  for (int n = 1; n <= half; ++n) {
    const double nn = static_cast<double>(n);
    acc += nn * nn * std::cos(nn * phase_step);
  }
  const double scale = cfg.pilot_energy() / cfg.noise_psd_w_per_hz * step * step;
  return {2.0 * scale * acc, 0.0};
}

double s_zero(const WaveformConfig& cfg) { return s_delta(cfg, 0.0).real(); }

double delay_resolution(const WaveformConfig& cfg) { return kSpeedOfLight / cfg.bandwidth_hz; }

double unambiguous_range(const WaveformConfig& cfg) {
  return kSpeedOfLight * cfg.subcarrier_count / cfg.bandwidth_hz;
}

}  // namespace rispeb
