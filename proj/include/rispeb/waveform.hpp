#pragma once

#include <complex>
#include <stdexcept>

namespace rispeb {

inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kReferenceNoiseTemperature = 290.0;

class WaveformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// OFDM pilot parameters. Subcarriers are indexed -N/2..N/2, so the count N+1
/// must be odd. Pilots are constant-modulus with energy E_s = P/W each.
struct WaveformConfig {
  double carrier_hz = 28e9;
  double bandwidth_hz = 100e6;
  int subcarrier_count = 129;
  double transmit_power_w = 1e-3;
  double noise_psd_w_per_hz = kBoltzmann * kReferenceNoiseTemperature;

  /// Throws WaveformError if any field is out of range.
  void validate() const;

  double pilot_energy() const { return transmit_power_w / bandwidth_hz; }
  double wavelength() const;
  int half_index() const { return (subcarrier_count - 1) / 2; }
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Thermal noise PSD k_B * T * F.
double noise_psd(double noise_figure_db, double temperature_k = kReferenceNoiseTemperature);

/// Effective-bandwidth kernel
///   S(delta) = 1/N0 * sum_n |s[n]|^2 (2 pi n W / ((N+1) c))^2 exp(-j 2 pi n delta W / (N+1)).
/// Units 1/m^2. Constant-modulus pilots make it real; the imaginary part is zero.
std::complex<double> s_delta(const WaveformConfig& cfg, double delta_s);

/// S(0), the per-path information intensity scale.
double s_zero(const WaveformConfig& cfg);

/// c / W.
double delay_resolution(const WaveformConfig& cfg);

/// c (N+1) / W.
double unambiguous_range(const WaveformConfig& cfg);

}  // namespace rispeb
