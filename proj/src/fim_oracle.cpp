// Finite-difference reference for the position FIM. Deliberately shares nothing
// with the kernel/assembly path in fim.cpp: it evaluates the subcarrier
// observations themselves and differentiates them numerically.

#include <cmath>
#include <numbers>
#include <vector>

#include "rispeb/fim.hpp"

namespace rispeb {

namespace {

/// f[n](x) / s[n] for every subcarrier, gains fixed at their values in `set`.
std::vector<Complex> observations(const PathSet& set, const WaveformConfig& cfg, Point2 x) {
  const int half = cfg.half_index();
  const double period = static_cast<double>(cfg.subcarrier_count);
  std::vector<Complex> f(static_cast<std::size_t>(cfg.subcarrier_count), Complex{0.0, 0.0});
  for (const auto& p : set.paths) {
    const double tau = p.anchor_delay + distance(p.anchor, x) / kSpeedOfLight;
    for (int n = -half; n <= half; ++n) {
      const double phase = -2.0 * std::numbers::pi * n * tau * cfg.bandwidth_hz / period;
      f[static_cast<std::size_t>(n + half)] += p.gain * std::polar(1.0, phase);
    }
  }
  return f;
}

}  // namespace

Mat2 fim_oracle(const PathSet& set, const WaveformConfig& cfg, double step_m) {
  const Point2 x = set.user;
  const auto fxp = observations(set, cfg, {x.x + step_m, x.y});
  const auto fxm = observations(set, cfg, {x.x - step_m, x.y});
  const auto fyp = observations(set, cfg, {x.x, x.y + step_m});
  const auto fym = observations(set, cfg, {x.x, x.y - step_m});

  const double es = cfg.pilot_energy();
  Mat2 j;
  for (std::size_t i = 0; i < fxp.size(); ++i) {
    const Complex dx = (fxp[i] - fxm[i]) / (2.0 * step_m);
    const Complex dy = (fyp[i] - fym[i]) / (2.0 * step_m);
    j.xx += es * std::norm(dx);
    j.yy += es * std::norm(dy);
    j.xy += es * (std::conj(dx) * dy).real();
    j.yx += es * (std::conj(dy) * dx).real();
  }
  return j.scaled(1.0 / cfg.noise_psd_w_per_hz);
}

}  // namespace rispeb
