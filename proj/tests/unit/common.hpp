#pragma once

#include "rispeb/config.hpp"

namespace rispeb::test {

/// Reference scene: wall at 10 m, RIS centers 1.5..5.5, reflector [1,6], scatterer [3.5,10].
inline Scene default_scene() { return make_scene(RunConfig{}); }

inline WaveformConfig default_waveform(double bandwidth_hz = 100e6) {
  RunConfig rc;
  rc.bandwidth_hz = bandwidth_hz;
  return make_waveform(rc);
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace rispeb::test
