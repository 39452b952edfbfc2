#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rispeb/geometry.hpp"
#include "rispeb/waveform.hpp"

namespace rispeb {

using Complex = std::complex<double>;
using SteeringVector = std::vector<Complex>;

/// Diagonal of Omega_k as phase angles. An all-zero profile is the all-ones
/// matrix an inactive RIS is assumed to apply.
struct PhaseProfile {
  std::vector<double> phases;

  static PhaseProfile zeros(int element_count) {
    return {std::vector<double>(static_cast<std::size_t>(element_count), 0.0)};
  }
  int size() const { return static_cast<int>(phases.size()); }
  friend bool operator==(const PhaseProfile&, const PhaseProfile&) = default;
};

/// RIS activation bits plus the per-RIS phase profiles.
struct Allocation {
  std::vector<std::uint8_t> active;
  std::vector<PhaseProfile> profiles;

  int active_count() const;
  /// K-character 0/1 string, RIS 0 first.
  std::string bits() const;
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

enum class Mode { Ris, Reflector, Scatterer };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

enum class PathKind { Los, Ris, Reflector, Scatterer };

/// One propagation path. The delay is anchor_delay + |x - anchor| / c, so the
/// anchor (BS, RIS center, virtual anchor or scatter point) and the fixed
/// anchor_delay are enough to re-evaluate the delay at a perturbed position.
struct Path {
  PathKind kind = PathKind::Los;
  int ris_index = -1;
  double delay = 0.0;
  Complex gain;
  Point2 direction;
  Point2 anchor;
  double anchor_delay = 0.0;
};

struct PathSet {
  Point2 user;
  std::vector<Path> paths;  // LOS first
};

SteeringVector steering_bs_to_ris(double theta, int element_count);
SteeringVector steering_ris_to_ue(double psi, int element_count);

/// h^T Omega g, summed directly over the elements.
Complex ris_array_response(double theta, double psi, const PhaseProfile& profile);

Complex gain_los(Point2 x, const WaveformConfig& cfg);
Complex gain_ris(const Scene& scene, int k, const PhaseProfile& profile, Point2 x,
                 const WaveformConfig& cfg);
Complex gain_reflector(const Scene& scene, Point2 x, const WaveformConfig& cfg);
Complex gain_scatter(const Scene& scene, Point2 x, const WaveformConfig& cfg);

Path make_los_path(Point2 x, const WaveformConfig& cfg);
/// RIS path at x for the given profile; gain includes the array response.
Path make_ris_path(const Scene& scene, int k, const PhaseProfile& profile, Point2 x,
                   const WaveformConfig& cfg);
Path make_reflector_path(const Scene& scene, Point2 x, const WaveformConfig& cfg);
Path make_scatter_path(const Scene& scene, Point2 x, const WaveformConfig& cfg);

/// LOS plus the mode's secondary paths. In RIS mode every RIS contributes a
/// path: active ones with their profile from `allocation`, inactive ones with
/// the all-zero profile. An empty allocation means all RIS inactive.
PathSet build_pathset(const Scene& scene, const Allocation& allocation, Point2 x,
                      const WaveformConfig& cfg, Mode mode);

}  // namespace rispeb
