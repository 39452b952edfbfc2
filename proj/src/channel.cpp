#include "rispeb/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rispeb {

namespace {

constexpr double kPi = std::numbers::pi;

Complex carrier_phase(double delay, const WaveformConfig& cfg) {
  return std::polar(1.0, -2.0 * kPi * cfg.carrier_hz * delay);
}

SteeringVector steering(double angle, int element_count) {
  if (element_count < 1) {
    throw std::invalid_argument("steering vector needs at least one element");
  }
  const double s = std::sin(angle);
  SteeringVector v(static_cast<std::size_t>(element_count));
  for (int m = 0; m < element_count; ++m) {
    v[static_cast<std::size_t>(m)] = std::polar(1.0, kPi * m * s);
  }
  return v;
}

}  // namespace

int Allocation::active_count() const {
  int n = 0;
  for (auto a : active) {
    n += a ? 1 : 0;
  }
  return n;
}

std::string Allocation::bits() const {
  std::string s;
  s.reserve(active.size());
  for (auto a : active) {
    s.push_back(a ? '1' : '0');
  }
  return s;
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Ris:
      return "ris";
    case Mode::Reflector:
      return "reflector";
    case Mode::Scatterer:
      return "scatterer";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "ris") return Mode::Ris;
  if (text == "reflector") return Mode::Reflector;
  if (text == "scatterer") return Mode::Scatterer;
  throw std::invalid_argument("unknown mode '" + text + "' (expected ris, reflector or scatterer)");
}

SteeringVector steering_bs_to_ris(double theta, int element_count) {
  return steering(theta, element_count);
}

SteeringVector steering_ris_to_ue(double psi, int element_count) {
  return steering(psi, element_count);
}

Complex ris_array_response(double theta, double psi, const PhaseProfile& profile) {
  const double u = kPi * (std::sin(theta) + std::sin(psi));
  Complex acc{0.0, 0.0};
  for (int m = 0; m < profile.size(); ++m) {
    acc += std::polar(1.0, profile.phases[static_cast<std::size_t>(m)] + m * u);
  }
  return acc;
}

Complex gain_los(Point2 x, const WaveformConfig& cfg) {
  const double tau = los_delay(x);
  const double d = x.norm();
  return carrier_phase(tau, cfg) * (cfg.wavelength() / (4.0 * kPi * d));
}

Complex gain_ris(const Scene& scene, int k, const PhaseProfile& profile, Point2 x,
                 const WaveformConfig& cfg) {
  const auto& ris = scene.ris_at(k);
  if (profile.size() != ris.element_count) {
    throw std::invalid_argument("phase profile length does not match RIS " + std::to_string(k));
  }
  const double tau = ris_delay(scene, k, x);
  const RisAngles ang = ris_angles(scene, k, x);
  const double lambda = cfg.wavelength();
  const double path_loss =
      lambda * lambda / (16.0 * kPi * kPi * ris.center.norm() * distance(x, ris.center));
  return carrier_phase(tau, cfg) * path_loss * ris_array_response(ang.theta, ang.psi, profile);
}

Complex gain_reflector(const Scene& scene, Point2 x, const WaveformConfig& cfg) {
  const auto& refl = scene.require_reflector();
  const double tau = reflector_delay(scene, x);
  if (!incidence_point(scene, x).hit) {
    return {0.0, 0.0};
  }
  const double d = distance(virtual_anchor(scene), x);
  return carrier_phase(tau, cfg) * (cfg.wavelength() * refl.gamma / (4.0 * kPi * d));
}

Complex gain_scatter(const Scene& scene, Point2 x, const WaveformConfig& cfg) {
  const auto& s = scene.require_scatterer();
  const double tau = scatter_delay(scene, x);
  const double mag = cfg.wavelength() * std::sqrt(s.rcs) /
                     (std::pow(4.0 * kPi, 1.5) * s.position.norm() * distance(s.position, x));
  return carrier_phase(tau, cfg) * mag;
}

Path make_los_path(Point2 x, const WaveformConfig& cfg) {
  const Point2 bs = Scene::base_station();
  return {PathKind::Los, -1, los_delay(x), gain_los(x, cfg), unit_direction(bs, x), bs, 0.0};
}

Path make_ris_path(const Scene& scene, int k, const PhaseProfile& profile, Point2 x,
                   const WaveformConfig& cfg) {
  const Point2 xk = scene.ris_at(k).center;
  return {PathKind::Ris,
          k,
          ris_delay(scene, k, x),
          gain_ris(scene, k, profile, x, cfg),
          unit_direction(xk, x),
          xk,
          xk.norm() / kSpeedOfLight};
}

Path make_reflector_path(const Scene& scene, Point2 x, const WaveformConfig& cfg) {
  const Point2 va = virtual_anchor(scene);
  return {PathKind::Reflector,       -1, reflector_delay(scene, x), gain_reflector(scene, x, cfg),
          unit_direction(va, x), va, 0.0};
}

Path make_scatter_path(const Scene& scene, Point2 x, const WaveformConfig& cfg) {
  const Point2 s = scene.require_scatterer().position;
  return {PathKind::Scatterer,      -1, scatter_delay(scene, x), gain_scatter(scene, x, cfg),
          unit_direction(s, x), s, s.norm() / kSpeedOfLight};
}

PathSet build_pathset(const Scene& scene, const Allocation& allocation, Point2 x,
                      const WaveformConfig& cfg, Mode mode) {
  require_in_front_of_wall(scene, x);
  PathSet set{x, {}};
  set.paths.push_back(make_los_path(x, cfg));
  switch (mode) {
    case Mode::Ris: {
      const int K = scene.ris_count();
      const bool all_inactive = allocation.active.empty();
      if (!all_inactive && (static_cast<int>(allocation.active.size()) != K ||
                            static_cast<int>(allocation.profiles.size()) != K)) {
        throw std::invalid_argument("allocation size does not match the number of RIS");
      }
      for (int k = 0; k < K; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        if (all_inactive || !allocation.active[idx]) {
          set.paths.push_back(
              make_ris_path(scene, k, PhaseProfile::zeros(scene.ris_at(k).element_count), x, cfg));
        } else {
          set.paths.push_back(make_ris_path(scene, k, allocation.profiles[idx], x, cfg));
        }
      }
      break;
    }
    case Mode::Reflector:
      set.paths.push_back(make_reflector_path(scene, x, cfg));
      break;
    case Mode::Scatterer:
      set.paths.push_back(make_scatter_path(scene, x, cfg));
      break;
  }
  return set;
}

}  // namespace rispeb
