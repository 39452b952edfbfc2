#include "rispeb/geometry.hpp"

#include <sstream>

namespace rispeb {

namespace {

double checked_distance(Point2 anchor, Point2 x, const char* what) {
  if (!x.finite()) {
    throw DegeneratePosition("non-finite user position");
  }
  const double d = distance(anchor, x);
  if (d < kDegenerateDistance) {
    std::ostringstream os;
    os << "user position (" << x.x << ", " << x.y << ") coincides with the " << what;
    throw DegeneratePosition(os.str());
  }
  return d;
}

}  // namespace

Scene::Scene(double wall_offset, std::vector<RisDescriptor> ris, double ris_spacing,
             std::optional<ReflectorDescriptor> reflector,
             std::optional<ScatterDescriptor> scatterer)
    : wall_offset_(wall_offset),
      ris_spacing_(ris_spacing),
      ris_(std::move(ris)),
      reflector_(reflector),
      scatterer_(scatterer) {
  if (!std::isfinite(wall_offset_) || wall_offset_ <= kDegenerateDistance) {
    throw SceneError("wall offset must be positive and finite");
  }
  if (!std::isfinite(ris_spacing_) || ris_spacing_ <= 0.0) {
    throw SceneError("inter-RIS spacing must be positive and finite");
  }
  for (std::size_t k = 0; k < ris_.size(); ++k) {
    const auto& r = ris_[k];
    if (!r.center.finite() || r.center.y != wall_offset_) {
      throw SceneError("RIS " + std::to_string(k) + " center is not on the wall");
    }
    if (r.element_count < 1) {
      throw SceneError("RIS " + std::to_string(k) + " needs at least one element");
    }
    if (k > 0) {
      const double gap = r.center.x - ris_[k - 1].center.x;
      if (std::abs(gap - ris_spacing_) > 1e-9) {
        throw SceneError("RIS centers must be increasing and spaced by the inter-RIS spacing");
      }
    }
  }
  if (reflector_) {
    const auto& r = *reflector_;
    if (!(r.h1 < r.h2) || !std::isfinite(r.h1) || !std::isfinite(r.h2)) {
      throw SceneError("reflector needs h1 < h2");
    }
    if (!(r.gamma >= 0.0 && r.gamma <= 1.0)) {
      throw SceneError("reflection coefficient must lie in [0, 1]");
    }
  }
  if (scatterer_) {
    const auto& s = *scatterer_;
    if (!s.position.finite() || s.position.y != wall_offset_) {
      throw SceneError("scatter point must lie on the wall");
    }
    if (!(s.rcs >= 0.0) || !std::isfinite(s.rcs)) {
      throw SceneError("radar cross section must be non-negative");
    }
    if (s.position.norm() < kDegenerateDistance) {
      throw SceneError("scatter point coincides with the BS");
    }
  }
}

Scene Scene::uniform(double wall_offset, int ris_count, double first_center_x, double spacing,
                     int elements, std::optional<ReflectorDescriptor> reflector,
                     std::optional<ScatterDescriptor> scatterer) {
  if (ris_count < 0) {
    throw SceneError("negative RIS count");
  }
  std::vector<RisDescriptor> ris;
  ris.reserve(static_cast<std::size_t>(ris_count));
  for (int k = 0; k < ris_count; ++k) {
    ris.push_back({{first_center_x + k * spacing, wall_offset}, elements});
  }
  return Scene(wall_offset, std::move(ris), spacing, reflector, scatterer);
}

const RisDescriptor& Scene::ris_at(int k) const {
  if (k < 0 || k >= ris_count()) {
    throw std::out_of_range("RIS index " + std::to_string(k) + " out of range");
  }
  return ris_[static_cast<std::size_t>(k)];
}

const ReflectorDescriptor& Scene::require_reflector() const {
  if (!reflector_) {
    throw SceneError("scene has no reflector");
  }
  return *reflector_;
}

const ScatterDescriptor& Scene::require_scatterer() const {
  if (!scatterer_) {
    throw SceneError("scene has no scatter point");
  }
  return *scatterer_;
}

void require_in_front_of_wall(const Scene& scene, Point2 x) {
  if (!x.finite() || !(x.y < scene.wall_offset())) {
    std::ostringstream os;
    os << "user position (" << x.x << ", " << x.y << ") is not in front of the wall y = "
       << scene.wall_offset();
    throw DegeneratePosition(os.str());
  }
}

double los_delay(Point2 x) {
  return checked_distance(Scene::base_station(), x, "BS") / kSpeedOfLight;
}

double ris_delay(const Scene& scene, int k, Point2 x) {
  const Point2 xk = scene.ris_at(k).center;
  return (xk.norm() + checked_distance(xk, x, "RIS center")) / kSpeedOfLight;
}

RisAngles ris_angles(const Scene& scene, int k, Point2 x) {
  require_in_front_of_wall(scene, x);
  const Point2 xk = scene.ris_at(k).center;
  checked_distance(xk, x, "RIS center");
  const Point2 to_bs = Scene::base_station() - xk;
  const Point2 to_user = x - xk;
  // Inward normal is (0,-1): angle = atan2(lateral, depth) with depth = -dy.
  return {std::atan2(to_bs.x, -to_bs.y), std::atan2(to_user.x, -to_user.y)};
}

Point2 unit_direction(Point2 source, Point2 x) {
  const double d = checked_distance(source, x, "direction source");
  return {(x.x - source.x) / d, (x.y - source.y) / d};
}

Point2 virtual_anchor(const Scene& scene) {
  scene.require_reflector();
  return {0.0, 2.0 * scene.wall_offset()};
}

Incidence incidence_point(const Scene& scene, Point2 x) {
  const auto& refl = scene.require_reflector();
  require_in_front_of_wall(scene, x);
  const Point2 va = virtual_anchor(scene);
  const double L = scene.wall_offset();
  // Parameter along va -> x where the line meets y = L.
  const double t = (va.y - L) / (va.y - x.y);
  const double cross_x = va.x + t * (x.x - va.x);
  if (cross_x < refl.h1 || cross_x > refl.h2) {
    return {};
  }
  return {true, Point2{cross_x, L}};
}

double reflector_delay(const Scene& scene, Point2 x) {
  const Point2 va = virtual_anchor(scene);
  return checked_distance(va, x, "virtual anchor") / kSpeedOfLight;
}

double scatter_delay(const Scene& scene, Point2 x) {
  const auto& s = scene.require_scatterer();
  return (s.position.norm() + checked_distance(s.position, x, "scatter point")) / kSpeedOfLight;
}

}  // namespace rispeb
