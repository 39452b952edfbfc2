#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rispeb {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Positions closer than this to an anchor (BS, RIS center, scatterer) are rejected.
inline constexpr double kDegenerateDistance = 1e-6;

/// Raised for user positions that coincide with an anchor or lie on/behind the wall.
class DegeneratePosition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for scenes that violate their invariants, or when an operation needs an
/// object (reflector, scatterer) the scene does not contain.
class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(Point2 o) const { return x * o.x + y * o.y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

/// An M-element half-wavelength ULA mounted parallel to the wall.
struct RisDescriptor {
  Point2 center;
  int element_count = 1;
};

/// Passive reflecting segment [h1, L] - [h2, L].
struct ReflectorDescriptor {
  double h1 = 0.0;
  double h2 = 0.0;
  double gamma = 0.0;
};

struct ScatterDescriptor {
  Point2 position;
  double rcs = 0.0;  // m^2
};

/// Static 2D scene: BS at the origin, a wall at y = L carrying K RIS, and an
/// optional passive reflector and scatter point on the same wall.
class Scene {
 public:
  Scene(double wall_offset, std::vector<RisDescriptor> ris, double ris_spacing,
        std::optional<ReflectorDescriptor> reflector = std::nullopt,
        std::optional<ScatterDescriptor> scatterer = std::nullopt);

  /// K RIS of `elements` each, centers at first_center_x + k*spacing on the wall.
  static Scene uniform(double wall_offset, int ris_count, double first_center_x, double spacing,
                       int elements, std::optional<ReflectorDescriptor> reflector = std::nullopt,
                       std::optional<ScatterDescriptor> scatterer = std::nullopt);

  static constexpr Point2 base_station() { return {0.0, 0.0}; }

  double wall_offset() const { return wall_offset_; }
  double ris_spacing() const { return ris_spacing_; }
  const std::vector<RisDescriptor>& ris() const { return ris_; }
  int ris_count() const { return static_cast<int>(ris_.size()); }
  const RisDescriptor& ris_at(int k) const;
  const std::optional<ReflectorDescriptor>& reflector() const { return reflector_; }
  const std::optional<ScatterDescriptor>& scatterer() const { return scatterer_; }

  const ReflectorDescriptor& require_reflector() const;
  const ScatterDescriptor& require_scatterer() const;

 private:
  double wall_offset_;
  double ris_spacing_;
  std::vector<RisDescriptor> ris_;
  std::optional<ReflectorDescriptor> reflector_;
  std::optional<ScatterDescriptor> scatterer_;
};

struct RisAngles {
  double theta = 0.0;  // AOA at the RIS (from the BS)
  double psi = 0.0;    // AOD at the RIS (towards the user)
};

struct Incidence {
  bool hit = false;              // I{x}
  std::optional<Point2> point;   // s(x), present iff hit
};

double los_delay(Point2 x);
double ris_delay(const Scene& scene, int k, Point2 x);

/// Angles at RIS k, measured from the inward wall normal (0,-1), positive
/// towards +x. theta is the arrival direction (RIS -> BS), psi the departure
/// direction (RIS -> user). With this convention an all-zero phase profile is
/// coherent for sin(theta) + sin(psi) = 0, i.e. specular reflection.
RisAngles ris_angles(const Scene& scene, int k, Point2 x);

Point2 unit_direction(Point2 source, Point2 x);

/// Mirror image of the BS across the wall.
Point2 virtual_anchor(const Scene& scene);
Incidence incidence_point(const Scene& scene, Point2 x);
double reflector_delay(const Scene& scene, Point2 x);
double scatter_delay(const Scene& scene, Point2 x);

/// Throws DegeneratePosition when x is not strictly in front of the wall.
void require_in_front_of_wall(const Scene& scene, Point2 x);

}  // namespace rispeb
