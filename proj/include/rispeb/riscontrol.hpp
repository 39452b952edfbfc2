#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rispeb/channel.hpp"
#include "rispeb/fim.hpp"

namespace rispeb {

/// Profile maximizing |h^T Omega g|: omega_m = -pi m (sin theta + sin psi).
PhaseProfile optimal_phases(double theta, double psi, int element_count);

/// Returned by d_min when fewer than two RIS are active.
inline constexpr int kUnboundedGap = std::numeric_limits<int>::max();

/// Smallest index distance between consecutive ones of `a`.
int d_min(std::span<const std::uint8_t> a);

struct SelectionConstraints {
  int max_active = 1;          // K-bar
  double min_index_gap = 0.0;  // d_min(a) must exceed this, c / (W D)
};

/// K-bar plus the resolvability threshold c / (W D) for this scene and waveform.
SelectionConstraints make_constraints(const Scene& scene, const WaveformConfig& cfg,
                                      int max_active);

bool satisfies(std::span<const std::uint8_t> a, const SelectionConstraints& c);

/// Largest K the exhaustive search accepts.
inline constexpr int kMaxExhaustiveRis = 20;

class SelectionBudgetExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Active RIS steered to `steer_to`; inactive RIS get the all-zero profile.
Allocation make_allocation(const Scene& scene, std::span<const std::uint8_t> active,
                           Point2 steer_to);

struct Selection {
  Allocation allocation;
  PebValue peb;
};

/// Exhaustive search over all feasible activation vectors, each scored by the
/// full-FIM PEB at x_hat (inactive RIS included as paths). Ties resolve to the
/// lexicographically smallest activation vector.
Selection select_ris(const Scene& scene, Point2 x_hat, const WaveformConfig& cfg,
                     const SelectionConstraints& constraints);

enum class RobustObjective { WorstCase, Expected };

/// Selection against a set of plausible user positions. Active RIS are steered
/// to the centroid of the samples. WorstCase scores by the largest PEB over the
/// samples; Expected by the mean, with each PEB clamped to `peb_cap` first.
Selection robust_select(const Scene& scene, std::span<const Point2> samples,
                        const WaveformConfig& cfg, const SelectionConstraints& constraints,
                        RobustObjective objective, double peb_cap = 5.0);

/// All feasible activation vectors in lexicographic order.
std::vector<std::vector<std::uint8_t>> feasible_activations(int ris_count,
                                                            const SelectionConstraints& c);

}  // namespace rispeb
