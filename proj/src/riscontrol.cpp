#include "rispeb/riscontrol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rispeb {

PhaseProfile optimal_phases(double theta, double psi, int element_count) {
  if (element_count < 1) {
    throw std::invalid_argument("phase profile needs at least one element");
  }
  const double u = std::sin(theta) + std::sin(psi);
  PhaseProfile p;
  p.phases.resize(static_cast<std::size_t>(element_count));
  for (int m = 0; m < element_count; ++m) {
    p.phases[static_cast<std::size_t>(m)] = -std::numbers::pi * m * u;
  }
  return p;
}

int d_min(std::span<const std::uint8_t> a) {
  int best = kUnboundedGap;
  int last = -1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (!a[static_cast<std::size_t>(i)]) {
      continue;
    }
    if (last >= 0) {
      best = std::min(best, i - last);
    }
    last = i;
  }
  return best;
}

SelectionConstraints make_constraints(const Scene& scene, const WaveformConfig& cfg,
                                      int max_active) {
  if (max_active < 0) {
    throw std::invalid_argument("K-bar must be non-negative");
  }
  return {std::min(max_active, scene.ris_count()),
          kSpeedOfLight / (cfg.bandwidth_hz * scene.ris_spacing())};
}

bool satisfies(std::span<const std::uint8_t> a, const SelectionConstraints& c) {
  const auto active = std::count_if(a.begin(), a.end(), [](std::uint8_t v) { return v != 0; });
  if (active > c.max_active) {
    return false;
  }
  const int gap = d_min(a);
  return gap == kUnboundedGap || static_cast<double>(gap) > c.min_index_gap;
}

std::vector<std::vector<std::uint8_t>> feasible_activations(int ris_count,
                                                            const SelectionConstraints& c) {
  if (ris_count > kMaxExhaustiveRis) {
    throw SelectionBudgetExceeded("exhaustive RIS selection supports at most " +
                                  std::to_string(kMaxExhaustiveRis) + " RIS, got " +
                                  std::to_string(ris_count));
  }
  std::vector<std::vector<std::uint8_t>> out;
  const std::uint32_t total = 1u << ris_count;
  std::vector<std::uint8_t> a(static_cast<std::size_t>(ris_count));
  // RIS 0 is the most significant bit, so counting up is lexicographic order.
  for (std::uint32_t v = 0; v < total; ++v) {
    for (int k = 0; k < ris_count; ++k) {
      a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((v >> (ris_count - 1 - k)) & 1u);
    }
    if (satisfies(a, c)) {
      out.push_back(a);
    }
  }
  return out;
}

Allocation make_allocation(const Scene& scene, std::span<const std::uint8_t> active,
                           Point2 steer_to) {
  if (static_cast<int>(active.size()) != scene.ris_count()) {
    throw std::invalid_argument("activation vector length does not match the number of RIS");
  }
  Allocation alloc;
  alloc.active.assign(active.begin(), active.end());
  alloc.profiles.reserve(active.size());
  for (int k = 0; k < scene.ris_count(); ++k) {
    const int m = scene.ris_at(k).element_count;
    if (active[static_cast<std::size_t>(k)]) {
      const auto ang = ris_angles(scene, k, steer_to);
      alloc.profiles.push_back(optimal_phases(ang.theta, ang.psi, m));
    } else {
      alloc.profiles.push_back(PhaseProfile::zeros(m));
    }
  }
  return alloc;
}

namespace {

/// Per-position path cache: every RIS path in both its active and inactive
/// state, plus the delay kernel table, so candidates only swap gains.
class CandidateScorer {
 public:
  CandidateScorer(const Scene& scene, Point2 x, Point2 steer_to, const WaveformConfig& cfg) {
    const int K = scene.ris_count();
    inactive_.reserve(static_cast<std::size_t>(K) + 1);
    inactive_.push_back(make_los_path(x, cfg));
    active_.push_back(inactive_.front());
    for (int k = 0; k < K; ++k) {
      const int m = scene.ris_at(k).element_count;
      inactive_.push_back(make_ris_path(scene, k, PhaseProfile::zeros(m), x, cfg));
      const auto ang = ris_angles(scene, k, steer_to);
      active_.push_back(make_ris_path(scene, k, optimal_phases(ang.theta, ang.psi, m), x, cfg));
    }
    std::vector<double> delays;
    for (const auto& p : inactive_) {
      delays.push_back(p.delay);
    }
    table_.emplace(delays, cfg);
    scratch_ = inactive_;
  }

  PebValue score(std::span<const std::uint8_t> a) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      scratch_[k + 1] = a[k] ? active_[k + 1] : inactive_[k + 1];
    }
    return peb(assemble_fim(scratch_, *table_));
  }

 private:
  std::vector<Path> inactive_;
  std::vector<Path> active_;
  std::vector<Path> scratch_;
  std::optional<KernelTable> table_;
};

void check_budget(const Scene& scene) {
  if (scene.ris_count() > kMaxExhaustiveRis) {
    throw SelectionBudgetExceeded("exhaustive RIS selection supports at most " +
                                  std::to_string(kMaxExhaustiveRis) + " RIS");
  }
}

}  // namespace

Selection select_ris(const Scene& scene, Point2 x_hat, const WaveformConfig& cfg,
                     const SelectionConstraints& constraints) {
  check_budget(scene);
  require_in_front_of_wall(scene, x_hat);
  CandidateScorer scorer(scene, x_hat, x_hat, cfg);
  const auto candidates = feasible_activations(scene.ris_count(), constraints);
  const std::vector<std::uint8_t>* best = nullptr;
  PebValue best_peb;
  for (const auto& a : candidates) {
    const PebValue v = scorer.score(a);
    // Strict improvement only: the first (lexicographically smallest) wins ties.
    if (best == nullptr || v.value < best_peb.value) {
      best = &a;
      best_peb = v;
    }
  }
  return {make_allocation(scene, *best, x_hat), best_peb};
}

Selection robust_select(const Scene& scene, std::span<const Point2> samples,
                        const WaveformConfig& cfg, const SelectionConstraints& constraints,
                        RobustObjective objective, double peb_cap) {
  check_budget(scene);
  if (samples.empty()) {
    throw std::invalid_argument("robust selection needs at least one sample position");
  }
  Point2 centroid{0.0, 0.0};
  for (const auto& s : samples) {
    require_in_front_of_wall(scene, s);
    centroid = centroid + s;
  }
  centroid = (1.0 / static_cast<double>(samples.size())) * centroid;

  std::vector<CandidateScorer> scorers;
  scorers.reserve(samples.size());
  for (const auto& s : samples) {
    scorers.emplace_back(scene, s, centroid, cfg);
  }

  const auto candidates = feasible_activations(scene.ris_count(), constraints);
  const std::vector<std::uint8_t>* best = nullptr;
  double best_score = 0.0;
  for (const auto& a : candidates) {
    double score = 0.0;
    for (auto& sc : scorers) {
      const double v = sc.score(a).value;
      if (objective == RobustObjective::WorstCase) {
        score = std::max(score, v);
      } else {
        score += std::min(v, peb_cap);
      }
    }
    if (objective == RobustObjective::Expected) {
      score /= static_cast<double>(scorers.size());
    }
    if (best == nullptr || score < best_score) {
      best = &a;
      best_score = score;
    }
  }
  return {make_allocation(scene, *best, centroid),
          {best_score, !std::isfinite(best_score)}};
}

}  // namespace rispeb
