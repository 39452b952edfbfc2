#pragma once

#include <string>
#include <vector>

#include "rispeb/fim.hpp"
#include "rispeb/riscontrol.hpp"

namespace rispeb {

/// Reference RIS selection: enumerates every activation vector with its own
/// constraint test, derives phases as the conjugate of g (Hadamard) h, rebuilds
/// each path set with build_pathset and scores it with fim_total. Ties go to
/// the lexicographically smallest vector.
Selection brute_force_select(const Scene& scene, Point2 x_hat, const WaveformConfig& cfg,
                             const SelectionConstraints& constraints);

/// S(delta) summed over every subcarrier as written, complex exponentials and all.
Complex s_delta_reference(const WaveformConfig& cfg, double delta_s);

struct ValidationOptions {
  int positions = 50;
  unsigned seed = 1;
  int max_active = 1;
  /// Fault injection: replaces S(delta) inside the FIM under test.
  DelayKernel kernel;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst = 0.0;      // worst observed error for the check
  double tolerance = 0.0;
  std::vector<std::string> failures;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Oracle checks on a configured scene: FIM vs finite differences in every mode
/// the scene supports, S(delta) vs its reference sum, phase optimality, and
/// RIS selection vs brute force. Positions are drawn uniformly in front of the
/// wall over the scene's lateral extent.
ValidationReport run_validation(const Scene& scene, const WaveformConfig& cfg,
                                const ValidationOptions& options);

}  // namespace rispeb
