#include "rispeb/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace rispeb {

namespace {

bool reference_feasible(const std::vector<std::uint8_t>& a, const SelectionConstraints& c) {
  int count = 0;
  int last = -1;
  int gap = -1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) {
      continue;
    }
    ++count;
    if (last >= 0 && (gap < 0 || i - last < gap)) {
      gap = i - last;
    }
    last = i;
  }
  return count <= c.max_active && (gap < 0 || gap > c.min_index_gap);
}

PhaseProfile conjugate_hadamard_profile(const Scene& scene, int k, Point2 x) {
  const auto ang = ris_angles(scene, k, x);
  const int m = scene.ris_at(k).element_count;
  const auto h = steering_bs_to_ris(ang.theta, m);
  const auto g = steering_ris_to_ue(ang.psi, m);
  PhaseProfile p;
  for (int i = 0; i < m; ++i) {
    p.phases.push_back(std::arg(std::conj(g[static_cast<std::size_t>(i)] *
                                          h[static_cast<std::size_t>(i)])));
  }
  return p;
}

double relative_frobenius(const Mat2& a, const Mat2& ref) {
  return (a - ref).frobenius() / ref.frobenius();
}

std::string describe(Point2 x) {
  std::ostringstream os;
  os << "(" << x.x << ", " << x.y << ")";
  return os.str();
}

}  // namespace

Selection brute_force_select(const Scene& scene, Point2 x_hat, const WaveformConfig& cfg,
                             const SelectionConstraints& constraints) {
  const int K = scene.ris_count();
  if (K > kMaxExhaustiveRis) {
    throw SelectionBudgetExceeded("too many RIS for brute force");
  }
  std::vector<PhaseProfile> steered;
  for (int k = 0; k < K; ++k) {
    steered.push_back(conjugate_hadamard_profile(scene, k, x_hat));
  }

  // Recursive enumeration in lexicographic order (0 branch before 1).
  std::vector<std::uint8_t> a(static_cast<std::size_t>(K), 0);
  Selection best;
  bool have_best = false;
  auto visit = [&](auto&& self, int k) -> void {
    if (k == K) {
      if (!reference_feasible(a, constraints)) {
        return;
      }
      Allocation alloc;
      alloc.active = a;
      for (int i = 0; i < K; ++i) {
        alloc.profiles.push_back(a[static_cast<std::size_t>(i)]
                                     ? steered[static_cast<std::size_t>(i)]
                                     : PhaseProfile::zeros(scene.ris_at(i).element_count));
      }
      const PebValue v = peb(fim_total(build_pathset(scene, alloc, x_hat, cfg, Mode::Ris), cfg));
      if (!have_best || v.value < best.peb.value) {
        best = {std::move(alloc), v};
        have_best = true;
      }
      return;
    }
    a[static_cast<std::size_t>(k)] = 0;
    self(self, k + 1);
    a[static_cast<std::size_t>(k)] = 1;
    self(self, k + 1);
    a[static_cast<std::size_t>(k)] = 0;
  };
  visit(visit, 0);
  return best;
}

Complex s_delta_reference(const WaveformConfig& cfg, double delta_s) {
  const int half = cfg.half_index();
  const double np1 = static_cast<double>(cfg.subcarrier_count);
  const double es = cfg.transmit_power_w / cfg.bandwidth_hz;
  Complex acc{0.0, 0.0};
  for (int n = -half; n <= half; ++n) {
    const double w = 2.0 * std::numbers::pi * n * cfg.bandwidth_hz / (np1 * kSpeedOfLight);
    acc += es * w * w *
           std::exp(Complex(0.0, -2.0 * std::numbers::pi * n * delta_s * cfg.bandwidth_hz / np1));
  }
  return acc / cfg.noise_psd_w_per_hz;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const Scene& scene, const WaveformConfig& cfg,
                                const ValidationOptions& options) {
  cfg.validate();
  std::mt19937_64 rng(options.seed);
  ValidationReport report;

  double lo = 0.0;
  double hi = 0.0;
  for (const auto& r : scene.ris()) {
    lo = std::min(lo, r.center.x);
    hi = std::max(hi, r.center.x);
  }
  if (scene.reflector()) {
    lo = std::min(lo, scene.reflector()->h1);
    hi = std::max(hi, scene.reflector()->h2);
  }
  if (scene.scatterer()) {
    lo = std::min(lo, scene.scatterer()->position.x);
    hi = std::max(hi, scene.scatterer()->position.x);
  }
  const double L = scene.wall_offset();
  std::uniform_real_distribution<double> ux(lo - 5.0, hi + 5.0);
  std::uniform_real_distribution<double> uy(0.05 * L, 0.95 * L);
  std::vector<Point2> positions;
  while (static_cast<int>(positions.size()) < options.positions) {
    const Point2 p{ux(rng), uy(rng)};
    if (p.norm() > 0.05) {
      positions.push_back(p);
    }
  }

  // FIM vs finite differences.
  std::vector<Mode> modes;
  if (scene.ris_count() > 0) modes.push_back(Mode::Ris);
  if (scene.reflector()) modes.push_back(Mode::Reflector);
  if (scene.scatterer()) modes.push_back(Mode::Scatterer);
  const auto constraints = make_constraints(scene, cfg, options.max_active);
  for (Mode mode : modes) {
    CheckResult check{std::string("fim_vs_finite_difference[") + to_string(mode) + "]", true, 0.0,
                      1e-5, {}};
    for (const auto& x : positions) {
      Allocation alloc;
      if (mode == Mode::Ris) {
        alloc = select_ris(scene, x, cfg, constraints).allocation;
      }
      const PathSet set = build_pathset(scene, alloc, x, cfg, mode);
      const double err =
          relative_frobenius(fim_total(set, cfg, options.kernel).total, fim_oracle(set, cfg));
      check.worst = std::max(check.worst, err);
      if (!(err <= check.tolerance)) {
        check.passed = false;
        check.failures.push_back(describe(x) + ": relative error " + std::to_string(err));
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Kernel vs reference sum.
  {
    CheckResult check{"s_delta_reference", true, 0.0, 1e-12, {}};
    const double s0 = s_delta_reference(cfg, 0.0).real();
    const double period = cfg.subcarrier_count / cfg.bandwidth_hz;
    std::uniform_real_distribution<double> ud(-period, period);
    for (int i = 0; i < 200; ++i) {
      const double d = ud(rng);
      const Complex got = options.kernel ? options.kernel(cfg, d) : s_delta(cfg, d);
      const double err = std::abs(got - s_delta_reference(cfg, d)) / s0;
      check.worst = std::max(check.worst, err);
      if (!(err <= check.tolerance)) {
        check.passed = false;
        check.failures.push_back("delta " + std::to_string(d) + ": error " + std::to_string(err));
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Closed-form phases reach the coherent bound M; random profiles never beat it.
  if (scene.ris_count() > 0) {
    CheckResult check{"phase_optimality", true, 0.0, 1e-9, {}};
    const int m = scene.ris_at(0).element_count;
    std::uniform_real_distribution<double> ua(-0.49 * std::numbers::pi, 0.49 * std::numbers::pi);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 100; ++i) {
      const double theta = ua(rng);
      const double psi = ua(rng);
      const double mag = std::abs(ris_array_response(theta, psi, optimal_phases(theta, psi, m)));
      const double err = std::abs(mag - m) / m;
      check.worst = std::max(check.worst, err);
      if (!(err <= check.tolerance)) {
        check.passed = false;
        check.failures.push_back("optimal profile magnitude " + std::to_string(mag));
      }
      PhaseProfile random;
      for (int e = 0; e < m; ++e) {
        random.phases.push_back(uphase(rng));
      }
      const double rmag = std::abs(ris_array_response(theta, psi, random));
      if (rmag > m * (1.0 + 1e-12)) {
        check.passed = false;
        check.failures.push_back("random profile exceeded M: " + std::to_string(rmag));
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Selection vs brute force.
  if (scene.ris_count() > 0 && scene.ris_count() <= kMaxExhaustiveRis) {
    CheckResult check{"selection_vs_brute_force", true, 0.0, 0.0, {}};
    const int n = std::min<int>(static_cast<int>(positions.size()), 10);
    for (int i = 0; i < n; ++i) {
      const Point2 x = positions[static_cast<std::size_t>(i)];
      const auto got = select_ris(scene, x, cfg, constraints);
      const auto ref = brute_force_select(scene, x, cfg, constraints);
      if (got.allocation.active != ref.allocation.active) {
        check.passed = false;
        check.worst = 1.0;
        check.failures.push_back(describe(x) + ": selected " + got.allocation.bits() +
                                 ", brute force " + ref.allocation.bits());
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace rispeb
