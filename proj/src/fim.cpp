#include "rispeb/fim.hpp"

#include <algorithm>
#include <cmath>

namespace rispeb {

double Mat2::frobenius() const { return std::sqrt(xx * xx + xy * xy + yx * yx + yy * yy); }

KernelTable::KernelTable(std::span<const double> delays, const WaveformConfig& cfg,
                         const DelayKernel& kernel)
    : n_(delays.size()), table_(n_ * n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double d = delays[i] - delays[j];
      const Complex s = kernel ? kernel(cfg, d) : s_delta(cfg, d);
      table_[i * n_ + j] = s;
      // S(-d) = conj(S(d))
      table_[j * n_ + i] = kernel ? kernel(cfg, -d) : std::conj(s);
    }
  }
}

Fim2 assemble_fim(std::span<const Path> paths, const KernelTable& table) {
  Fim2 f;
  const std::size_t n = paths.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pk = paths[k];
    const double w = std::norm(pk.gain) * table.at(k, k).real();
    f.direct = f.direct + Mat2::outer(pk.direction, pk.direction).scaled(w);
    for (std::size_t q = 0; q < n; ++q) {
      if (q == k) {
        continue;
      }
      const auto& pq = paths[q];
      const double w_int = (pk.gain * std::conj(pq.gain) * table.at(k, q)).real();
      f.interference = f.interference + Mat2::outer(pk.direction, pq.direction).scaled(w_int);
    }
  }
  f.total = (f.direct + f.interference).symmetrized();
  return f;
}

namespace {

std::vector<double> delays_of(const PathSet& set) {
  std::vector<double> d;
  d.reserve(set.paths.size());
  for (const auto& p : set.paths) {
    d.push_back(p.delay);
  }
  return d;
}

}  // namespace

Mat2 fim_direct(const PathSet& set, const WaveformConfig& cfg) {
  const double s0 = s_zero(cfg);
  Mat2 j;
  for (const auto& p : set.paths) {
    j = j + Mat2::outer(p.direction, p.direction).scaled(std::norm(p.gain) * s0);
  }
  return j;
}

Mat2 fim_interference(const PathSet& set, const WaveformConfig& cfg) {
  const auto d = delays_of(set);
  return assemble_fim(set.paths, KernelTable(d, cfg)).interference;
}

Fim2 fim_total(const PathSet& set, const WaveformConfig& cfg, const DelayKernel& kernel) {
  const auto d = delays_of(set);
  return assemble_fim(set.paths, KernelTable(d, cfg, kernel));
}

PebValue peb(const Mat2& j_in) {
  const Mat2 j = j_in.symmetrized();
  const double det = j.det();
  const double tr = j.trace();
  if (!(det > 0.0) || !(tr > 0.0) || !std::isfinite(det)) {
    return {};
  }
  // Eigenvalues of a symmetric 2x2; the small one via det/large avoids cancellation.
  const double half_gap = std::hypot(0.5 * (j.xx - j.yy), j.xy);
  const double lmax = 0.5 * tr + half_gap;
  const double lmin = det / lmax;
  if (!(lmin > 0.0) || lmax / lmin > kSingularCondition) {
    return {};
  }
  return {std::sqrt(tr / det), false};
}

PebValue peb(const Fim2& fim, FimPart part) {
  return part == FimPart::Total ? peb(fim.total) : peb(fim.direct);
}

int count_resolvable_paths(const PathSet& set, const WaveformConfig& cfg) {
  std::vector<double> d;
  for (const auto& p : set.paths) {
    if (p.gain != Complex{0.0, 0.0}) {
      d.push_back(p.delay);
    }
  }
  std::sort(d.begin(), d.end());
  const double resolution = 1.0 / cfg.bandwidth_hz;
  int clusters = 0;
  double head = 0.0;
  for (double t : d) {
    if (clusters == 0 || t - head >= resolution) {
      ++clusters;
      head = t;
    }
  }
  return clusters;
}

}  // namespace rispeb
