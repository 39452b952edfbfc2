#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "rispeb/channel.hpp"
#include "rispeb/waveform.hpp"

namespace rispeb {

/// Row-major 2x2 real matrix.
struct Mat2 {
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.xx + b.xx, a.xy + b.xy, a.yx + b.yx, a.yy + b.yy};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  static Mat2 outer(Point2 u, Point2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }
  Mat2 scaled(double s) const { return {s * xx, s * xy, s * yx, s * yy}; }
  Mat2 symmetrized() const {
    const double off = 0.5 * (xy + yx);
    return {xx, off, off, yy};
  }
  double trace() const { return xx + yy; }
  double det() const { return xx * yy - xy * yx; }
  double frobenius() const;
};

/// Position-block FIM split into the direct-path and inter-path parts.
struct Fim2 {
  Mat2 direct;
  Mat2 interference;
  Mat2 total;  // symmetrized direct + interference
};

struct PebValue {
  double value = std::numeric_limits<double>::infinity();
  bool rank_deficient = true;

  bool finite() const { return !rank_deficient; }
};

/// Condition number above which a FIM is treated as singular.
inline constexpr double kSingularCondition = 1e12;

enum class FimPart { Total, DirectOnly };

/// Replacement for s_delta, used to inject faults into the assembly.
using DelayKernel = std::function<Complex(const WaveformConfig&, double)>;

/// Table of S(tau_k - tau_k') for a fixed set of path delays. Building it is the
/// expensive part of a FIM evaluation; gains can then be swapped cheaply, which
/// is what RIS selection does for every candidate allocation.
class KernelTable {
 public:
  KernelTable(std::span<const double> delays, const WaveformConfig& cfg,
              const DelayKernel& kernel = {});

  std::size_t size() const { return n_; }
  /// S(tau_i - tau_j).
  Complex at(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Complex> table_;
};

/// Assembles the FIM for `paths` whose delays produced `table` (same order).
Fim2 assemble_fim(std::span<const Path> paths, const KernelTable& table);

Mat2 fim_direct(const PathSet& set, const WaveformConfig& cfg);
Mat2 fim_interference(const PathSet& set, const WaveformConfig& cfg);
Fim2 fim_total(const PathSet& set, const WaveformConfig& cfg, const DelayKernel& kernel = {});

/// sqrt(tr(J^-1)), or +inf when J is singular (det <= 0 or condition > 1e12).
PebValue peb(const Fim2& fim, FimPart part = FimPart::Total);
PebValue peb(const Mat2& j);

/// Number of delay clusters among paths with nonzero gain. Paths are sorted by
/// delay; a path joins the current cluster when it lies within 1/W of the
/// cluster's first (earliest) path, otherwise it starts a new cluster.
int count_resolvable_paths(const PathSet& set, const WaveformConfig& cfg);

/// Independent FIM: central differences (step `step_m`) of the noiseless
/// subcarrier observations f[n](x) with the gains held fixed, accumulated as
/// 1/N0 sum_n Re{df^H df}. Delays are re-derived from each path's anchor.
Mat2 fim_oracle(const PathSet& set, const WaveformConfig& cfg, double step_m = 1e-6);

}  // namespace rispeb
