#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rispeb/channel.hpp"
#include "rispeb/fim.hpp"
#include "rispeb/riscontrol.hpp"

namespace rispeb {

struct GridSpec {
  double x_min = -5.0;
  double x_max = 15.0;
  double y_min = 0.5;
  double y_max = 9.5;
  int nx = 100;
  int ny = 100;

  /// Throws std::invalid_argument unless the grid is finite, has at least 2x2
  /// samples and stays in front of the wall.
  void validate(double wall_offset) const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  /// Cell i, rows of constant y with x varying fastest.
  Point2 point(std::size_t i) const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class CellFlag { Ok, Capped, Infinite, Invalid };

const char* to_string(CellFlag flag);

struct MapCell {
  Point2 position;
  double peb = 0.0;  // +inf when flag is Infinite or Invalid
  CellFlag flag = CellFlag::Invalid;
  int path_count = 0;
  std::string allocation_bits;
  bool fim_singular = false;  // the FIM itself is rank deficient
};

struct MapResult {
  GridSpec grid;
  Mode mode = Mode::Ris;
  int ris_count = 0;
  std::vector<MapCell> cells;
};

struct SweepOptions {
  double peb_cap = 5.0;
  /// 0 picks std::thread::hardware_concurrency(); 1 runs on the calling thread.
  unsigned threads = 1;
  /// Called with the number of finished cells; results do not depend on it.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Evaluates one user position. RIS mode selects the allocation at the cell
/// itself. A cell is Infinite when at most one path is resolvable or the FIM
/// is singular, Capped when the PEB exceeds the cap, Invalid when the position
/// coincides with an anchor.
MapCell evaluate_cell(const Scene& scene, Point2 x, const WaveformConfig& cfg, Mode mode,
                      const SelectionConstraints& constraints, double peb_cap);

MapResult peb_map(const Scene& scene, const GridSpec& grid, const WaveformConfig& cfg, Mode mode,
                  const SelectionConstraints& constraints, const SweepOptions& options = {});

/// Same cells as peb_map; callers read path_count.
MapResult path_count_map(const Scene& scene, const GridSpec& grid, const WaveformConfig& cfg,
                         Mode mode, const SelectionConstraints& constraints,
                         const SweepOptions& options = {});

struct CdfResult {
  std::vector<double> values;  // finite PEBs, ascending
  std::size_t total = 0;       // valid cells, including infinite ones

  /// Fraction of valid cells with PEB <= threshold.
  double fraction_at_or_below(double threshold) const;
  /// Empirical quantile over all valid cells; +inf when q falls in the infinite mass.
  double quantile(double q) const;
};

CdfResult peb_cdf(const MapResult& map);

struct InfoDirection {
  PathKind kind;
  Point2 direction;
  double intensity;  // |alpha|^2 S(0)
};

/// Direction and direct-information intensity of every nonzero-gain path at x.
std::vector<InfoDirection> info_directions(const Scene& scene, Point2 x, const WaveformConfig& cfg,
                                           Mode mode, const SelectionConstraints& constraints);

/// `x,y,peb_m,flag,path_count,allocation_bits`, 9 significant digits.
void write_map_csv(std::ostream& os, const MapResult& map);
/// `peb_m,cdf`, one row per finite value.
void write_cdf_csv(std::ostream& os, const CdfResult& cdf);

std::string format_number(double v);

}  // namespace rispeb
