#include "rispeb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace rispeb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_anchor(const Scene& scene, Point2 x) {
  if (distance(Scene::base_station(), x) < kDegenerateDistance) {
    return true;
  }
  for (const auto& r : scene.ris()) {
    if (distance(r.center, x) < kDegenerateDistance) {
      return true;
    }
  }
  return false;
}

}  // namespace

void GridSpec::validate(double wall_offset) const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw std::invalid_argument("grid ranges must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) {
    throw std::invalid_argument("grid ranges must have min < max");
  }
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("grid needs at least 2 samples per axis");
  }
  if (!(y_max < wall_offset)) {
    throw std::invalid_argument("grid must stay in front of the wall (y_max < L)");
  }
}

Point2 GridSpec::point(std::size_t i) const {
  const auto ix = static_cast<int>(i % static_cast<std::size_t>(nx));
  const auto iy = static_cast<int>(i / static_cast<std::size_t>(nx));
  return {x_min + (x_max - x_min) * ix / (nx - 1), y_min + (y_max - y_min) * iy / (ny - 1)};
}

const char* to_string(CellFlag flag) {
  switch (flag) {
    case CellFlag::Ok:
      return "ok";
    case CellFlag::Capped:
      return "capped";
    case CellFlag::Infinite:
      return "inf";
    case CellFlag::Invalid:
      return "invalid";
  }
  return "?";
}

MapCell evaluate_cell(const Scene& scene, Point2 x, const WaveformConfig& cfg, Mode mode,
                      const SelectionConstraints& constraints, double peb_cap) {
  MapCell cell;
  cell.position = x;
  cell.peb = kInf;
  cell.allocation_bits.assign(static_cast<std::size_t>(scene.ris_count()), '0');
  if (near_anchor(scene, x) || !(x.y < scene.wall_offset())) {
    return cell;
  }
  try {
    PathSet set;
    PebValue value;
    if (mode == Mode::Ris) {
      const Selection sel = select_ris(scene, x, cfg, constraints);
      set = build_pathset(scene, sel.allocation, x, cfg, mode);
      value = sel.peb;
      cell.allocation_bits = sel.allocation.bits();
    } else {
      set = build_pathset(scene, Allocation{}, x, cfg, mode);
      value = peb(fim_total(set, cfg));
    }
    cell.path_count = count_resolvable_paths(set, cfg);
    cell.fim_singular = value.rank_deficient;
    if (value.rank_deficient || cell.path_count <= 1) {
      cell.flag = CellFlag::Infinite;
    } else {
      cell.peb = value.value;
      cell.flag = value.value > peb_cap ? CellFlag::Capped : CellFlag::Ok;
    }
  } catch (const DegeneratePosition&) {
    cell = MapCell{x, kInf, CellFlag::Invalid, 0, cell.allocation_bits, false};
  }
  return cell;
}

MapResult peb_map(const Scene& scene, const GridSpec& grid, const WaveformConfig& cfg, Mode mode,
                  const SelectionConstraints& constraints, const SweepOptions& options) {
  grid.validate(scene.wall_offset());
  cfg.validate();
  MapResult map{grid, mode, scene.ris_count(), std::vector<MapCell>(grid.size())};

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
      map.cells[i] = evaluate_cell(scene, grid.point(i), cfg, mode, constraints, options.peb_cap);
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(finished, grid.size());
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  return map;
}

MapResult path_count_map(const Scene& scene, const GridSpec& grid, const WaveformConfig& cfg,
                         Mode mode, const SelectionConstraints& constraints,
                         const SweepOptions& options) {
  return peb_map(scene, grid, cfg, mode, constraints, options);
}

double CdfResult::fraction_at_or_below(double threshold) const {
  if (total == 0) {
    return 0.0;
  }
  const auto n = std::upper_bound(values.begin(), values.end(), threshold) - values.begin();
  return static_cast<double>(n) / static_cast<double>(total);
}

double CdfResult::quantile(double q) const {
  if (total == 0 || !(q > 0.0) || q > 1.0) {
    throw std::invalid_argument("quantile needs a nonempty CDF and q in (0, 1]");
  }
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(total))) - 1;
  return idx < values.size() ? values[idx] : kInf;
}

CdfResult peb_cdf(const MapResult& map) {
  if (map.cells.empty()) {
    throw std::invalid_argument("CDF of an empty map");
  }
  CdfResult cdf;
  for (const auto& c : map.cells) {
    if (c.flag == CellFlag::Invalid) {
      continue;
    }
    ++cdf.total;
    if (std::isfinite(c.peb)) {
      cdf.values.push_back(c.peb);
    }
  }
  std::sort(cdf.values.begin(), cdf.values.end());
  return cdf;
}

std::vector<InfoDirection> info_directions(const Scene& scene, Point2 x, const WaveformConfig& cfg,
                                           Mode mode, const SelectionConstraints& constraints) {
  Allocation alloc;
  if (mode == Mode::Ris) {
    alloc = select_ris(scene, x, cfg, constraints).allocation;
  }
  const PathSet set = build_pathset(scene, alloc, x, cfg, mode);
  const double s0 = s_zero(cfg);
  std::vector<InfoDirection> out;
  for (const auto& p : set.paths) {
    if (p.gain == Complex{0.0, 0.0}) {
      continue;
    }
    out.push_back({p.kind, p.direction, std::norm(p.gain) * s0});
  }
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_map_csv(std::ostream& os, const MapResult& map) {
  os << "x,y,peb_m,flag,path_count,allocation_bits\n";
  for (const auto& c : map.cells) {
    os << format_number(c.position.x) << ',' << format_number(c.position.y) << ','
       << format_number(c.peb) << ',' << to_string(c.flag) << ',' << c.path_count << ','
       << c.allocation_bits << '\n';
  }
}

void write_cdf_csv(std::ostream& os, const CdfResult& cdf) {
  os << "peb_m,cdf\n";
  for (std::size_t i = 0; i < cdf.values.size(); ++i) {
    os << format_number(cdf.values[i]) << ','
       << format_number(static_cast<double>(i + 1) / static_cast<double>(cdf.total)) << '\n';
  }
}

}  // namespace rispeb
