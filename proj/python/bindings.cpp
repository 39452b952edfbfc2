#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

#include "rispeb/config.hpp"
#include "rispeb/fim.hpp"
#include "rispeb/riscontrol.hpp"
#include "rispeb/sweep.hpp"
#include "rispeb/validation.hpp"

namespace py = pybind11;
using namespace rispeb;

namespace {

py::dict cell_dict(const MapCell& c) {
  py::dict d;
  d["x"] = c.position.x;
  d["y"] = c.position.y;
  d["peb_m"] = c.peb;
  d["flag"] = to_string(c.flag);
  d["path_count"] = c.path_count;
  d["allocation_bits"] = c.allocation_bits;
  return d;
}

py::array_t<double> mat(const Mat2& m) {
  py::array_t<double> a({2, 2});
  auto r = a.mutable_unchecked<2>();
  r(0, 0) = m.xx;
  r(0, 1) = m.xy;
  r(1, 0) = m.yx;
  r(1, 1) = m.yy;
  return a;
}

Allocation allocation_for(const RunConfig& cfg, const Scene& scene, Point2 x) {
  if (cfg.mode != Mode::Ris) {
    return {};
  }
  return select_ris(scene, x, make_waveform(cfg), make_constraints(cfg)).allocation;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Position error bounds for RIS-aided mmWave localization";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegeneratePosition>(m, "DegeneratePosition", PyExc_ValueError);

  py::enum_<Mode>(m, "Mode")
      .value("ris", Mode::Ris)
      .value("reflector", Mode::Reflector)
      .value("scatterer", Mode::Scatterer);

  py::class_<RunConfig>(m, "Config")
      .def(py::init<>())
      .def_readwrite("wall_offset_m", &RunConfig::wall_offset_m)
      .def_readwrite("ris_count", &RunConfig::ris_count)
      .def_readwrite("ris_first_center_x_m", &RunConfig::ris_first_center_x_m)
      .def_readwrite("ris_spacing_m", &RunConfig::ris_spacing_m)
      .def_readwrite("ris_elements", &RunConfig::ris_elements)
      .def_readwrite("reflector_enabled", &RunConfig::reflector_enabled)
      .def_readwrite("scatterer_enabled", &RunConfig::scatterer_enabled)
      .def_readwrite("carrier_hz", &RunConfig::carrier_hz)
      .def_readwrite("bandwidth_hz", &RunConfig::bandwidth_hz)
      .def_readwrite("subcarriers", &RunConfig::subcarriers)
      .def_readwrite("power_dbm", &RunConfig::power_dbm)
      .def_readwrite("noise_figure_db", &RunConfig::noise_figure_db)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("kbar", &RunConfig::kbar)
      .def_readwrite("peb_cap_m", &RunConfig::peb_cap_m)
      .def_readwrite("threads", &RunConfig::threads)
      .def_property(
          "grid_shape", [](const RunConfig& c) { return py::make_tuple(c.grid.ny, c.grid.nx); },
          [](RunConfig& c, std::pair<int, int> s) {
            c.grid.ny = s.first;
            c.grid.nx = s.second;
          })
      .def(py::self == py::self)
      .def("dump", &dump_config, "Configuration text that parses back to an equal Config")
      .def("__repr__", [](const RunConfig& c) {
        return "<rispeb.Config mode=" + std::string(to_string(c.mode)) +
               " bandwidth_hz=" + format_number(c.bandwidth_hz) + ">";
      });

  m.def("load_config", &load_config, py::arg("path"));
  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in, "<string>");
      },
      py::arg("text"));

  m.def(
      "point",
      [](const RunConfig& cfg, double x, double y) {
        const Scene scene = make_scene(cfg);
        return cell_dict(evaluate_cell(scene, {x, y}, make_waveform(cfg), cfg.mode,
                                       make_constraints(cfg), cfg.peb_cap_m));
      },
      py::arg("config"), py::arg("x"), py::arg("y"), "PEB and map flag at one position");

  m.def(
      "select",
      [](const RunConfig& cfg, double x, double y) {
        const Selection s = select_ris(make_scene(cfg), {x, y}, make_waveform(cfg),
                                       make_constraints(cfg));
        return py::make_tuple(s.allocation.bits(), s.peb.value);
      },
      py::arg("config"), py::arg("x"), py::arg("y"),
      "Best activation bits and their PEB for an estimated position");

  m.def(
      "fim",
      [](const RunConfig& cfg, double x, double y, bool oracle) {
        const Scene scene = make_scene(cfg);
        const WaveformConfig w = make_waveform(cfg);
        const PathSet set = build_pathset(scene, allocation_for(cfg, scene, {x, y}), {x, y}, w, cfg.mode);
        return mat(oracle ? fim_oracle(set, w) : fim_total(set, w).total);
      },
      py::arg("config"), py::arg("x"), py::arg("y"), py::arg("oracle") = false,
      "2x2 FIM at a position; oracle=True uses finite differences");

  m.def(
      "peb_map",
      [](const RunConfig& cfg) {
        MapResult map;
        {
          py::gil_scoped_release release;
          SweepOptions opt;
          opt.peb_cap = cfg.peb_cap_m;
          opt.threads = cfg.threads;
          map = peb_map(make_scene(cfg), cfg.grid, make_waveform(cfg), cfg.mode,
                        make_constraints(cfg), opt);
        }
        const auto n = static_cast<py::ssize_t>(map.cells.size());
        py::array_t<double> xs(n), ys(n), pebs(n);
        py::array_t<int> paths(n);
        py::list flags, bits;
        for (py::ssize_t i = 0; i < n; ++i) {
          const MapCell& c = map.cells[static_cast<std::size_t>(i)];
          xs.mutable_at(i) = c.position.x;
          ys.mutable_at(i) = c.position.y;
          pebs.mutable_at(i) = c.peb;
          paths.mutable_at(i) = c.path_count;
          flags.append(to_string(c.flag));
          bits.append(c.allocation_bits);
        }
        py::dict d;
        d["x"] = xs;
        d["y"] = ys;
        d["peb_m"] = pebs;
        d["flag"] = flags;
        d["path_count"] = paths;
        d["allocation_bits"] = bits;
        return d;
      },
      py::arg("config"), "PEB map over the configured grid, rows of constant y");

  m.def("d_min", [](const std::vector<std::uint8_t>& a) {
    const int g = d_min(a);
    return g == kUnboundedGap ? py::object(py::float_(std::numeric_limits<double>::infinity()))
                              : py::object(py::int_(g));
  });

  m.def(
      "delay_resolution",
      [](const RunConfig& cfg) { return delay_resolution(make_waveform(cfg)); }, py::arg("config"));
  m.def(
      "unambiguous_range",
      [](const RunConfig& cfg) { return unambiguous_range(make_waveform(cfg)); }, py::arg("config"));

  m.def(
      "validate",
      [](const RunConfig& cfg) {
        ValidationOptions opt;
        opt.positions = cfg.validate_positions;
        opt.seed = cfg.validate_seed;
        opt.max_active = cfg.kbar;
        ValidationReport r;
        {
          py::gil_scoped_release release;
          r = run_validation(make_scene(cfg), make_waveform(cfg), opt);
        }
        py::dict checks;
        for (const auto& c : r.checks) {
          checks[py::str(c.name)] = py::make_tuple(c.passed, c.worst, c.tolerance);
        }
        return checks;
      },
      py::arg("config"), "Oracle checks; maps name to (passed, worst, tolerance)");
}
