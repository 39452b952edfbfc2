#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rispeb/config.hpp"
#include "rispeb/sweep.hpp"
#include "rispeb/validation.hpp"

using namespace rispeb;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<int> kbar;
  std::optional<double> bandwidth;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool print_config = false;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "Configuration file (defaults apply when omitted)");
  app.add_option("--mode", o.mode, "Localization mode")
      ->check(CLI::IsMember({"ris", "reflector", "scatterer"}));
  app.add_option("--kbar", o.kbar, "Maximum number of active RIS")->check(CLI::NonNegativeNumber);
  app.add_option("--bandwidth", o.bandwidth, "Bandwidth in Hz")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  app.add_flag("--print-config", o.print_config, "Print the effective configuration first");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config(o.config_path);
  }
  if (o.mode) cfg.mode = parse_mode(*o.mode);
  if (o.kbar) cfg.kbar = *o.kbar;
  if (o.bandwidth) cfg.bandwidth_hz = *o.bandwidth;
  if (o.out) cfg.out_dir = *o.out;
  if (o.threads) cfg.threads = *o.threads;
  // Re-run the parser's checks on the overridden values.
  std::istringstream again(dump_config(cfg));
  cfg = parse_config(again, "<command line>");
  if (o.print_config) {
    std::cout << dump_config(cfg) << '\n';
  }
  return cfg;
}

void print_cell(const MapCell& c, Mode mode) {
  std::cout << "x=" << format_number(c.position.x) << '\n'
            << "y=" << format_number(c.position.y) << '\n'
            << "mode=" << to_string(mode) << '\n'
            << "peb_m=" << format_number(c.peb) << '\n'
            << "flag=" << to_string(c.flag) << '\n'
            << "path_count=" << c.path_count << '\n'
            << "allocation_bits=" << c.allocation_bits << '\n';
}

int run_point(const Overrides& o, Point2 x) {
  const RunConfig cfg = resolve(o);
  const Scene scene = make_scene(cfg);
  require_in_front_of_wall(scene, x);
  const MapCell c = evaluate_cell(scene, x, make_waveform(cfg), cfg.mode, make_constraints(cfg),
                                  cfg.peb_cap_m);
  print_cell(c, cfg.mode);
  if (c.flag == CellFlag::Invalid) {
    std::cerr << "error: position (" << x.x << ", " << x.y << ") coincides with an anchor\n";
    return 1;
  }
  return 0;
}

int run_select(const Overrides& o, Point2 x) {
  const RunConfig cfg = resolve(o);
  const Scene scene = make_scene(cfg);
  const Selection sel = select_ris(scene, x, make_waveform(cfg), make_constraints(cfg));
  std::cout << "allocation_bits=" << sel.allocation.bits() << '\n'
            << "active=" << sel.allocation.active_count() << '\n'
            << "peb_m=" << format_number(sel.peb.value) << '\n';
  return 0;
}

int run_sweep(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  const Scene scene = make_scene(cfg);
  const WaveformConfig w = make_waveform(cfg);
  SweepOptions opt;
  opt.peb_cap = cfg.peb_cap_m;
  opt.threads = cfg.threads;
  const MapResult map = peb_map(scene, cfg.grid, w, cfg.mode, make_constraints(cfg), opt);
  const CdfResult cdf = peb_cdf(map);

  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) {
      throw std::runtime_error("cannot write " + p.string());
    }
    return f;
  };
  {
    auto f = open(dir / "map.csv");
    write_map_csv(f, map);
  }
  {
    auto f = open(dir / "cdf.csv");
    write_cdf_csv(f, cdf);
  }
  {
    auto f = open(dir / "effective.cfg");
    f << dump_config(cfg);
  }

  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : map.cells) {
    ++counts[static_cast<int>(c.flag)];
  }
  std::printf("mode=%s cells=%zu ok=%zu capped=%zu inf=%zu invalid=%zu\n", to_string(cfg.mode),
              map.cells.size(), counts[0], counts[1], counts[2], counts[3]);
  for (double t : {0.5, 1.0, 2.5, 5.0}) {
    std::printf("P[peb<=%g]=%.4f\n", t, cdf.fraction_at_or_below(t));
  }
  std::printf("wrote %s\n", dir.string().c_str());
  return 0;
}

int run_validate(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  ValidationOptions opt;
  opt.positions = cfg.validate_positions;
  opt.seed = cfg.validate_seed;
  opt.max_active = cfg.kbar;
  const ValidationReport r = run_validation(make_scene(cfg), make_waveform(cfg), opt);
  for (const auto& c : r.checks) {
    std::printf("%s %s worst=%.3g tol=%.3g\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.worst,
                c.tolerance);
    for (const auto& f : c.failures) {
      std::fprintf(stderr, "  %s: %s\n", c.name.c_str(), f.c_str());
    }
  }
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position error bounds for RIS-aided mmWave localization"};
  app.require_subcommand(1);

  Overrides o;
  Point2 x;

  auto* point = app.add_subcommand("point", "PEB at one user position");
  add_common(*point, o);
  point->add_option("x", x.x, "User x in m")->required();
  point->add_option("y", x.y, "User y in m")->required();

  auto* select = app.add_subcommand("select", "Best RIS activation for an estimated position");
  add_common(*select, o);
  select->add_option("x", x.x, "Estimated x in m")->required();
  select->add_option("y", x.y, "Estimated y in m")->required();

  auto* sweep = app.add_subcommand("sweep", "PEB map and CDF over the configured grid");
  add_common(*sweep, o);

  auto* validate = app.add_subcommand("validate", "Check the model against its oracles");
  add_common(*validate, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*point) return run_point(o, x);
    if (*select) return run_select(o, x);
    if (*sweep) return run_sweep(o);
    if (*validate) return run_validate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
