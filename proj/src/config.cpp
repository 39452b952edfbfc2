#include "rispeb/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace rispeb {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw std::invalid_argument("expected a number, got '" + v + "'");
  }
  return d;
}

long to_long(const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw std::invalid_argument("expected an integer, got '" + v + "'");
  }
  return n;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

std::string exact(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

double positive(double d, const char* what) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
  return d;
}

double finite(double d) {
  if (!std::isfinite(d)) {
    throw std::invalid_argument("value must be finite");
  }
  return d;
}

int at_least(long n, long lo, const char* what) {
  if (n < lo || n > 1'000'000'000L) {
    throw std::invalid_argument(std::string(what) + " must be at least " + std::to_string(lo));
  }
  return static_cast<int>(n);
}

struct Entry {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define RISPEB_DOUBLE(sec, name, field, check)                                            \
  Entry {                                                                                  \
    sec, name, [](RunConfig& c, const std::string& v) { c.field = check(to_double(v)); }, \
        [](const RunConfig& c) { return exact(c.field); }                                  \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      RISPEB_DOUBLE("scene", "wall_offset_m", wall_offset_m,
                    [](double d) { return positive(d, "wall offset"); }),
      {"scene", "ris_count",
       [](RunConfig& c, const std::string& v) { c.ris_count = at_least(to_long(v), 0, "ris_count"); },
       [](const RunConfig& c) { return std::to_string(c.ris_count); }},
      RISPEB_DOUBLE("scene", "ris_first_center_x_m", ris_first_center_x_m, finite),
      RISPEB_DOUBLE("scene", "ris_spacing_m", ris_spacing_m,
                    [](double d) { return positive(d, "RIS spacing"); }),
      {"scene", "ris_elements",
       [](RunConfig& c, const std::string& v) {
         c.ris_elements = at_least(to_long(v), 1, "ris_elements");
       },
       [](const RunConfig& c) { return std::to_string(c.ris_elements); }},
      {"scene", "reflector_enabled",
       [](RunConfig& c, const std::string& v) { c.reflector_enabled = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.reflector_enabled ? "true" : "false"); }},
      RISPEB_DOUBLE("scene", "reflector_h1_m", reflector_h1_m, finite),
      RISPEB_DOUBLE("scene", "reflector_h2_m", reflector_h2_m, finite),
      RISPEB_DOUBLE("scene", "reflector_gamma", reflector_gamma,
                    [](double d) {
                      if (!(d >= 0.0 && d <= 1.0)) {
                        throw std::invalid_argument("reflection coefficient must lie in [0, 1]");
                      }
                      return d;
                    }),
      {"scene", "scatterer_enabled",
       [](RunConfig& c, const std::string& v) { c.scatterer_enabled = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.scatterer_enabled ? "true" : "false"); }},
      RISPEB_DOUBLE("scene", "scatterer_x_m", scatterer_x_m, finite),
      RISPEB_DOUBLE("scene", "scatterer_rcs_m2", scatterer_rcs_m2,
                    [](double d) {
                      if (!(d >= 0.0) || !std::isfinite(d)) {
                        throw std::invalid_argument("radar cross section must be non-negative");
                      }
                      return d;
                    }),
      RISPEB_DOUBLE("waveform", "carrier_hz", carrier_hz,
                    [](double d) { return positive(d, "carrier frequency"); }),
      RISPEB_DOUBLE("waveform", "bandwidth_hz", bandwidth_hz,
                    [](double d) { return positive(d, "bandwidth"); }),
      {"waveform", "subcarriers",
       [](RunConfig& c, const std::string& v) {
         const int n = at_least(to_long(v), 1, "subcarriers");
         if (n % 2 == 0) {
           throw std::invalid_argument("subcarriers must be odd (indices -N/2..N/2)");
         }
         c.subcarriers = n;
       },
       [](const RunConfig& c) { return std::to_string(c.subcarriers); }},
      RISPEB_DOUBLE("waveform", "power_dbm", power_dbm, finite),
      RISPEB_DOUBLE("waveform", "noise_temperature_k", noise_temperature_k,
                    [](double d) { return positive(d, "noise temperature"); }),
      RISPEB_DOUBLE("waveform", "noise_figure_db", noise_figure_db, finite),
      RISPEB_DOUBLE("grid", "x_min_m", grid.x_min, finite),
      RISPEB_DOUBLE("grid", "x_max_m", grid.x_max, finite),
      RISPEB_DOUBLE("grid", "y_min_m", grid.y_min, finite),
      RISPEB_DOUBLE("grid", "y_max_m", grid.y_max, finite),
      {"grid", "nx", [](RunConfig& c, const std::string& v) { c.grid.nx = at_least(to_long(v), 2, "nx"); },
       [](const RunConfig& c) { return std::to_string(c.grid.nx); }},
      {"grid", "ny", [](RunConfig& c, const std::string& v) { c.grid.ny = at_least(to_long(v), 2, "ny"); },
       [](const RunConfig& c) { return std::to_string(c.grid.ny); }},
      {"run", "mode", [](RunConfig& c, const std::string& v) { c.mode = parse_mode(v); },
       [](const RunConfig& c) { return std::string(to_string(c.mode)); }},
      {"run", "kbar", [](RunConfig& c, const std::string& v) { c.kbar = at_least(to_long(v), 0, "kbar"); },
       [](const RunConfig& c) { return std::to_string(c.kbar); }},
      RISPEB_DOUBLE("run", "peb_cap_m", peb_cap_m, [](double d) { return positive(d, "PEB cap"); }),
      {"run", "threads",
       [](RunConfig& c, const std::string& v) {
         c.threads = static_cast<unsigned>(at_least(to_long(v), 0, "threads"));
       },
       [](const RunConfig& c) { return std::to_string(c.threads); }},
      {"run", "out_dir",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) {
           throw std::invalid_argument("out_dir must not be empty");
         }
         c.out_dir = v;
       },
       [](const RunConfig& c) { return c.out_dir; }},
      {"validate", "positions",
       [](RunConfig& c, const std::string& v) {
         c.validate_positions = at_least(to_long(v), 1, "positions");
       },
       [](const RunConfig& c) { return std::to_string(c.validate_positions); }},
      {"validate", "seed",
       [](RunConfig& c, const std::string& v) {
         c.validate_seed = static_cast<unsigned>(at_least(to_long(v), 0, "seed"));
       },
       [](const RunConfig& c) { return std::to_string(c.validate_seed); }},
  };
  return table;
}

#undef RISPEB_DOUBLE

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::map<std::string, int> seen;  // "section.key" -> line
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) {
      continue;
    }
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigError(source, line, "unterminated section header");
      }
      section = trim(text.substr(1, text.size() - 2));
      bool known = false;
      for (const auto& e : entries()) {
        known = known || section == e.section;
      }
      if (!known) {
        throw ConfigError(source, line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line, "expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError(source, line, "key outside of a [section]");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const Entry* entry = nullptr;
    for (const auto& e : entries()) {
      if (section == e.section && key == e.key) {
        entry = &e;
      }
    }
    if (entry == nullptr) {
      throw ConfigError(source, line, "unknown key '" + key + "' in [" + section + "]");
    }
    const std::string full = section + "." + key;
    if (seen.count(full)) {
      throw ConfigError(source, line,
                        "duplicate key '" + key + "' (first set on line " +
                            std::to_string(seen[full]) + ")");
    }
    seen[full] = line;
    try {
      entry->set(cfg, value);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(source, line, full + ": " + err.what());
    }
  }

  // Cross-field checks report the line of the last key involved.
  auto line_of = [&](std::initializer_list<const char*> keys) {
    int l = 0;
    for (const char* k : keys) {
      const auto it = seen.find(k);
      if (it != seen.end()) {
        l = std::max(l, it->second);
      }
    }
    return l;
  };
  auto check = [&](std::initializer_list<const char*> keys, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& err) {
      throw ConfigError(source, line_of(keys), err.what());
    }
  };
  check({"scene.reflector_h1_m", "scene.reflector_h2_m", "scene.reflector_gamma",
         "scene.scatterer_x_m", "scene.scatterer_rcs_m2", "scene.wall_offset_m",
         "scene.ris_count", "scene.ris_spacing_m", "scene.ris_first_center_x_m"},
        [&] { make_scene(cfg); });
  check({"waveform.carrier_hz", "waveform.bandwidth_hz", "waveform.subcarriers",
         "waveform.power_dbm", "waveform.noise_figure_db", "waveform.noise_temperature_k"},
        [&] { make_waveform(cfg).validate(); });
  check({"grid.x_min_m", "grid.x_max_m", "grid.y_min_m", "grid.y_max_m", "grid.nx", "grid.ny",
         "scene.wall_offset_m"},
        [&] { cfg.grid.validate(cfg.wall_offset_m); });
  check({"run.kbar", "scene.ris_count"}, [&] {
    if (cfg.kbar > cfg.ris_count) {
      throw std::invalid_argument("kbar exceeds ris_count");
    }
  });
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path, 0, "cannot open config file");
  }
  return parse_config(in, path);
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  std::string section;
  for (const auto& e : entries()) {
    if (section != e.section) {
      section = e.section;
      os << (os.tellp() > 0 ? "\n" : "") << '[' << section << "]\n";
    }
    os << e.key << " = " << e.get(cfg) << '\n';
  }
  return os.str();
}

Scene make_scene(const RunConfig& cfg) {
  std::optional<ReflectorDescriptor> refl;
  if (cfg.reflector_enabled) {
    refl = ReflectorDescriptor{cfg.reflector_h1_m, cfg.reflector_h2_m, cfg.reflector_gamma};
  }
  std::optional<ScatterDescriptor> scat;
  if (cfg.scatterer_enabled) {
    scat = ScatterDescriptor{{cfg.scatterer_x_m, cfg.wall_offset_m}, cfg.scatterer_rcs_m2};
  }
  return Scene::uniform(cfg.wall_offset_m, cfg.ris_count, cfg.ris_first_center_x_m,
                        cfg.ris_spacing_m, cfg.ris_elements, refl, scat);
}

WaveformConfig make_waveform(const RunConfig& cfg) {
  WaveformConfig w;
  w.carrier_hz = cfg.carrier_hz;
  w.bandwidth_hz = cfg.bandwidth_hz;
  w.subcarrier_count = cfg.subcarriers;
  w.transmit_power_w = dbm_to_watts(cfg.power_dbm);
  w.noise_psd_w_per_hz = noise_psd(cfg.noise_figure_db, cfg.noise_temperature_k);
  return w;
}

SelectionConstraints make_constraints(const RunConfig& cfg) {
  return make_constraints(make_scene(cfg), make_waveform(cfg), cfg.kbar);
}

}  // namespace rispeb
