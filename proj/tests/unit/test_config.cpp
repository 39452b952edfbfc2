#include <sstream>

#include "common.hpp"
#include "doctest.h"
#include "rispeb/config.hpp"

using namespace rispeb;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("empty config gives the defaults") {
  const RunConfig c = parse("# nothing here\n\n");
  CHECK(c == RunConfig{});
  CHECK(c.ris_count == 5);
  CHECK(c.bandwidth_hz == 100e6);
  CHECK(c.mode == Mode::Ris);
}

TEST_CASE("values are applied") {
  const RunConfig c = parse(
      "[waveform]\n"
      "bandwidth_hz = 1e9   # wide\n"
      "noise_figure_db = 3\n"
      "[run]\n"
      "mode = reflector\n"
      "kbar = 2\n"
      "[scene]\n"
      "scatterer_enabled = false\n");
  CHECK(c.bandwidth_hz == 1e9);
  CHECK(c.noise_figure_db == 3.0);
  CHECK(c.mode == Mode::Reflector);
  CHECK(c.kbar == 2);
  CHECK_FALSE(c.scatterer_enabled);
  CHECK_FALSE(make_scene(c).scatterer().has_value());
  CHECK(make_waveform(c).noise_psd_w_per_hz == doctest::Approx(noise_psd(3.0)));
}

TEST_CASE("round trip") {
  RunConfig c;
  c.bandwidth_hz = 123456789.123;
  c.reflector_gamma = 0.1 + 0.2;
  c.grid.nx = 37;
  c.mode = Mode::Scatterer;
  c.out_dir = "results/run 1";
  c.validate_seed = 99;
  const std::string text = dump_config(c);
  CHECK(parse(text) == c);
  CHECK(dump_config(parse(text)) == text);
  CHECK(parse(dump_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("errors carry line numbers") {
  CHECK(error_line("[scene]\nris_count = 3\nbogus = 1\n") == 3);
  CHECK(error_line("[nowhere]\n") == 1);
  CHECK(error_line("ris_count = 3\n") == 1);
  CHECK(error_line("[scene]\n\nris_count\n") == 3);
  CHECK(error_line("[scene\n") == 1);
  CHECK(error_line("[waveform]\nsubcarriers = 128\n") == 2);
  CHECK(error_line("[waveform]\nbandwidth_hz = fast\n") == 2);
  CHECK(error_line("[waveform]\nbandwidth_hz = -1\n") == 2);
  CHECK(error_line("[run]\nmode = mirror\n") == 2);
  CHECK(error_line("[run]\nkbar = 1\nkbar = 2\n") == 3);
  CHECK(error_line("[scene]\nreflector_gamma = 2\n") == 2);
  // Cross-field: reported at the later of the related keys.
  CHECK(error_line("[run]\nkbar = 4\n[scene]\nris_count = 3\n") == 4);
  CHECK(error_line("[grid]\ny_max_m = 12\n") == 2);
  CHECK(error_line("[scene]\nreflector_h1_m = 7\n") == 2);

  try {
    parse("[scene]\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("test.cfg:2:", 0) == 0);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("derived objects") {
  RunConfig c;
  c.ris_count = 3;
  c.kbar = 3;
  c.ris_spacing_m = 2.0;
  const Scene s = make_scene(c);
  CHECK(s.ris_count() == 3);
  CHECK(s.ris_at(2).center == Point2{5.5, 10.0});
  const auto k = make_constraints(c);
  CHECK(k.max_active == 3);
  CHECK(k.min_index_gap == doctest::Approx(kSpeedOfLight / (100e6 * 2.0)));
}

TEST_CASE("bundled config is the reference scenario") {
  const RunConfig c = load_config(std::string(RISPEB_SOURCE_DIR) + "/configs/paper_default.cfg");
  CHECK(c == RunConfig{});
}
