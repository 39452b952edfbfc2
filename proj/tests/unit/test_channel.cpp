#include <cmath>
#include <numbers>
#include <random>

#include "common.hpp"
#include "doctest.h"
#include "rispeb/channel.hpp"
#include "rispeb/riscontrol.hpp"

using namespace rispeb;
using rispeb::test::default_scene;
using rispeb::test::default_waveform;
using rispeb::test::rel_close;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("steering vectors") {
  for (const auto& v : {steering_bs_to_ris(0.0, 4), steering_ris_to_ue(0.0, 4)}) {
    REQUIRE(v.size() == 4);
    for (const auto& e : v) {
      CHECK(std::abs(e - Complex{1.0, 0.0}) < 1e-15);
    }
  }
  // Endfire limit: entries approach exp(j pi m).
  const auto end = steering_bs_to_ris(kPi / 2 - 1e-9, 6);
  for (int m = 0; m < 6; ++m) {
    CHECK(std::abs(end[m] - std::polar(1.0, kPi * m)) < 1e-8);
  }
  // Per-element evaluation for a 100-element array.
  const double theta = std::atan2(3.5, 10.0);
  const auto h = steering_bs_to_ris(theta, 100);
  const auto g = steering_ris_to_ue(-theta, 100);
  for (int m = 0; m < 100; ++m) {
    const Complex expected = std::exp(Complex(0.0, kPi * m * std::sin(theta)));
    CHECK(std::abs(h[m] - expected) < 1e-12);
    CHECK(std::abs(std::abs(h[m]) - 1.0) < 1e-15);
    CHECK(std::abs(g[m] - std::conj(expected)) < 1e-12);
  }
}

TEST_CASE("array response bounds") {
  CHECK(std::abs(ris_array_response(0.0, 0.0, PhaseProfile::zeros(100)) - Complex(100.0, 0.0)) <
        1e-12);
  CHECK(std::abs(ris_array_response(0.3, -0.1, PhaseProfile{{1.234}})) ==
        doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ua(-1.5, 1.5), up(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const double th = ua(rng), ps = ua(rng);
    PhaseProfile p;
    for (int m = 0; m < 50; ++m) {
      p.phases.push_back(up(rng));
    }
    CHECK(std::abs(ris_array_response(th, ps, p)) <= 50.0 * (1.0 + 1e-12));
    // Equality holds for the optimum shifted by a common constant.
    PhaseProfile shifted = optimal_phases(th, ps, 50);
    for (auto& w : shifted.phases) {
      w += 0.7;
    }
    CHECK(std::abs(ris_array_response(th, ps, shifted)) == doctest::Approx(50.0).epsilon(1e-12));
  }
  // Same as h^T diag(e^{j w}) g with explicit vectors.
  const double th = 0.4, ps = -0.9;
  PhaseProfile p;
  for (int m = 0; m < 30; ++m) {
    p.phases.push_back(0.1 * m * m);
  }
  const auto h = steering_bs_to_ris(th, 30);
  const auto g = steering_ris_to_ue(ps, 30);
  Complex ref{0.0, 0.0};
  for (int m = 0; m < 30; ++m) {
    ref += h[m] * std::polar(1.0, p.phases[m]) * g[m];
  }
  CHECK(std::abs(ris_array_response(th, ps, p) - ref) < 1e-11);
}

TEST_CASE("gain_los") {
  const WaveformConfig w = default_waveform();
  const double lambda = w.wavelength();
  CHECK(std::abs(gain_los({lambda / (4.0 * kPi), 0.0}, w)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(gain_los({3.0, 4.0}, w)) == doctest::Approx(lambda / (20.0 * kPi)).epsilon(1e-14));
  const Complex a = gain_los({5.0, 5.0}, w);
  CHECK(a.real() == doctest::Approx(-0.00010674101498496596).epsilon(1e-9));
  CHECK(a.imag() == doctest::Approx(-5.590455375959551e-05).epsilon(1e-9));
  CHECK_THROWS_AS(gain_los({0.0, 0.0}, w), DegeneratePosition);
}

TEST_CASE("gain_ris") {
  const Scene s = default_scene();
  const WaveformConfig w = default_waveform();
  const double lambda = w.wavelength();
  const Point2 x{3.5, 5.0};
  for (int k = 0; k < s.ris_count(); ++k) {
    const auto ang = ris_angles(s, k, x);
    const auto opt = optimal_phases(ang.theta, ang.psi, 100);
    const Point2 xk = s.ris_at(k).center;
    const double expected =
        lambda * lambda * 100.0 / (16.0 * kPi * kPi * xk.norm() * distance(x, xk));
    CHECK(rel_close(std::abs(gain_ris(s, k, opt, x, w)), expected, 1e-12));
    const double sq = std::pow(lambda, 4) * 1e4 /
                      (256.0 * std::pow(kPi, 4) * xk.dot(xk) * (x - xk).dot(x - xk));
    CHECK(rel_close(std::norm(gain_ris(s, k, opt, x, w)), sq, 1e-12));
  }
  CHECK_THROWS_AS(gain_ris(s, 0, PhaseProfile::zeros(99), x, w), std::invalid_argument);
  CHECK_THROWS_AS(gain_ris(s, 0, PhaseProfile::zeros(100), s.ris_at(0).center, w),
                  DegeneratePosition);

  const Scene one = Scene(10.0, {RisDescriptor{{2.0, 10.0}, 1}}, 1.0);
  const Point2 xk{2.0, 10.0};
  const double single = lambda * lambda / (16.0 * kPi * kPi * xk.norm() * distance(x, xk));
  CHECK(rel_close(std::abs(gain_ris(one, 0, PhaseProfile{{2.5}}, x, w)), single, 1e-12));
}

TEST_CASE("gain_reflector") {
  const Scene s = default_scene();
  const WaveformConfig w = default_waveform();
  CHECK(gain_reflector(s, {20.0, 0.0}, w) == Complex{0.0, 0.0});
  const Scene dark(10.0, {}, 1.0, ReflectorDescriptor{1.0, 6.0, 0.0});
  CHECK(gain_reflector(dark, {3.5, 0.0}, w) == Complex{0.0, 0.0});
  const Complex a = gain_reflector(s, {3.5, 0.0}, w);
  CHECK(std::abs(a) == doctest::Approx(1.258907236919002e-05).epsilon(1e-12));
  CHECK(a.real() == doctest::Approx(-7.164309267317643e-06).epsilon(1e-9));
  CHECK(a.imag() == doctest::Approx(-1.035168661807969e-05).epsilon(1e-9));
  CHECK_THROWS_AS(gain_reflector(Scene(10.0, {}, 1.0), {3.5, 0.0}, w), SceneError);
}

TEST_CASE("gain_scatter") {
  const Scene s = default_scene();
  const WaveformConfig w = default_waveform();
  const Scene blind(10.0, {}, 1.0, std::nullopt, ScatterDescriptor{{3.5, 10.0}, 0.0});
  CHECK(std::abs(gain_scatter(blind, {1.0, 1.0}, w)) == 0.0);
  // Doubling the scatterer-user distance halves the magnitude.
  const double near = std::abs(gain_scatter(s, {3.5, 8.0}, w));
  const double far = std::abs(gain_scatter(s, {3.5, 6.0}, w));
  CHECK(far == doctest::Approx(near / 2.0).epsilon(1e-14));
  const Complex a = gain_scatter(s, {3.5, 0.0}, w);
  CHECK(std::abs(a) == doctest::Approx(2.2685831431982133e-07).epsilon(1e-12));
  CHECK(a.real() == doctest::Approx(-2.2610538519824197e-07).epsilon(1e-8));
  CHECK_THROWS_AS(gain_scatter(s, {3.5, 10.0}, w), DegeneratePosition);
  CHECK_THROWS_AS(gain_scatter(Scene(10.0, {}, 1.0), {3.5, 0.0}, w), SceneError);
}

TEST_CASE("gain scaling with wavelength") {
  const Scene s = default_scene();
  WaveformConfig w = default_waveform();
  WaveformConfig w2 = w;
  w2.carrier_hz = w.carrier_hz / 2.0;  // doubles lambda
  const Point2 x{2.0, 3.0};
  CHECK(std::abs(gain_los(x, w2)) == doctest::Approx(2.0 * std::abs(gain_los(x, w))));
  CHECK(std::abs(gain_reflector(s, x, w2)) ==
        doctest::Approx(2.0 * std::abs(gain_reflector(s, x, w))));
  CHECK(std::abs(gain_scatter(s, x, w2)) == doctest::Approx(2.0 * std::abs(gain_scatter(s, x, w))));
  const auto ang = ris_angles(s, 1, x);
  const auto opt = optimal_phases(ang.theta, ang.psi, 100);
  CHECK(std::abs(gain_ris(s, 1, opt, x, w2)) ==
        doctest::Approx(4.0 * std::abs(gain_ris(s, 1, opt, x, w))));
}

TEST_CASE("reflector beats each optimized RIS at the reference point") {
  const Scene s = default_scene();
  const WaveformConfig w = default_waveform();
  const Point2 x{3.5, 5.0};
  const double refl = std::abs(gain_reflector(s, x, w));
  for (int k = 0; k < s.ris_count(); ++k) {
    const auto ang = ris_angles(s, k, x);
    CHECK(refl > std::abs(gain_ris(s, k, optimal_phases(ang.theta, ang.psi, 100), x, w)));
  }
}

TEST_CASE("build_pathset") {
  const Scene s = default_scene();
  const WaveformConfig w = default_waveform();
  SUBCASE("scatterer mode has two paths") {
    const auto set = build_pathset(s, {}, {3.5, 5.0}, w, Mode::Scatterer);
    REQUIRE(set.paths.size() == 2);
    CHECK(set.paths[0].kind == PathKind::Los);
    CHECK(set.paths[1].kind == PathKind::Scatterer);
    CHECK(set.paths[1].direction.x == doctest::Approx(0.0));
    CHECK(set.paths[1].direction.y == doctest::Approx(-1.0));
  }
  SUBCASE("reflector shadow keeps a zero-gain path") {
    const auto set = build_pathset(s, {}, {20.0, 0.0}, w, Mode::Reflector);
    REQUIRE(set.paths.size() == 2);
    CHECK(set.paths[1].gain == Complex{0.0, 0.0});
    const Point2 e = set.paths[1].direction;
    CHECK(e.x == doctest::Approx(20.0 / std::hypot(20.0, 20.0)));
  }
  SUBCASE("RIS mode has LOS plus every RIS") {
    const std::vector<std::uint8_t> a{0, 0, 1, 0, 0};
    const Point2 x{3.5, 5.0};
    const auto alloc = make_allocation(s, a, x);
    const auto set = build_pathset(s, alloc, x, w, Mode::Ris);
    REQUIRE(set.paths.size() == 6);
    CHECK(set.paths[0].direction.x == doctest::Approx(x.x / x.norm()));
    for (int k = 0; k < 5; ++k) {
      CHECK(set.paths[k + 1].ris_index == k);
      CHECK(set.paths[k + 1].delay == doctest::Approx(ris_delay(s, k, x)));
    }
    // Active RIS is the coherent one.
    CHECK(std::abs(set.paths[3].gain) > 5.0 * std::abs(set.paths[2].gain));
    // Inactive profile matches an explicit all-zero profile regardless of what the allocation holds.
    Allocation odd = alloc;
    odd.profiles[0] = PhaseProfile{std::vector<double>(100, 1.0)};
    const auto set2 = build_pathset(s, odd, x, w, Mode::Ris);
    CHECK(set2.paths[1].gain == set.paths[1].gain);
    CHECK(set.paths[1].gain == gain_ris(s, 0, PhaseProfile::zeros(100), x, w));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_pathset(s, {}, {0.0, 0.0}, w, Mode::Scatterer), DegeneratePosition);
    CHECK_THROWS_AS(build_pathset(s, {}, {1.0, 10.5}, w, Mode::Ris), DegeneratePosition);
    Allocation bad;
    bad.active = {1};
    bad.profiles = {PhaseProfile::zeros(100)};
    CHECK_THROWS_AS(build_pathset(s, bad, {1.0, 1.0}, w, Mode::Ris), std::invalid_argument);
    CHECK_THROWS_AS(build_pathset(Scene(10.0, {}, 1.0), {}, {1.0, 1.0}, w, Mode::Reflector),
                    SceneError);
  }
}

TEST_CASE("mode names") {
  CHECK(parse_mode("ris") == Mode::Ris);
  CHECK(parse_mode("reflector") == Mode::Reflector);
  CHECK(std::string(to_string(Mode::Scatterer)) == "scatterer");
  CHECK_THROWS_AS(parse_mode("mirror"), std::invalid_argument);
}
