#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rpt/error.hpp"
#include "rpt/notch.hpp"

using namespace rpt;

namespace {

double rms(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

// Magnitude evaluated straight from the difference-equation coefficients.
double magnitude(const BiquadCoeffs& c, double f) {
  const double w = 2.0 * std::numbers::pi * f / c.fs;
  const std::complex<double> z1 = std::exp(std::complex<double>(0.0, -w));
  const auto num = c.b0 + c.b1 * z1 + c.b2 * z1 * z1;
  const auto den = 1.0 + c.a1 * z1 + c.a2 * z1 * z1;
  return std::abs(num / den);
}

}  // namespace

TEST_CASE("design_notch for 50 Hz at 360 Hz, Q = 1") {
  const auto c = design_notch(50.0, 360.0, 1.0);
  CHECK(magnitude(c, 50.0) < 1e-12);
  CHECK(std::abs(magnitude(c, 0.0) - 1.0) < 1e-9);
  CHECK(std::abs(magnitude(c, 180.0) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(c.response(50.0))) < 1e-12);

  // Dense sweep for the -3 dB band edges.
  const double half_power = 1.0 / std::sqrt(2.0);
  double lo = -1.0, hi = -1.0;
  const int steps = 1800000;
  for (int i = 0; i <= steps; ++i) {
    const double f = 180.0 * i / steps;
    if (magnitude(c, f) <= half_power) {
      if (lo < 0.0) lo = f;
      hi = f;
    }
  }
  CHECK(lo < 50.0);
  CHECK(hi > 50.0);
  CHECK(std::abs((hi - lo) - 50.0) <= 5.0);
}

TEST_CASE("design_notch is stable with unity edges across parameters") {
  for (double fs : {250.0, 360.0, 1000.0}) {
    for (double f0 : {10.0, 50.0, 60.0}) {
      for (double q : {0.7, 1.0, 5.0, 30.0}) {
        if (f0 / q >= fs / 2.0 || f0 >= fs / 2.0) continue;
        const auto c = design_notch(f0, fs, q);
        CHECK(c.a2 > -1.0);
        CHECK(c.a2 < 1.0);
        // Poles of z^2 + a1 z + a2 inside the unit circle.
        const auto disc = std::complex<double>(c.a1 * c.a1 - 4.0 * c.a2, 0.0);
        const auto p1 = (-c.a1 + std::sqrt(disc)) / 2.0, p2 = (-c.a1 - std::sqrt(disc)) / 2.0;
        CHECK(std::abs(p1) < 1.0);
        CHECK(std::abs(p2) < 1.0);
        CHECK(magnitude(c, f0) < 1e-12);
        CHECK(std::abs(magnitude(c, 0.0) - 1.0) < 1e-9);
        CHECK(std::abs(magnitude(c, fs / 2.0) - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("design_notch argument checks") {
  CHECK_THROWS_AS(design_notch(0.0, 360.0, 1.0), Error);
  CHECK_THROWS_AS(design_notch(180.0, 360.0, 1.0), Error);
  CHECK_THROWS_AS(design_notch(50.0, 360.0, 0.0), Error);
  CHECK_THROWS_AS(design_notch(50.0, 360.0, 0.2), Error);  // 250 Hz wide
}

TEST_CASE("filter_block") {
  const auto c = design_notch(50.0, 360.0, 1.0);
  SUBCASE("zeros in, zeros out") {
    const auto y = filter_block(c, std::vector<double>(100, 0.0));
    CHECK(y == std::vector<double>(100, 0.0));
  }
  SUBCASE("impulse response head") {
    std::vector<double> x(8, 0.0);
    x[0] = 1.0;
    const auto y = filter_block(c, x);
    CHECK(y[0] == doctest::Approx(c.b0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(c.b1 - c.b0 * c.a1).epsilon(1e-14));
    CHECK(y[2] == doctest::Approx(c.b2 - c.b1 * c.a1 - c.b0 * (c.a2 - c.a1 * c.a1)).epsilon(1e-14));
  }
  SUBCASE("steady-state 50 Hz is nulled") {
    const auto x = oracle::sinusoid(20 * 360, 50.0, 360.0, 1.0, 0.3);
    const auto y = filter_block(c, x);
    const std::span<const double> tail(y.data() + y.size() - 360, 360);
    CHECK(rms(tail) < 1e-6 * rms(x));
  }
  SUBCASE("linear and time invariant") {
    std::mt19937_64 rng(21);
    const auto u = oracle::random_vector(rng, 500), v = oracle::random_vector(rng, 500);
    std::vector<double> mix(500);
    for (std::size_t i = 0; i < 500; ++i) mix[i] = 2.0 * u[i] - 3.0 * v[i];
    const auto yu = filter_block(c, u), yv = filter_block(c, v), ym = filter_block(c, mix);
    for (std::size_t i = 0; i < 500; ++i) CHECK(std::abs(ym[i] - (2.0 * yu[i] - 3.0 * yv[i])) < 1e-12);

    std::vector<double> delayed(510, 0.0);
    std::copy(u.begin(), u.end(), delayed.begin() + 10);
    const auto yd = filter_block(c, delayed);
    for (std::size_t i = 0; i < 500; ++i) CHECK(std::abs(yd[i + 10] - yu[i]) < 1e-12);
  }
}

TEST_CASE("filter_blockwise resets state at block boundaries") {
  const auto c = design_notch(50.0, 360.0, 1.0);
  std::mt19937_64 rng(22);
  const auto x = oracle::random_vector(rng, 72);
  const auto whole = filter_block(c, x);
  const auto blocked = filter_blockwise(c, x, 36);
  const auto first = filter_block(c, std::span<const double>(x.data(), 36));
  const auto second = filter_block(c, std::span<const double>(x.data() + 36, 36));
  for (std::size_t i = 0; i < 36; ++i) {
    CHECK(blocked[i] == first[i]);
    CHECK(blocked[36 + i] == second[i]);
  }
  CHECK(oracle::max_abs_diff(whole, blocked) > 1e-6);
  // Deterministic.
  CHECK(filter_blockwise(c, x, 36) == blocked);
  // Partial trailing block.
  CHECK(filter_blockwise(c, std::span<const double>(x.data(), 50), 36).size() == 50);
  CHECK_THROWS_AS(filter_blockwise(c, x, 0), Error);
}
