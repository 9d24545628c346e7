#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orbitraise/orbital.hpp"

using namespace orbitraise;

namespace {

PolarState circular_state(double rho, double theta = 0.0) {
    return PolarState{rho, theta, 0.0, circular_velocity(rho)};
}

double angle_diff(double a, double b) { return std::abs(wrap_symmetric(a - b)); }

}  // namespace

TEST_CASE("energy of characteristic states") {
    CHECK(orbital_energy(circular_state(7000.0)) ==
          doctest::Approx(-kEarthMu / 14000.0).epsilon(1e-12));
    CHECK(orbital_energy(PolarState{7000.0, 0.0, 0.0, 0.0}) ==
          doctest::Approx(-kEarthMu / 7000.0).epsilon(1e-14));
}

TEST_CASE("energy and angular momentum match the cartesian oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const PolarState s = oracle::random_crown_state(rng);
        const auto ref = oracle::elements_from_polar(s, kEarthMu);
        CHECK(orbital_energy(s) == doctest::Approx(ref.energy).epsilon(1e-12));
        CHECK(angular_momentum(s) == doctest::Approx(ref.h).epsilon(1e-12));
    }
}

TEST_CASE("angular momentum basics") {
    CHECK(angular_momentum(PolarState{7000.0, 0.0, 0.0, 7.5461}) ==
          doctest::Approx(52822.7).epsilon(1e-9));
    CHECK(angular_momentum(PolarState{7000.0, 1.0, 0.003, 0.0}) == 0.0);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> v(-8.0, 8.0);
    for (int i = 0; i < 100; ++i) {
        const double vt = v(rng);
        const PolarState s{7000.0, 0.5, 0.0, vt};
        CHECK(std::signbit(angular_momentum(s)) == std::signbit(vt));
    }
}

TEST_CASE("semi-major axis of circular orbits equals the radius") {
    CHECK(semi_major_axis(circular_state(7000.0)) == doctest::Approx(7000.0).epsilon(1e-12));
    CHECK(semi_major_axis(circular_state(6978.0)) == doctest::Approx(6978.0).epsilon(1e-12));
}

TEST_CASE("parabolic states have no semi-major axis") {
    const double v_escape = std::sqrt(2.0 * kEarthMu / 7000.0);
    CHECK_THROWS_AS(semi_major_axis(PolarState{7000.0, 0.0, v_escape, 0.0}), ParabolicState);
}

TEST_CASE("eccentricity limits") {
    CHECK(eccentricity(circular_state(7000.0)) < 1e-7);
    // h = 0: rectilinear orbit, e = 1 by the formula
    CHECK(eccentricity(PolarState{7000.0, 0.0, 1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("true anomaly conventions") {
    const auto el_circ = elements(circular_state(7000.0, 2.5));
    CHECK(el_circ.theta_star == 0.0);

    // apogee state built from Kepler geometry, with v_rho exactly zero
    const double a = 7000.0, e = 0.3;
    const double p = a * (1.0 - e * e);
    const PolarState apo{a * (1.0 + e), 1.0, 0.0, std::sqrt(kEarthMu / p) * (1.0 - e)};
    const auto el_apo = elements(apo);
    CHECK(std::abs(el_apo.theta_star) == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("elements of a circular state reduce to the angle") {
    const auto el = elements(circular_state(7000.0, 1.0));
    CHECK(el.a == doctest::Approx(7000.0).epsilon(1e-12));
    CHECK(el.e < 1e-7);
    CHECK(el.theta_star == 0.0);
    CHECK(el.omega == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("target-orbit perigee sample inverts exactly") {
    const PolarState s = oracle::state_from_elements(7000.0, 0.001, 0.0, 0.0, kEarthMu);
    const auto el = elements(s);
    CHECK(el.a == doctest::Approx(7000.0).epsilon(1e-9));
    CHECK(el.e == doctest::Approx(0.001).epsilon(1e-6));
    CHECK(angle_diff(el.omega, 0.0) < 1e-9);
}

TEST_CASE("element extraction matches the cartesian oracle on random crown states") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const PolarState s = oracle::random_crown_state(rng);
        const auto got = elements(s);
        const auto ref = oracle::elements_from_polar(s, kEarthMu);
        CHECK(got.a == doctest::Approx(ref.a).epsilon(1e-9));
        CHECK(std::abs(got.e - ref.e) < 1e-9);
        CHECK(angle_diff(got.theta_star, ref.theta_star) < 1e-9);
        CHECK(angle_diff(got.omega, ref.omega) < 1e-9);
    }
}

TEST_CASE("elements invert state_from_elements across the elliptic range") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> ua(6800.0, 7400.0);
    std::uniform_real_distribution<double> ue(1e-4, 0.5);
    std::uniform_real_distribution<double> uang(0.0, kTwoPi);
    std::uniform_real_distribution<double> uts(-kPi + 1e-3, kPi - 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const double a = ua(rng), e = ue(rng), omega = uang(rng), ts = uts(rng);
        const auto el = elements(oracle::state_from_elements(a, e, omega, ts, kEarthMu));
        CHECK(el.a == doctest::Approx(a).epsilon(1e-9));
        CHECK(std::abs(el.e - e) < 1e-9);
        CHECK(angle_diff(el.omega, omega) < 1e-9);
        CHECK(angle_diff(el.theta_star, ts) < 1e-9);
        CHECK(el.p == doctest::Approx(el.a * (1.0 - el.e * el.e)).epsilon(1e-12));
    }
}

TEST_CASE("argument of perigee shifts with theta translation") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
        const PolarState s = oracle::random_crown_state(rng);
        const double delta = 1.25;
        PolarState shifted = s;
        shifted.theta = wrap_angle(s.theta + delta);
        const auto el = elements(s);
        const auto el_shifted = elements(shifted);
        CHECK(el_shifted.a == doctest::Approx(el.a).epsilon(1e-12));
        CHECK(el_shifted.e == doctest::Approx(el.e).epsilon(1e-9));
        CHECK(angle_diff(el_shifted.omega, el.omega + delta) < 1e-9);
    }
}

TEST_CASE("circular velocity values") {
    CHECK(circular_velocity(7000.0) == doctest::Approx(7.5461).epsilon(2e-5));
    const double v6978 = circular_velocity(6978.0);
    CHECK(v6978 == doctest::Approx(7.5580).epsilon(2e-5));
    CHECK(v6978 > 7.526);
    CHECK(v6978 < 7.566);
    CHECK(eccentricity(circular_state(6978.0)) < 1e-7);
}

TEST_CASE("polar/cartesian alignment cases") {
    const double v = circular_velocity(7000.0);
    const auto c0 = to_cartesian(PolarState{7000.0, 0.0, 0.0, v});
    CHECK(c0.y1 == 7000.0);
    CHECK(c0.y2 == 0.0);
    CHECK(c0.v1 == 0.0);
    CHECK(c0.v2 == v);

    const auto c1 = to_cartesian(PolarState{7000.0, kPi / 2.0, 0.0, v});
    CHECK(c1.y1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c1.y2 == doctest::Approx(7000.0).epsilon(1e-15));
    CHECK(c1.v1 == doctest::Approx(-v).epsilon(1e-15));
    CHECK(c1.v2 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("polar/cartesian round trip on random states") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 1000; ++i) {
        const PolarState s = oracle::random_crown_state(rng);
        const PolarState back = to_polar(to_cartesian(s));
        const double speed = std::hypot(s.v_rho, s.v_theta);
        CHECK(back.rho == doctest::Approx(s.rho).epsilon(1e-12));
        CHECK(angle_diff(back.theta, s.theta) < 1e-12);
        CHECK(std::abs(back.v_rho - s.v_rho) < 1e-12 * speed);
        CHECK(back.v_theta == doctest::Approx(s.v_theta).epsilon(1e-12));
    }
}

TEST_CASE("origin has no polar representation") {
    CHECK_THROWS_AS(to_polar(CartesianState{0.0, 0.0, 1.0, 1.0}), OriginSingularity);
}
