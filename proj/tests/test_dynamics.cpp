#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orbitraise/dynamics.hpp"
#include "orbitraise/orbital.hpp"

using namespace orbitraise;

namespace {

constexpr double kUMax = 5e-7;

double state_norm(const PolarState& a, const PolarState& b) {
    return std::sqrt((a.rho - b.rho) * (a.rho - b.rho) +
                     wrap_symmetric(a.theta - b.theta) * wrap_symmetric(a.theta - b.theta) +
                     (a.v_rho - b.v_rho) * (a.v_rho - b.v_rho) +
                     (a.v_theta - b.v_theta) * (a.v_theta - b.v_theta));
}

double energy_rate(const PolarState& s, const StateDerivative& d, double mu) {
    return mu / (s.rho * s.rho) * d.d_rho + s.v_rho * d.d_v_rho + s.v_theta * d.d_v_theta;
}

}  // namespace

TEST_CASE("control tabulation counts") {
    const auto full = control_set(kUMax, 5.0 * kPi / 180.0);
    CHECK(full.size() == 73);
    CHECK(full[0].is_null());
    CHECK(full[0].phi == 0.0);

    const auto coarse = control_set(kUMax, kPi / 2.0);
    CHECK(coarse.size() == 5);

    CHECK_THROWS_AS(control_set(kUMax, 70.0 * kPi / 180.0), InvalidStep);
    CHECK_THROWS_AS(control_set(kUMax, -1.0), InvalidStep);
}

TEST_CASE("every control is bang-off") {
    for (const auto& c : control_set(kUMax, 5.0 * kPi / 180.0)) {
        CHECK((c.u_bar == 0.0 || c.u_bar == kUMax));
    }
}

TEST_CASE("thrust tabulation is symmetric under phi -> phi + pi") {
    for (const double step : {5.0 * kPi / 180.0, kPi / 2.0}) {
        const auto controls = control_set(kUMax, step);
        for (const auto& c : controls) {
            if (c.is_null()) continue;
            const double opposite = wrap_angle(c.phi + kPi);
            bool found = false;
            for (const auto& other : controls) {
                if (!other.is_null() && std::abs(wrap_symmetric(other.phi - opposite)) < 1e-12) {
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("circular states are equilibria of the uncontrolled radial dynamics") {
    const PolarState s{7000.0, 0.3, 0.0, circular_velocity(7000.0)};
    const auto d = polar_rhs(s, Control::off());
    CHECK(d.d_rho == 0.0);
    CHECK(std::abs(d.d_v_rho) < 1e-15);
    CHECK(d.d_v_theta == 0.0);
    CHECK(d.d_theta == doctest::Approx(s.v_theta / s.rho));
}

TEST_CASE("tangential thrust adds to the angular acceleration") {
    const PolarState s{7000.0, 1.0, 0.002, 7.55};
    const auto coast = polar_rhs(s, Control::off());
    const auto boosted = polar_rhs(s, Control::thrust(kUMax, kPi / 2.0));
    CHECK(boosted.d_v_theta - coast.d_v_theta == doctest::Approx(kUMax).epsilon(1e-9));
    CHECK(boosted.d_v_rho == doctest::Approx(coast.d_v_rho).epsilon(1e-9));
}

TEST_CASE("rho at the origin is rejected") {
    CHECK_THROWS_AS(polar_rhs(PolarState{0.0, 0.0, 0.0, 7.5}, Control::off()), OriginSingularity);
}

TEST_CASE("drag coefficient and magnitude match the constant-density model") {
    const DragParams drag{2.2, 2.25, 350.0, 8.09e-14};
    CHECK(drag.accel_coeff() == doctest::Approx(5.7208e-13).epsilon(1e-3));

    const PolarState s{6978.0, 0.0, 0.0, 7.55};
    const auto with = polar_rhs(s, Control::off(), drag);
    const auto without = polar_rhs(s, Control::off());
    CHECK(without.d_v_theta - with.d_v_theta == doctest::Approx(3.26e-11).epsilon(1e-2));
}

TEST_CASE("drag always dissipates energy") {
    const DragParams drag{2.2, 2.25, 350.0, 8.09e-14};
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> vr(-0.5, 0.5);
    for (int i = 0; i < 200; ++i) {
        PolarState s = oracle::random_crown_state(rng);
        s.v_rho = vr(rng);  // include strongly negative radial motion
        const auto with = polar_rhs(s, Control::off(), drag);
        const auto without = polar_rhs(s, Control::off());
        CHECK(energy_rate(s, with, kEarthMu) < energy_rate(s, without, kEarthMu));
    }
}

TEST_CASE("polar dynamics agrees with the cartesian system under conjugation") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> phi(0.0, kTwoPi);
    std::uniform_int_distribution<int> on(0, 1);
    for (int i = 0; i < 500; ++i) {
        const PolarState s = oracle::random_crown_state(rng);
        const Control c = on(rng) ? Control::thrust(kUMax, phi(rng)) : Control::off();
        const auto d = polar_rhs(s, c);

        const double ct = std::cos(s.theta), st = std::sin(s.theta);
        // chain rule through the polar->cartesian map
        const double y1_dot = d.d_rho * ct - s.rho * st * d.d_theta;
        const double y2_dot = d.d_rho * st + s.rho * ct * d.d_theta;
        const double v1_dot = d.d_v_rho * ct - s.v_rho * st * d.d_theta -
                              d.d_v_theta * st - s.v_theta * ct * d.d_theta;
        const double v2_dot = d.d_v_rho * st + s.v_rho * ct * d.d_theta +
                              d.d_v_theta * ct - s.v_theta * st * d.d_theta;

        const auto cart = to_cartesian(s);
        const double r3 = std::pow(std::hypot(cart.y1, cart.y2), 3);
        const double u1 = c.a_radial * ct - c.a_tangential * st;
        const double u2 = c.a_radial * st + c.a_tangential * ct;
        CHECK(std::abs(y1_dot - cart.v1) < 1e-12);
        CHECK(std::abs(y2_dot - cart.v2) < 1e-12);
        CHECK(std::abs(v1_dot - (-kEarthMu * cart.y1 / r3 + u1)) < 1e-12);
        CHECK(std::abs(v2_dot - (-kEarthMu * cart.y2 / r3 + u2)) < 1e-12);
    }
}

TEST_CASE("zero-step integrators are the identity") {
    const PolarState s{7000.0, 0.3, 0.005, 7.5};
    const Control c = Control::thrust(kUMax, 1.0);
    const PolarState s2 = rk2_step(s, c, 0.0);
    const PolarState s4 = rk4_step(s, c, 0.0);
    for (const auto& out : {s2, s4}) {
        CHECK(out.rho == s.rho);
        CHECK(out.theta == s.theta);
        CHECK(out.v_rho == s.v_rho);
        CHECK(out.v_theta == s.v_theta);
    }
}

TEST_CASE("one heun step on a circular orbit keeps the radius") {
    const PolarState s{6978.0, 0.0, 0.0, circular_velocity(6978.0)};
    const PolarState out = rk2_step(s, Control::off(), 10.0);
    CHECK(std::abs(out.rho - s.rho) < 1e-6);
}

TEST_CASE("heun is second order (local error ratio ~ 8)") {
    const PolarState s{7000.0, 0.3, 0.005, 7.5};
    const Control c = Control::thrust(kUMax, 1.0);
    const double dt = 40.0;
    const double err_full =
        state_norm(rk2_step(s, c, dt), oracle::reference_step(s, c, dt, 2000, kEarthMu));
    const double err_half =
        state_norm(rk2_step(s, c, dt / 2), oracle::reference_step(s, c, dt / 2, 2000, kEarthMu));
    const double ratio = err_full / err_half;
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);
}

TEST_CASE("classical rk4 is fourth order (local error ratio ~ 32)") {
    const PolarState s{7000.0, 0.3, 0.005, 7.5};
    const Control c = Control::off();
    const double dt = 80.0;
    const double err_full =
        state_norm(rk4_step(s, c, dt), oracle::reference_step(s, c, dt, 4000, kEarthMu));
    const double err_half =
        state_norm(rk4_step(s, c, dt / 2), oracle::reference_step(s, c, dt / 2, 4000, kEarthMu));
    const double ratio = err_full / err_half;
    CHECK(ratio > 22.0);
    CHECK(ratio < 45.0);
}

TEST_CASE("coasting rk4 conserves energy and angular momentum") {
    // one full circular period at 1 s steps
    PolarState s{6978.0, 0.0, 0.0, circular_velocity(6978.0)};
    const double period = kTwoPi * std::sqrt(6978.0 * 6978.0 * 6978.0 / kEarthMu);
    const double e0 = orbital_energy(s);
    const double h0 = angular_momentum(s);
    const int steps = static_cast<int>(period);
    for (int i = 0; i < steps; ++i) s = rk4_step(s, Control::off(), 1.0);
    s = rk4_step(s, Control::off(), period - steps);
    CHECK(std::abs(orbital_energy(s) - e0) < 1e-10 * std::abs(e0));
    CHECK(std::abs(angular_momentum(s) - h0) < 1e-10 * std::abs(h0));

    // generic elliptic state over 1e4 s
    PolarState g{7000.0, 0.2, 0.008, 7.54};
    const double eg = orbital_energy(g);
    const double hg = angular_momentum(g);
    for (int i = 0; i < 10000; ++i) g = rk4_step(g, Control::off(), 1.0);
    CHECK(std::abs(orbital_energy(g) - eg) < 1e-8 * std::abs(eg));
    CHECK(std::abs(angular_momentum(g) - hg) < 1e-8 * std::abs(hg));
}
