#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pulsekit/dynamics.hpp"
#include "pulsekit/errors.hpp"

using namespace pulsekit;

namespace {
constexpr double kPi = 3.14159265358979323846;

DriveParams sine_drive(double area_over_pi, double detuning) {
    auto s = make_shape(ShapeKind::sine, 1.0, 1.0);
    s = calibrate_area(s, area_over_pi * kPi);
    return {s, detuning};
}
} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("hamiltonian: original and rotated forms, G involution") {
    auto rect = make_shape(ShapeKind::rectangular, 1.0, 1.0, 0.0);
    DriveParams off{rect, 2.0};
    const Mat2c h = hamiltonian(off, 0.5);
    CHECK(h.u11() == cxd(-1.0, 0.0));
    CHECK(h.u22() == cxd(1.0, 0.0));
    CHECK(h.u12() == cxd(0.0, 0.0));

    auto rect2 = make_shape(ShapeKind::rectangular, 1.0, 1.0, 2.0);
    DriveParams res{rect2, 0.0};
    const Mat2c hr = hamiltonian(res, 0.5, true);
    CHECK(hr.u11() == cxd(-1.0, 0.0));
    CHECK(hr.u22() == cxd(1.0, 0.0));
    CHECK(hr.u12() == cxd(0.0, 0.0));

    const Mat2c g2 = hadamard_g() * hadamard_g();
    CHECK((g2 - Mat2c::identity()).max_abs() < 1e-15);

    // rotated = G H G
    DriveParams p = sine_drive(1.0, 3.0);
    const Mat2c lhs = hamiltonian(p, 0.3, true);
    const Mat2c rhs = hadamard_g() * hamiltonian(p, 0.3) * hadamard_g();
    CHECK((lhs - rhs).max_abs() < 1e-14);
}

TEST_CASE("propagate_exact: rectangular anchors") {
    auto rect = make_shape(ShapeKind::rectangular, 1.0, 1.0, kPi);
    // pi pulse on resonance
    const Mat2c u = propagate_exact({rect, 0.0}, 0.0, 1.0, 1e-12);
    CHECK(std::norm(u.u12()) == doctest::Approx(1.0).epsilon(1e-10));
    // full generalized Rabi cycle: Delta T = sqrt(3) pi
    const Mat2c u2 = propagate_exact({rect, std::sqrt(3.0) * kPi}, 0.0, 1.0, 1e-12);
    CHECK(std::norm(u2.u12()) < 1e-9);
}

TEST_CASE("propagate_exact: sine satellite anchor") {
    // area pi, Delta T = 11.1; frozen from high-accuracy integration
    DriveParams p = sine_drive(1.0, 11.1);
    const Mat2c u = propagate_exact(p, 0.0, 1.0, 1e-12);
    CHECK(std::norm(u.u12()) == doctest::Approx(0.0179526).epsilon(2e-5));
}

TEST_CASE("propagate_exact: tolerance and interval preconditions") {
    DriveParams p = sine_drive(1.0, 0.0);
    CHECK_THROWS_AS((void)propagate_exact(p, 0.0, 1.0, 1e-3), OutOfDomain);
    CHECK_THROWS_AS((void)propagate_exact(p, 0.0, 1.0, 1e-14), OutOfDomain);
    CHECK_THROWS_AS((void)propagate_exact(p, 0.6, 0.4, 1e-10), OutOfDomain);
    CHECK_THROWS_AS((void)propagate_exact(p, -0.1, 0.5, 1e-10), OutOfDomain);
}

TEST_CASE("propagate_exact: composition, time symmetry, detuning symmetry") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uo(2.0, 25.0), ud(-20.0, 20.0);
    const std::vector<ShapeKind> kinds = {ShapeKind::sine, ShapeKind::gaussian,
                                          ShapeKind::sech2};
    for (int rep = 0; rep < 12; ++rep) {
        auto s = make_shape(kinds[rep % kinds.size()], 1.0, 1.0, uo(rng));
        DriveParams p{s, ud(rng)};
        const Mat2c full = propagate_exact(p, 0.0, 1.0, 1e-12);
        const Mat2c first = propagate_exact(p, 0.0, 0.5, 1e-12);
        const Mat2c second = propagate_exact(p, 0.5, 1.0, 1e-12);
        CHECK((full - second * first).max_abs() < 1e-9);
        // symmetric shape: second half is the transpose of the first half
        CHECK((second - first.transpose()).max_abs() < 1e-9);
        // |u12| is even in the detuning
        DriveParams pm{s, -p.detuning};
        const Mat2c fullm = propagate_exact(pm, 0.0, 1.0, 1e-12);
        CHECK(std::abs(std::norm(full.u12()) - std::norm(fullm.u12())) < 1e-9);
    }
}

TEST_CASE("propagate_exact: unitarity drift of the raw integration") {
    DriveParams p = sine_drive(3.0, 7.0);
    const auto res = propagate_exact_detail(p, 0.0, 1.0, 1e-12);
    CHECK(res.unitarity_drift < 1e-10);
    CHECK(res.u.unitarity_error() < 1e-10);
}

TEST_CASE("propagate_exact: agrees with the fixed-step RK4 oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uo(1.0, 20.0), ud(-15.0, 15.0);
    for (int rep = 0; rep < 10; ++rep) {
        auto s = make_shape(ShapeKind::sine, 1.0, 1.0, uo(rng));
        DriveParams p{s, ud(rng)};
        const Mat2c fast = propagate_exact(p, 0.0, 1.0, 1e-12);
        const Mat2c slow = oracles::propagate_rk4(p, 0.0, 1.0, 200000);
        CHECK((fast - slow).max_abs() < 1e-8);
    }
}

TEST_CASE("adiabatic_quantities: anchors") {
    auto rect = make_shape(ShapeKind::rectangular, 1.0, 1.0, 4.0);
    const auto q = adiabatic_quantities({rect, 3.0}, 0.5, 0.5);
    CHECK(q.lambda_split == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(2.0 * q.vartheta == doctest::Approx(0.5 * kPi - 2.0 * q.theta).epsilon(1e-13));

    // t = 0 with Omega(0) = 0 and Delta > 0: vartheta = pi/4
    DriveParams p = sine_drive(1.0, 2.0);
    const auto q0 = adiabatic_quantities(p, 0.0, 0.0);
    CHECK(q0.vartheta == doctest::Approx(0.25 * kPi).epsilon(1e-13));

    // resonant sine, area pi: eta over [0, T/2] equals half the pi area
    DriveParams pr = sine_drive(1.0, 0.0);
    const auto qr = adiabatic_quantities(pr, 0.5, 0.0);
    CHECK(qr.eta == doctest::Approx(0.5 * kPi).epsilon(1e-11));
}

TEST_CASE("adiabatic_propagator: algebraic anchors") {
    const Mat2c id = adiabatic_propagator(0.3, 0.3, 0.0);
    CHECK((id - Mat2c::identity()).max_abs() < 1e-15);

    const double eta = 1.7;
    const Mat2c u = adiabatic_propagator(0.25 * kPi, 0.25 * kPi, eta);
    CHECK(std::abs(u.u11() - cxd(std::cos(0.5 * eta), 0.0)) < 1e-15);
    CHECK(std::abs(u.u12() - cxd(0.0, -std::sin(0.5 * eta))) < 1e-15);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(0.0, 0.5 * kPi), ue(0.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const Mat2c m = adiabatic_propagator(ang(rng), ang(rng), ue(rng));
        CHECK(m.unitarity_error() < 1e-14);
        CHECK(std::abs(m.det() - cxd(1.0, 0.0)) < 1e-14);
    }
}

TEST_CASE("adiabatic_propagator: slow-sweep integration oracle") {
    // smooth-step sweep of the mixing angle from 0.3 to 0.5 at constant
    // detuning; deep-adiabatic so the closed form should track the dynamics
    const double th_i = 0.3, th_f = 0.5, delta = 1.0, t_dur = 200.0;
    auto theta_of = [&](double t) {
        const double s = t / t_dur;
        return th_i + (th_f - th_i) * (3.0 * s * s - 2.0 * s * s * s);
    };
    auto omega_of = [&](double t) { return delta * std::tan(2.0 * theta_of(t)); };
    // fixed-step RK4 of the sweep (the shape is not in the catalog)
    Mat2c u = Mat2c::identity();
    const long steps = 400000;
    const double dt = t_dur / steps;
    auto deriv = [&](double t, const Mat2c& m) {
        const double om = omega_of(t);
        const Mat2c h{{cxd(-0.5 * delta), cxd(0.5 * om), cxd(0.5 * om),
                       cxd(0.5 * delta)}};
        Mat2c out = h * m;
        for (auto& e : out.m) e *= cxd(0.0, -1.0);
        return out;
    };
    auto axpy = [](const Mat2c& a, double s, const Mat2c& b) {
        Mat2c out = a;
        for (int i = 0; i < 4; ++i) out.m[i] += s * b.m[i];
        return out;
    };
    for (long i = 0; i < steps; ++i) {
        const double t = t_dur * static_cast<double>(i) / steps;
        const Mat2c k1 = deriv(t, u);
        const Mat2c k2 = deriv(t + 0.5 * dt, axpy(u, 0.5 * dt, k1));
        const Mat2c k3 = deriv(t + 0.5 * dt, axpy(u, 0.5 * dt, k2));
        const Mat2c k4 = deriv(t + dt, axpy(u, dt, k3));
        for (int j = 0; j < 4; ++j)
            u.m[j] += (dt / 6.0) * (k1.m[j] + 2.0 * k2.m[j] + 2.0 * k3.m[j] + k4.m[j]);
    }
    // adiabatic phase by fine Simpson
    double eta = 0.0;
    const int n = 200000;
    for (int i = 0; i <= n; ++i) {
        const double t = t_dur * static_cast<double>(i) / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        eta += w * std::hypot(delta, omega_of(t));
    }
    eta *= t_dur / (3.0 * n);
    const Mat2c uad = adiabatic_propagator(th_i, th_f, eta);
    CHECK((u - uad).max_abs() < 1e-3);
}

} // TEST_SUITE
