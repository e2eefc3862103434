#include <doctest.h>

#include <cmath>
#include <random>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"
#include "pulsekit/shapes.hpp"

using namespace pulsekit;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<ShapeKind> smooth_catalog() {
    return {ShapeKind::sine,  ShapeKind::lorentzian, ShapeKind::lorentzian2,
            ShapeKind::sech,  ShapeKind::sech2,      ShapeKind::gaussian};
}
} // namespace

TEST_SUITE("shapes") {

TEST_CASE("make_shape: processing anchors") {
    const auto sine = make_shape(ShapeKind::sine, 1.0, 1.0);
    CHECK(sine.f(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sine.f(0.25) == doctest::Approx(std::sin(kPi * 0.25)).epsilon(1e-14));

    const auto gauss = make_shape(ShapeKind::gaussian, 1.0, 1.0);
    CHECK(std::abs(gauss.f(0.0)) < 1e-14);
    CHECK(gauss.f(0.5) == doctest::Approx(1.0).epsilon(1e-14));

    // raw endpoint background of sech^2 at tau = T = 1 is sech^2(1/2)
    const auto s2 = make_shape(ShapeKind::sech2, 1.0, 1.0);
    CHECK(s2.background == doctest::Approx(0.78644773296592620).epsilon(1e-12));
}

TEST_CASE("make_shape: invalid inputs") {
    CHECK_THROWS_AS((void)make_shape(ShapeKind::sine, 1.0, 0.0), InvalidDuration);
    CHECK_THROWS_AS((void)make_shape(ShapeKind::gaussian, -1.0, 1.0), InvalidDuration);
    CHECK_THROWS_AS((void)shape_kind_from_string("triangle"), UnsupportedKind);
}

TEST_CASE("processed invariants: endpoints, peak, symmetry") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> utau(0.3, 3.0), udur(0.4, 4.0);
    for (ShapeKind kind : smooth_catalog()) {
        for (int rep = 0; rep < 20; ++rep) {
            const double tau = utau(rng);
            const double T = udur(rng);
            const auto s = make_shape(kind, tau, T);
            CAPTURE(to_string(kind));
            CHECK(std::abs(s.f(0.0)) < 1e-12);
            CHECK(std::abs(s.f(T)) < 1e-12);
            CHECK(s.f(0.5 * T) == doctest::Approx(1.0).epsilon(1e-12));
            for (double frac : {0.1, 0.23, 0.42}) {
                CHECK(s.f(frac * T) ==
                      doctest::Approx(s.f(T - frac * T)).epsilon(1e-12));
            }
            CHECK(s.df(0.0, 1) > 0.0);  // f'(0+) > 0
        }
    }
    // exponential keeps its central cusp
    const auto e = make_shape(ShapeKind::exponential, 1.0, 1.0);
    CHECK(std::abs(e.f(0.0)) < 1e-12);
    CHECK(e.f(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(diagnose(e).cusp_detected);
}

TEST_CASE("evaluate: values, derivatives and domain errors") {
    auto s = make_shape(ShapeKind::sine, 1.0, 1.0);
    CHECK(evaluate(s, 0.25, 0) == doctest::Approx(std::sin(kPi / 4)).epsilon(1e-14));
    CHECK(std::abs(evaluate(s, 0.0, 2)) < 1e-12);  // sin'' vanishes at the ends
    CHECK(evaluate(s, -0.5, 0) == 0.0);
    CHECK(evaluate(s, 1.5, 0) == 0.0);
    CHECK_THROWS_AS((void)evaluate(s, -0.5, 1), OutOfDomain);
    CHECK_THROWS_AS((void)evaluate(s, 1.0 + 1e-9, 2), OutOfDomain);

    const auto e = make_shape(ShapeKind::exponential, 1.0, 1.0);
    CHECK_THROWS_AS((void)evaluate(e, 0.5, 1), CuspError);
    CHECK_NOTHROW((void)evaluate(e, 0.5, 0));

    // derivatives against central differences
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(0.05, 0.45);
    for (ShapeKind kind : smooth_catalog()) {
        const auto sh = make_shape(kind, 0.8, 1.3, 2.5);
        for (int rep = 0; rep < 10; ++rep) {
            const double t = ut(rng) * sh.duration;
            const double h = 1e-5;
            const double d1 =
                (evaluate(sh, t + h, 0) - evaluate(sh, t - h, 0)) / (2 * h);
            const double d2 = (evaluate(sh, t + h, 0) - 2 * evaluate(sh, t, 0) +
                               evaluate(sh, t - h, 0)) /
                              (h * h);
            CHECK(evaluate(sh, t, 1) == doctest::Approx(d1).epsilon(1e-7));
            CHECK(evaluate(sh, t, 2) == doctest::Approx(d2).epsilon(1e-4));
        }
    }
}

TEST_CASE("area and calibration") {
    auto sine = make_shape(ShapeKind::sine, 1.0, 1.0, 1.0);
    CHECK(area(sine) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
    const auto cal = calibrate_area(sine, kPi);
    CHECK(cal.omega0 == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-10));
    CHECK(area(cal) == doctest::Approx(kPi).epsilon(1e-10));

    auto rect = make_shape(ShapeKind::rectangular, 1.0, 1.0, kPi);
    CHECK(area(rect) == doctest::Approx(kPi).epsilon(1e-14));

    // quadrature vs an independent Simpson evaluation
    auto gauss = make_shape(ShapeKind::gaussian, 0.7, 1.1, 3.0);
    const double num_area = area(gauss);
    double acc = 0.0;
    const int n = 20000;
    for (int i = 0; i <= n; ++i) {
        const double t = gauss.duration * static_cast<double>(i) / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * evaluate(gauss, t, 0);
    }
    acc *= gauss.duration / (3.0 * n);
    CHECK(num_area == doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("diagnose: slopes, linearity, inflections") {
    const auto sine = make_shape(ShapeKind::sine, 1.0, 1.0);
    const auto ds = diagnose(sine);
    CHECK(ds.slope_at_start == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(ds.secant_slope_quarter ==
          doctest::Approx(std::sin(kPi / 4) / 0.25).epsilon(1e-12));
    CHECK_FALSE(ds.cusp_detected);
    CHECK(ds.inflection_offsets.empty());  // sin'' has no interior zero

    // lorentzian^2 raw inflection at |t - T/2| = tau/sqrt(5)
    const double tau = 1.0;
    const auto l2 = make_shape(ShapeKind::lorentzian2, tau, 1.0);
    const auto dl2 = diagnose(l2);
    REQUIRE(dl2.inflection_offsets.size() == 1);
    CHECK(dl2.inflection_offsets[0] ==
          doctest::Approx(0.5 - tau / std::sqrt(5.0)).epsilon(1e-9));

    // truncating further from the inflection point makes the ends less linear
    const auto l2_wide = make_shape(ShapeKind::lorentzian2, 1.0 / 1.67, 1.0);
    CHECK(diagnose(l2_wide).linearity_ratio > dl2.linearity_ratio);

    // the pointwise curvature-to-slope ratio vanishes toward the sine endpoints
    const double t_small = 1e-3;
    CHECK(std::abs(sine.df(t_small, 2)) / std::abs(sine.df(t_small, 1)) < 0.02);
}

TEST_CASE("secant and initial slopes") {
    const auto sine = make_shape(ShapeKind::sine, 1.0, 1.0);
    CHECK(initial_slope(sine) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(secant_slope(sine, 0.25) ==
          doctest::Approx(std::sin(kPi / 4) / 0.25).epsilon(1e-13));
    CHECK_THROWS_AS((void)secant_slope(sine, 0.0), InvalidLambda);
    CHECK_THROWS_AS((void)secant_slope(sine, 0.6), InvalidLambda);
}

} // TEST_SUITE
