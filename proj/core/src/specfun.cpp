#include "pulsekit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"

namespace pulsekit::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnPi = 1.1447298858494001741;
constexpr double kHalfLn2Pi = 0.91893853320467274178;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEps = 2.220446049250313e-16;

// Stirling series coefficients B_{2k} / (2k (2k-1)).
constexpr double kStirling[] = {
    1.0 / 12,           -1.0 / 360,         1.0 / 1260,
    -1.0 / 1680,        1.0 / 1188,         -691.0 / 360360,
    1.0 / 156,          -3617.0 / 122400,   43867.0 / 244188,
    -174611.0 / 125400,
};

bool near_nonpositive_integer(cxd z, double tol) {
    if (z.real() > 0.5) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol && std::abs(z.imag()) <= tol;
}

// ln Gamma for Re z >= 0.5: upward recurrence into the Stirling region.
cxd log_gamma_right(cxd z) {
    cxd shift(0.0, 0.0);
    while (std::abs(z) < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cxd zi = 1.0 / z;
    const cxd zi2 = zi * zi;
    cxd series(0.0, 0.0);
    cxd p = zi;
    for (double c : kStirling) {
        series += c * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + kHalfLn2Pi + series - shift;
}

// Branch of ln sin(pi z) continuous in the closed upper half plane
// (the e^{2 pi i z} form keeps the Log argument inside the unit disk).
cxd log_sin_pi_upper(cxd z) {
    const cxd w = std::exp(cxd(0.0, 2.0 * kPi) * z);
    return cxd(0.0, -kPi) * z + std::log(1.0 - w) - kLn2 + cxd(0.0, 0.5 * kPi);
}

} // namespace

cxd log_gamma(cxd z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error("log_gamma: non-finite argument");
    if (near_nonpositive_integer(z, 1e-14))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() < 0.5)
        return kLnPi - log_sin_pi_upper(z) - log_gamma_right(1.0 - z);
    return log_gamma_right(z);
}

double arg_gamma(cxd z) { return log_gamma(z).imag(); }

cxd recip_gamma(cxd z) {
    if (near_nonpositive_integer(z, 1e-14)) return cxd(0.0, 0.0);
    return std::exp(-log_gamma(z));
}

KummerResult kummer_m(cxd a, cxd b, cxd z) {
    if (near_nonpositive_integer(b, 1e-14))
        throw PoleError("kummer_m: b is a non-positive integer");
    KummerResult out;
    cxd term(1.0, 0.0);
    cxd sum(1.0, 0.0);
    double abs_sum = 1.0;
    const int kmax = 20000;
    int k = 0;
    for (; k < kmax; ++k) {
        term *= (a + static_cast<double>(k)) * z /
                ((b + static_cast<double>(k)) * static_cast<double>(k + 1));
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) > 1e280)
            throw AccuracyError("kummer_m: series term overflow");
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    if (k == kmax) throw AccuracyError("kummer_m: series did not converge");
    out.value = sum;
    out.terms = k + 1;
    const double mag = std::max(std::abs(sum), std::numeric_limits<double>::min());
    out.rel_error_est = (abs_sum / mag) * kEps + static_cast<double>(k) * kEps;
    out.precision_loss = out.rel_error_est > 1e-8;
    return out;
}

namespace {

// D_nu(z) and its cancellation estimate from the two-Kummer representation.
struct SeriesEval {
    cxd value;
    double est;
};

SeriesEval weber_series(cxd nu, cxd z) {
    const cxd x = 0.5 * z * z;
    const KummerResult m1 = kummer_m(-0.5 * nu, cxd(0.5, 0.0), x);
    const KummerResult m2 = kummer_m(0.5 * (1.0 - nu), cxd(1.5, 0.0), x);
    const cxd t1 = m1.value * recip_gamma(0.5 * (1.0 - nu));
    const cxd t2 = std::sqrt(2.0) * z * m2.value * recip_gamma(-0.5 * nu);
    const cxd combo = t1 - t2;
    const cxd pre = std::exp(0.5 * nu * kLn2 - 0.25 * z * z) * std::sqrt(kPi);
    const double mag = std::max(std::abs(combo), std::numeric_limits<double>::min());
    double est = (std::abs(t1) * (m1.rel_error_est + kEps) +
                  std::abs(t2) * (m2.rel_error_est + kEps)) /
                     mag +
                 (1.0 + 0.25 * std::norm(z)) * kEps;
    return {pre * combo, est};
}

// dD/dz via the recurrence D' = nu D_{nu-1} - (z/2) D_nu.
SeriesEval weber_series_deriv(cxd nu, cxd z, const SeriesEval& d_here) {
    const SeriesEval dm1 = weber_series(nu - 1.0, z);
    return {nu * dm1.value - 0.5 * z * d_here.value,
            std::max(d_here.est, dm1.est)};
}

} // namespace

WeberResult weber_d_detail(cxd nu, cxd z, WeberRoute route) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        !std::isfinite(nu.real()) || !std::isfinite(nu.imag()))
        throw Error("weber_d: non-finite argument");

    SeriesEval series{cxd(0, 0), std::numeric_limits<double>::infinity()};
    bool have_series = false;
    if (route != WeberRoute::ode) {
        try {
            series = weber_series(nu, z);
            have_series = true;
        } catch (const AccuracyError&) {
            // fall through to the ODE route
        }
        if (route == WeberRoute::series ||
            (have_series && series.est <= 1e-10 && route == WeberRoute::automatic)) {
            if (route == WeberRoute::series && (!have_series || series.est > 1e-8))
                throw AccuracyError("weber_d: series route below 1e-8");
            return {series.value, series.est, WeberRoute::series};
        }
    }

    // ODE route: start from a radius where the series is trustworthy and
    // integrate w'' = (z^2/4 - nu - 1/2) w outward along the ray through z.
    const double r_target = std::abs(z);
    const cxd dir = (r_target > 0) ? z / r_target : cxd(1.0, 0.0);
    SeriesEval ic{cxd(0, 0), std::numeric_limits<double>::infinity()};
    SeriesEval ic_deriv = ic;
    cxd z0;
    bool have_ic = false;
    for (double r0 : {4.0, 3.0, 2.0, 1.4, 1.0, 0.7, 0.5, 0.35, 0.2}) {
        if (r0 >= r_target) continue;
        z0 = r0 * dir;
        try {
            SeriesEval cand = weber_series(nu, z0);
            if (cand.est <= 3e-12) {
                SeriesEval cand_d = weber_series_deriv(nu, z0, cand);
                if (cand_d.est <= 1e-11) {
                    ic = cand;
                    ic_deriv = cand_d;
                    have_ic = true;
                    break;
                }
            }
        } catch (const AccuracyError&) {
        }
    }
    if (!have_ic) {
        if (have_series && series.est <= 1e-8)
            return {series.value, series.est, WeberRoute::series};
        throw AccuracyError("weber_d: no accurate route for these arguments");
    }

    // Exponential dominance check: off the anti-Stokes rays one solution
    // swamps the other and outward integration cannot hold the target.
    const double growth = std::abs((z * z - z0 * z0).real()) / 4.0;
    if (growth > 6.0) {
        if (have_series && series.est <= 1e-8)
            return {series.value, series.est, WeberRoute::series};
        throw AccuracyError("weber_d: ray too far from the neutral directions");
    }

    const cxd dz = z - z0;
    const double rk_tol = 1e-13;
    num::OdeStats stats;
    auto rhs = [&](double s, const num::State<2>& y) {
        const cxd zs = z0 + s * dz;
        return num::State<2>{dz * y[1], dz * (0.25 * zs * zs - nu - 0.5) * y[0]};
    };
    num::State<2> y{ic.value, ic_deriv.value};
    y = num::integrate_ode<2>(rhs, y, 0.0, 1.0, rk_tol, &stats);

    const double est = std::max(ic.est, ic_deriv.est) +
                       3e-15 * static_cast<double>(stats.steps) + 1e-12;
    if (route == WeberRoute::automatic && have_series &&
        series.est < est)
        return {series.value, series.est, WeberRoute::series};
    if (est > 1e-8)
        throw AccuracyError("weber_d: ODE route below 1e-8");
    return {y[0], est, WeberRoute::ode};
}

cxd weber_d(cxd nu, cxd z) { return weber_d_detail(nu, z).value; }

} // namespace pulsekit::specfun
