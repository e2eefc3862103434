#pragma once

// Complex special functions used by the two analytic pulse models:
// principal-branch log-Gamma, Kummer's confluent hypergeometric M and
// Weber's parabolic cylinder function D_nu(z) for complex order/argument.

#include <complex>

namespace pulsekit::specfun {

using cxd = std::complex<double>;

// Principal branch of ln Gamma(z), continuous off the cut (-inf, 0].
// Relative accuracy ~1e-13 for |z| <= 100. Throws PoleError at the poles.
cxd log_gamma(cxd z);

// Imaginary part of log_gamma (the continuous argument of Gamma).
double arg_gamma(cxd z);

// 1/Gamma(z); zero at the poles of Gamma.
cxd recip_gamma(cxd z);

struct KummerResult {
    cxd value;
    double rel_error_est = 0.0;   // cancellation + roundoff estimate
    bool precision_loss = false;  // est > 1e-8
    int terms = 0;
};

// M(a,b,z) by direct series, summed until |term| < 1e-17 |partial sum|.
// Throws PoleError for b a non-positive integer.
KummerResult kummer_m(cxd a, cxd b, cxd z);

enum class WeberRoute { automatic, series, ode };

struct WeberResult {
    cxd value;
    double rel_error_est = 0.0;
    WeberRoute route = WeberRoute::series;
};

// Weber's parabolic cylinder function D_nu(z). The two-Kummer series
// representation is used while its cancellation estimate supports 1e-10;
// otherwise the Weber ODE w'' + (nu + 1/2 - z^2/4) w = 0 is integrated
// outward along the ray through z, starting from the series-valid region.
// Throws AccuracyError when no route reaches 1e-8.
WeberResult weber_d_detail(cxd nu, cxd z, WeberRoute route = WeberRoute::automatic);
cxd weber_d(cxd nu, cxd z);

} // namespace pulsekit::specfun
