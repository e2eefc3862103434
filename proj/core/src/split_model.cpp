#include "pulsekit/split_model.hpp"

#include <cmath>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"
#include "pulsekit/specfun.hpp"

namespace pulsekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
constexpr cxd kI(0.0, 1.0);

struct SplitPieces {
    CayleyKlein ck;
    double theta_i;
    double eta_lambda;
};

SplitPieces split_pieces(const DriveParams& params, double lambda, ParamMode mode) {
    SplitPieces p;
    p.ck = lmsz_cayley_klein(lmsz_params(params, lambda, mode));
    const double om_l = evaluate(params.shape, lambda, 0);
    p.theta_i = (om_l == 0.0 && params.detuning == 0.0)
                    ? 0.25 * kPi
                    : 0.5 * std::atan2(om_l, params.detuning);
    p.eta_lambda = adiabatic_phase(params, lambda, 0.5 * params.shape.duration);
    return p;
}

} // namespace

SplitParams lmsz_params(const DriveParams& params, double lambda, ParamMode mode) {
    const double T = params.shape.duration;
    if (!(lambda >= 0.0 && lambda <= 0.5 * T))
        throw InvalidLambda("lmsz_params: lambda outside [0, T/2]");
    SplitParams sp;
    sp.lambda = lambda;
    sp.mode = mode;
    if (mode == ParamMode::slope_consistent) {
        const double k = (lambda > 0.0)
                             ? params.shape.omega0 * params.shape.f(lambda) / lambda
                             : params.shape.omega0 * initial_slope(params.shape);
        if (k <= 0.0) throw InvalidLambda("lmsz_params: nonpositive effective slope");
        sp.beta = std::sqrt(k);
        sp.alpha = sp.beta * lambda;
        sp.delta = params.detuning / (2.0 * sp.beta);
    } else {
        // literal printed form, in time normalized to T = 1
        const double om_scaled = params.shape.omega0 * T;  // Omega * T
        const double lam_scaled = lambda / T;
        const double b2 = om_scaled * params.shape.f(lambda);
        if (b2 <= 0.0) throw InvalidLambda("lmsz_params: nonpositive beta^2");
        sp.beta = std::sqrt(b2);
        sp.alpha = sp.beta * lam_scaled;
        sp.delta = params.detuning * T / (2.0 * sp.beta);
    }
    return sp;
}

CayleyKlein lmsz_cayley_klein(const SplitParams& sp) {
    using specfun::log_gamma;
    using specfun::weber_d;
    const double d2 = sp.delta * sp.delta;
    const double alpha = sp.alpha;

    if (sp.delta == 0.0) {
        // D_0 collapses both sums: pure ramp phase
        const cxd a = std::exp(cxd(0.0, -0.25 * alpha * alpha));
        return {a, cxd(0.0, 0.0)};
    }

    const double e = std::exp(-kPi * d2);
    const cxd i_half_d2(0.0, 0.5 * d2);
    const cxd two_pow = std::exp(i_half_d2 * kLn2);  // 2^{i delta^2 / 2}
    const cxd eip4 = std::exp(cxd(0.0, 0.25 * kPi));
    const cxd emip4 = std::conj(eip4);

    const cxd d_plus = weber_d(cxd(0.0, -d2), alpha * eip4);
    const cxd d_minus = weber_d(cxd(-1.0, d2), alpha * emip4);

    const cxd g1 = std::exp(log_gamma(cxd(0.5, 0.5 * d2)));   // Gamma(1/2 + i d2/2)
    const cxd g2 = std::exp(log_gamma(cxd(1.0, -0.5 * d2)));  // Gamma(1 - i d2/2)
    const cxd g3 = std::exp(log_gamma(cxd(1.0, 0.5 * d2)));   // Gamma(1 + i d2/2)
    const cxd g4 = std::exp(log_gamma(cxd(0.5, -0.5 * d2)));  // Gamma(1/2 - i d2/2)

    const cxd a = two_pow * (1.0 + e) * g1 / (2.0 * std::sqrt(kPi)) * d_plus +
                  (1.0 - e) * g2 / (two_pow * std::sqrt(2.0 * kPi)) * d_minus;
    const cxd b = emip4 * two_pow * (1.0 - e) * g3 /
                      (sp.delta * std::sqrt(2.0 * kPi)) * d_plus -
                  emip4 * (1.0 + e) * sp.delta * g4 /
                      (2.0 * two_pow * std::sqrt(kPi)) * d_minus;
    return {a, b};
}

Mat2c lmsz_propagator(const CayleyKlein& ck) {
    const double ar = ck.a.real(), ai = ck.a.imag();
    const double br = ck.b.real(), bi = ck.b.imag();
    return {{cxd(ar, -bi), cxd(br, ai), cxd(-br, ai), cxd(ar, bi)}};
}

Mat2c split_propagator(const DriveParams& params, double lambda, ParamMode mode) {
    const SplitPieces p = split_pieces(params, lambda, mode);
    const Mat2c ul = lmsz_propagator(p.ck);
    const Mat2c mid =
        adiabatic_propagator(p.theta_i, p.theta_i, 2.0 * p.eta_lambda);
    return ul.transpose() * mid * ul;
}

double split_probability(const DriveParams& params, double lambda, ParamMode mode) {
    const SplitPieces p = split_pieces(params, lambda, mode);
    const cxd a = p.ck.a, b = p.ck.b;
    const cxd a2b2 = a * a - b * b;
    const cxd abc = a * std::conj(b);
    const double c2 = std::cos(2.0 * p.theta_i);
    const double s2 = std::sin(2.0 * p.theta_i);
    const double amp = a2b2.imag() * std::cos(p.eta_lambda) +
                       (2.0 * abc.real() * c2 - a2b2.real() * s2) *
                           std::sin(p.eta_lambda);
    return amp * amp;
}

} // namespace pulsekit
