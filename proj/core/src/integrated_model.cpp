#include "pulsekit/integrated_model.hpp"

#include <cmath>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"
#include "pulsekit/specfun.hpp"

namespace pulsekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

double nu_phase(double delta, double chi_minus) {
    // arctan(e^{pi delta^2} tan chi_minus) without overflowing the exponential
    const double t = std::tan(chi_minus);
    if (t == 0.0) return 0.0;
    const double log_arg = kPi * delta * delta + std::log(std::abs(t));
    if (log_arg > 600.0) return t > 0.0 ? 0.5 * kPi : -0.5 * kPi;
    const double v = std::exp(log_arg);
    return std::atan(t > 0.0 ? v : -v);
}
} // namespace

ChiPhases chi_phases(double delta) {
    ChiPhases c;
    const double d2 = delta * delta;
    if (d2 == 0.0) {
        c.chi1 = 0.0;
        c.chi2 = -0.25 * kPi;
    } else {
        const double common = 0.5 * d2 - 0.5 * d2 * std::log(0.5 * d2);
        c.chi1 = common + specfun::arg_gamma(cxd(0.5, 0.5 * d2));
        c.chi2 = common + specfun::arg_gamma(cxd(0.0, 0.5 * d2)) + 0.25 * kPi;
    }
    c.chi_plus = c.chi1 + c.chi2;
    c.chi_minus = c.chi1 - c.chi2;
    c.nu = nu_phase(delta, c.chi_minus);
    return c;
}

ChiPhases chi_phases_small_delta(double delta) {
    ChiPhases c;
    const double d2 = delta * delta;
    c.chi1 = 0.5 * d2 * (1.0 - kEulerGamma - std::log(2.0 * d2));
    c.chi2 = 0.5 * d2 * (1.0 - kEulerGamma - std::log(0.5 * d2)) - 0.25 * kPi;
    c.chi_plus = d2 * (1.0 - kEulerGamma - std::log(d2)) - 0.25 * kPi;
    c.chi_minus = 0.25 * kPi - d2 * std::log(2.0);
    c.nu = nu_phase(delta, c.chi_minus);
    return c;
}

ChiPhases chi_phases_large_delta(double delta) {
    ChiPhases c;
    const double d2 = delta * delta;
    c.chi1 = 1.0 / (12.0 * d2);
    c.chi2 = -1.0 / (6.0 * d2);
    c.chi_plus = -1.0 / (12.0 * d2);
    c.chi_minus = 1.0 / (4.0 * d2);
    c.nu = nu_phase(delta, c.chi_minus);
    return c;
}

double delta_param(const DriveParams& params, ParamMode mode) {
    const PulseShape& s = params.shape;
    if (s.kind == ShapeKind::rectangular)
        throw UnsupportedKind("delta_param: rectangular pulse has no linear ramp");
    if (mode == ParamMode::slope_consistent) {
        const double k0 = s.omega0 * initial_slope(s);
        if (k0 <= 0.0) throw CuspError("delta_param: f'(0+) not positive");
        return params.detuning / (2.0 * std::sqrt(k0));
    }
    const double om_quarter = s.omega0 * s.duration * s.f(0.25 * s.duration);
    if (om_quarter <= 0.0) throw CuspError("delta_param: Omega(T/4) not positive");
    return params.detuning * s.duration / (2.0 * std::sqrt(kPi * om_quarter));
}

Mat2c half_lmsz_ai(double delta) {
    const ChiPhases c = chi_phases(delta);
    const double e = std::exp(-kPi * delta * delta);
    const double qp = std::sqrt(0.5 * (1.0 + e));
    const double qm = std::sqrt(0.5 * (1.0 - e));
    const cxd q = qp * std::exp(cxd(0.0, c.chi1));
    const cxd s = qm * std::exp(cxd(0.0, c.chi2));
    return su2_from_cayley_klein(q, s);
}

IntegratedParams integrated_params(const DriveParams& params, ParamMode mode) {
    IntegratedParams ip;
    ip.mode = mode;
    ip.delta = delta_param(params, mode);
    ip.chi = chi_phases(ip.delta);
    ip.eta = adiabatic_phase(params, 0.0, 0.5 * params.shape.duration);
    return ip;
}

double integrated_probability_forms(const IntegratedParams& ip, ProbabilityForm form) {
    const double e = std::exp(-kPi * ip.delta * ip.delta);
    const double eta = ip.eta;
    const ChiPhases& c = ip.chi;
    switch (form) {
        case ProbabilityForm::a: {
            const double v = 0.5 * (1.0 + e) * std::sin(eta - 2.0 * c.chi1) -
                             0.5 * (1.0 - e) * std::sin(eta - 2.0 * c.chi2);
            return v * v;
        }
        case ProbabilityForm::b: {
            const double v = std::sin(eta - 2.0 * c.chi1) -
                             (1.0 - e) * std::cos(c.chi_minus) *
                                 std::sin(eta - c.chi_plus);
            return v * v;
        }
        case ProbabilityForm::c: {
            const double v = std::sin(c.chi_minus) * std::cos(eta - c.chi_plus) -
                             e * std::cos(c.chi_minus) * std::sin(eta - c.chi_plus);
            return v * v;
        }
        case ProbabilityForm::d: {
            const double amp = amplitude_factor(ip.delta);
            const double s = std::sin(eta - c.chi_plus - c.nu);
            return amp * s * s;
        }
    }
    throw Error("integrated_probability_forms: bad form");
}

double integrated_probability(const DriveParams& params, ProbabilityForm form,
                              ParamMode mode) {
    return integrated_probability_forms(integrated_params(params, mode), form);
}

AmplitudePhase integrated_amplitude_phase(const DriveParams& params, ParamMode mode) {
    const IntegratedParams ip = integrated_params(params, mode);
    return {amplitude_factor(ip.delta), ip.eta - ip.chi.chi_plus - ip.chi.nu};
}

double amplitude_factor(double delta) {
    const ChiPhases c = chi_phases(delta);
    const double sm = std::sin(c.chi_minus);
    const double cm = std::cos(c.chi_minus);
    return sm * sm + std::exp(-2.0 * kPi * delta * delta) * cm * cm;
}

StrongAsymptotics strong_asymptotics(double alpha, double delta) {
    StrongAsymptotics sa;
    const double d2 = delta * delta;
    sa.asymptotic_domain = (alpha * alpha + d2) >= 4.0;
    sa.zeta = (alpha == 0.0) ? (delta == 0.0 ? 0.0 : 0.25 * kPi)
                             : 0.5 * std::atan(2.0 * delta / alpha);
    const double root = std::sqrt(alpha * alpha + 4.0 * d2);
    sa.eta_prime = 0.5 * alpha * root;
    if (d2 > 0.0)
        sa.eta_prime += 2.0 * d2 * std::log(0.5 * (root + alpha)) - d2 * std::log(d2);
    const ChiPhases c = chi_phases(delta);
    sa.xi1 = c.chi1 - 0.5 * sa.eta_prime;
    sa.xi2 = c.chi2 - 0.5 * sa.eta_prime;
    const double e = std::exp(-kPi * d2);
    const double qp = std::sqrt(0.5 * (1.0 + e));
    const double qm = std::sqrt(0.5 * (1.0 - e));
    sa.q = qp * std::exp(cxd(0.0, c.chi1));
    sa.s = qm * std::exp(cxd(0.0, c.chi2));
    const double cz = std::cos(sa.zeta), sz = std::sin(sa.zeta);
    sa.reconstructed.a = std::exp(cxd(0.0, sa.xi1)) * qp * cz +
                         std::exp(cxd(0.0, -sa.xi2)) * qm * sz;
    sa.reconstructed.b = std::exp(cxd(0.0, sa.xi2)) * qm * cz -
                         std::exp(cxd(0.0, -sa.xi1)) * qp * sz;
    return sa;
}

} // namespace pulsekit
