#pragma once

// Integrated LMSZ-adiabatic approximation: half-LMSZ propagator in the
// adiabatic interaction representation, the chi phases, the four equivalent
// transition-probability forms and the strong-coupling Weber asymptotics.

#include "pulsekit/dynamics.hpp"
#include "pulsekit/split_model.hpp"  // ParamMode, CayleyKlein

namespace pulsekit {

struct ChiPhases {
    double chi1 = 0.0;
    double chi2 = 0.0;
    double chi_plus = 0.0;   // chi1 + chi2
    double chi_minus = 0.0;  // chi1 - chi2
    double nu = 0.0;         // arctan(e^{pi delta^2} tan chi_minus)
};

// Exact phases via the continuous argument of Gamma. delta = 0 uses the
// analytic limits chi1 = 0, chi2 = -pi/4.
ChiPhases chi_phases(double delta);

// Small-|delta| and large-|delta| expansions, exposed for testing.
ChiPhases chi_phases_small_delta(double delta);
ChiPhases chi_phases_large_delta(double delta);

// Dimensionless detuning parameter of the integrated model.
// slope_consistent: delta = Delta / (2 sqrt(k0)), k0 = Omega0 f'(0+).
// paper_literal: delta = Delta / (2 sqrt(pi Omega(T/4))) in T-normalized time.
double delta_param(const DriveParams& params,
                   ParamMode mode = ParamMode::slope_consistent);

// Half-LMSZ propagator in the adiabatic interaction representation.
Mat2c half_lmsz_ai(double delta);

enum class ProbabilityForm { a, b, c, d };

struct IntegratedParams {
    double delta = 0.0;
    double eta = 0.0;  // adiabatic phase over [0, T/2] on the true shape
    ChiPhases chi;
    ParamMode mode = ParamMode::slope_consistent;
};

IntegratedParams integrated_params(const DriveParams& params,
                                   ParamMode mode = ParamMode::slope_consistent);

// Transition probability; the four forms agree to 1e-12.
double integrated_probability(const DriveParams& params,
                              ProbabilityForm form = ProbabilityForm::a,
                              ParamMode mode = ParamMode::slope_consistent);
double integrated_probability_forms(const IntegratedParams& ip, ProbabilityForm form);

struct AmplitudePhase {
    double amplitude = 0.0;  // sin^2 chi- + e^{-2 pi delta^2} cos^2 chi-
    double phase = 0.0;      // eta - chi+ - nu
};

AmplitudePhase integrated_amplitude_phase(const DriveParams& params,
                                          ParamMode mode = ParamMode::slope_consistent);

// Oscillation amplitude factor as a function of delta alone.
double amplitude_factor(double delta);

struct StrongAsymptotics {
    double zeta = 0.0;       // 1/2 arctan(2 delta / alpha)
    double eta_prime = 0.0;  // adiabatic phase of the linear model (scaled time)
    double xi1 = 0.0;        // chi1 - eta'/2
    double xi2 = 0.0;        // chi2 - eta'/2
    cxd q;                   // sqrt((1+e)/2) e^{i chi1}
    cxd s;                   // sqrt((1-e)/2) e^{i chi2}
    CayleyKlein reconstructed;  // (a, b) from U = R(-zeta) U_adb U_LMSZ
    bool asymptotic_domain = true;  // false when alpha^2 + delta^2 < 4
};

StrongAsymptotics strong_asymptotics(double alpha, double delta);

} // namespace pulsekit
