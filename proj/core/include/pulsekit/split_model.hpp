#pragma once

// Split LMSZ-adiabatic approximation: a rotated half-crossing LMSZ segment on
// [0, lambda] expressed through Weber functions, a merged adiabatic segment on
// [lambda, T - lambda], and the mirrored LMSZ segment on [T - lambda, T].

#include "pulsekit/dynamics.hpp"

namespace pulsekit {

enum class ParamMode {
    slope_consistent,  // effective slope k = Omega0 f(lambda)/lambda (default)
    paper_literal,     // beta = sqrt(Omega0 f(lambda)) in T-normalized time
};

struct SplitParams {
    double lambda = 0.0;  // matching point (seconds)
    double alpha = 0.0;   // dimensionless ramp length
    double beta = 0.0;    // sqrt of the effective slope
    double delta = 0.0;   // Delta / (2 beta)
    ParamMode mode = ParamMode::slope_consistent;
};

struct CayleyKlein {
    cxd a;
    cxd b;
};

// LMSZ parameters at matching point lambda in [0, T/2]; lambda = 0 uses the
// initial-slope limit. Throws InvalidLambda outside the range.
SplitParams lmsz_params(const DriveParams& params, double lambda,
                        ParamMode mode = ParamMode::slope_consistent);

// Cayley-Klein pair of the half-crossing rot-LMSZ propagator.
CayleyKlein lmsz_cayley_klein(const SplitParams& sp);

// Original-basis LMSZ propagator built from (a, b).
Mat2c lmsz_propagator(const CayleyKlein& ck);

// Full-pulse propagator U = U_LMSZ^T U_adb(theta_i, theta_i, 2 eta) U_LMSZ.
Mat2c split_propagator(const DriveParams& params, double lambda,
                       ParamMode mode = ParamMode::slope_consistent);

// Closed-form |U12|^2 of the composed propagator (equal to it to 1e-12).
double split_probability(const DriveParams& params, double lambda,
                         ParamMode mode = ParamMode::slope_consistent);

// Default matching point when none is fitted.
inline double default_lambda(const PulseShape& shape) { return 0.25 * shape.duration; }

} // namespace pulsekit
