#pragma once

// Pulse-shape catalog: smooth finite-duration envelopes (sine and the
// truncated bell shapes), plus the rectangular baseline and the exponential
// (cusped) shape. Raw envelopes are centered at T/2, truncated to [0, T],
// background-subtracted and rescaled to unit peak.

#include <string>
#include <vector>

namespace pulsekit {

enum class ShapeKind {
    sine,
    lorentzian,
    lorentzian2,
    sech,
    sech2,
    gaussian,
    exponential,
    rectangular,
};

const char* to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);  // throws UnsupportedKind
std::vector<ShapeKind> shape_catalog();

struct PulseShape {
    ShapeKind kind = ShapeKind::sine;
    double tau = 1.0;       // raw width (seconds); for sine tau == duration
    double duration = 1.0;  // T (seconds)
    double omega0 = 1.0;    // peak Rabi frequency (rad/s) after rescaling
    bool processed = false;

    // processing constants: f(t) = (f0(t - T/2) - background) * norm
    double background = 0.0;
    double norm = 1.0;

    // processed envelope value/derivatives (dimension 1/s^order)
    double f(double t) const;
    double df(double t, int order) const;
};

// Builds and processes a catalog shape. Rectangular skips processing.
// Throws InvalidDuration / UnsupportedKind.
PulseShape make_shape(ShapeKind kind, double tau, double duration,
                      double omega0 = 1.0);

// Omega0 * f^(order)(t). Outside [0, T]: 0 for order 0, OutOfDomain for
// derivatives. CuspError for a derivative exactly at the exponential cusp.
double evaluate(const PulseShape& shape, double t, int deriv_order = 0);

// Pulse area in radians (adaptive quadrature, abs tol 1e-12 * Omega0 * T).
double area(const PulseShape& shape);

// Returns a copy rescaled so that area == target.
PulseShape calibrate_area(const PulseShape& shape, double target);

struct ShapeDiagnostics {
    double slope_at_start = 0.0;       // f'(0+), 1/s
    double secant_slope_quarter = 0.0; // f(T/4)/(T/4), 1/s
    double linearity_ratio = 0.0;      // mean of T |f''| / |f'| over first 10%
    std::vector<double> inflection_offsets;  // zeros of f'' in (0, T/2), seconds
    bool cusp_detected = false;
};

ShapeDiagnostics diagnose(const PulseShape& shape);

// f(lambda)/lambda (secant slope of the processed envelope, 1/s).
double secant_slope(const PulseShape& shape, double lambda);

// f'(0+) (1/s); zero for rectangular.
double initial_slope(const PulseShape& shape);

} // namespace pulsekit
