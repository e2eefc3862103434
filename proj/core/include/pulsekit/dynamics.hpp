#pragma once

// Exact two-level reference dynamics for a pulsed drive at constant detuning:
// Hamiltonians in the original and Hadamard-rotated bases, the adaptive-RK
// reference propagator, adiabatic quantities and the adiabatic propagator.

#include "pulsekit/shapes.hpp"
#include "pulsekit/su2.hpp"

namespace pulsekit {

struct DriveParams {
    PulseShape shape;
    double detuning = 0.0;  // rad/s, constant
};

// Hadamard-type rotation G = (1/sqrt 2) [[-1, 1], [1, 1]]; G^2 = 1.
Mat2c hadamard_g();

// H(t) = 1/2 [[-Delta, Omega(t)], [Omega(t), Delta]] or the rotated form
// G H G in which Omega and Delta swap roles.
Mat2c hamiltonian(const DriveParams& params, double t, bool rotated = false);

struct PropagationResult {
    Mat2c u;
    double unitarity_drift = 0.0;  // of the raw (uncorrected) integration
    bool polar_corrected = false;
    int steps = 0;
};

// Integrates i dU/dt = H(t) U over [t0, t1] with local error control at tol.
// The result is polar-corrected only if the raw drift exceeds tol.
PropagationResult propagate_exact_detail(const DriveParams& params, double t0,
                                         double t1, double tol);
Mat2c propagate_exact(const DriveParams& params, double t0, double t1,
                      double tol = 1e-10);

struct AdiabaticQuantities {
    double theta = 0.0;         // mixing angle, [0, pi/2]
    double vartheta = 0.0;      // rotated-basis mixing angle; 2*vartheta = pi/2 - 2*theta
    double lambda_split = 0.0;  // eigenfrequency splitting sqrt(Delta^2 + Omega^2)
    double eta = 0.0;           // adiabatic phase over [t_ref, t]
};

AdiabaticQuantities adiabatic_quantities(const DriveParams& params, double t,
                                         double t_ref);

// Adiabatic phase int_{t0}^{t1} sqrt(Delta^2 + Omega^2) dt.
double adiabatic_phase(const DriveParams& params, double t0, double t1);

// Eq.-level adiabatic propagator with entries built from (theta_i, theta_f, eta).
Mat2c adiabatic_propagator(double theta_i, double theta_f, double eta);

} // namespace pulsekit
