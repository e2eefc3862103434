#include "pulsekit/dynamics.hpp"

#include <cmath>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"

namespace pulsekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr cxd kI(0.0, 1.0);
} // namespace

Mat2c polar_unitarize(const Mat2c& u) {
    // U (U^dag U)^{-1/2}; A = U^dag U is Hermitian positive definite.
    const Mat2c a = u.adjoint() * u;
    const double p = a.m[0].real();
    const double q = a.m[3].real();
    const cxd r = a.m[1];
    const double tr = p + q;
    const double det = p * q - std::norm(r);
    const double s = std::sqrt(std::max(det, 0.0));
    const double denom = std::sqrt(std::max(tr + 2.0 * s, 1e-300));
    // A^{-1/2} = (A + s I)^{-1} * (sqrt(tr + 2 s)) / ... closed 2x2 form:
    // A^{1/2} = (A + s I)/sqrt(tr + 2 s)  =>  A^{-1/2} = inv(A^{1/2})
    const Mat2c sqrt_a{{(a.m[0] + s) / denom, a.m[1] / denom, a.m[2] / denom,
                        (a.m[3] + s) / denom}};
    const cxd d = sqrt_a.det();
    const Mat2c inv_sqrt{{sqrt_a.m[3] / d, -sqrt_a.m[1] / d, -sqrt_a.m[2] / d,
                          sqrt_a.m[0] / d}};
    return u * inv_sqrt;
}

Mat2c hadamard_g() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{cxd(-s), cxd(s), cxd(s), cxd(s)}};
}

Mat2c hamiltonian(const DriveParams& params, double t, bool rotated) {
    const double omega = evaluate(params.shape, t, 0);
    const double delta = params.detuning;
    if (!rotated)
        return {{cxd(-0.5 * delta), cxd(0.5 * omega), cxd(0.5 * omega),
                 cxd(0.5 * delta)}};
    return {{cxd(-0.5 * omega), cxd(0.5 * delta), cxd(0.5 * delta),
             cxd(0.5 * omega)}};
}

PropagationResult propagate_exact_detail(const DriveParams& params, double t0,
                                         double t1, double tol) {
    const double T = params.shape.duration;
    if (!(t0 >= 0.0 && t0 <= t1 && t1 <= T))
        throw OutOfDomain("propagate_exact: need 0 <= t0 <= t1 <= T");
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw OutOfDomain("propagate_exact: tol outside [1e-13, 1e-6]");

    const double delta = params.detuning;
    auto rhs = [&](double t, const num::State<4>& y) {
        const double om = params.shape.omega0 * params.shape.f(t);
        // dU/dt = -i H U with H = 1/2 [[-delta, om], [om, delta]]
        const cxd h11 = cxd(0.0, 0.5 * delta);   // -i * (-delta/2)
        const cxd h12 = cxd(0.0, -0.5 * om);     // -i * (om/2)
        const cxd h22 = cxd(0.0, -0.5 * delta);  // -i * (delta/2)
        return num::State<4>{h11 * y[0] + h12 * y[2], h11 * y[1] + h12 * y[3],
                             h12 * y[0] + h22 * y[2], h12 * y[1] + h22 * y[3]};
    };
    num::OdeStats stats;
    num::State<4> y{cxd(1), cxd(0), cxd(0), cxd(1)};
    y = num::integrate_ode<4>(rhs, y, t0, t1, tol, &stats);

    PropagationResult out;
    out.u = Mat2c{{y[0], y[1], y[2], y[3]}};
    out.unitarity_drift = out.u.unitarity_error();
    out.steps = stats.steps;
    if (out.unitarity_drift > tol) {
        out.u = polar_unitarize(out.u);
        out.polar_corrected = true;
    }
    return out;
}

Mat2c propagate_exact(const DriveParams& params, double t0, double t1, double tol) {
    return propagate_exact_detail(params, t0, t1, tol).u;
}

double adiabatic_phase(const DriveParams& params, double t0, double t1) {
    const double om_max = params.shape.omega0;
    const double lam_max = std::hypot(params.detuning, om_max);
    const double tol = 1e-12 * std::max(lam_max * params.shape.duration, 1.0);
    return num::integrate(
        [&](double t) {
            return std::hypot(params.detuning, params.shape.omega0 * params.shape.f(t));
        },
        t0, t1, tol);
}

AdiabaticQuantities adiabatic_quantities(const DriveParams& params, double t,
                                         double t_ref) {
    AdiabaticQuantities q;
    const double om = evaluate(params.shape, t, 0);
    const double delta = params.detuning;
    q.lambda_split = std::hypot(delta, om);
    if (om == 0.0 && delta == 0.0) {
        q.theta = 0.25 * kPi;  // degenerate point; documented default
        q.vartheta = 0.25 * kPi;
    } else {
        q.theta = 0.5 * std::atan2(om, delta);     // [0, pi/2] for om >= 0
        q.vartheta = 0.5 * std::atan2(delta, om);  // pi/4 - theta
    }
    q.eta = adiabatic_phase(params, t_ref, t);
    return q;
}

Mat2c adiabatic_propagator(double theta_i, double theta_f, double eta) {
    const cxd em = std::exp(cxd(0.0, -0.5 * eta));
    const cxd ep = std::exp(cxd(0.0, 0.5 * eta));
    const cxd c = em * std::sin(theta_i) * std::sin(theta_f) +
                  ep * std::cos(theta_i) * std::cos(theta_f);
    const cxd d = em * std::cos(theta_i) * std::sin(theta_f) -
                  ep * std::sin(theta_i) * std::cos(theta_f);
    return su2_from_cayley_klein(c, d);
}

} // namespace pulsekit
