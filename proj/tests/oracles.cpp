#include "oracles.hpp"

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracles {

namespace {

// Minimal quad-precision complex type; only what the oracles need.
struct qc {
    __float128 re = 0, im = 0;

    friend qc operator+(qc a, qc b) { return {a.re + b.re, a.im + b.im}; }
    friend qc operator-(qc a, qc b) { return {a.re - b.re, a.im - b.im}; }
    friend qc operator*(qc a, qc b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend qc operator/(qc a, qc b) {
        const __float128 d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend qc operator+(qc a, __float128 s) { return {a.re + s, a.im}; }
    friend qc operator*(__float128 s, qc a) { return {s * a.re, s * a.im}; }
};

__float128 qabs(qc z) { return hypotq(z.re, z.im); }

qc qlog(qc z) { return {logq(qabs(z)), atan2q(z.im, z.re)}; }

qc qexp(qc z) {
    const __float128 m = expq(z.re);
    return {m * cosq(z.im), m * sinq(z.im)};
}

qc qpow(qc z, qc w) { return qexp(w * qlog(z)); }

qc from_cxd(cxd z) { return {static_cast<__float128>(z.real()), static_cast<__float128>(z.imag())}; }
cxd to_cxd(qc z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

constexpr int kSpougeA = 33;

// Spouge coefficients c_k = (-1)^{k-1}/(k-1)! (a-k)^{k-1/2} e^{a-k}
std::vector<__float128> spouge_coeffs() {
    std::vector<__float128> c(kSpougeA);
    c[0] = sqrtq(2.0Q * M_PIq);
    __float128 fact = 1.0Q;
    for (int k = 1; k < kSpougeA; ++k) {
        const __float128 ak = static_cast<__float128>(kSpougeA - k);
        c[k] = powq(ak, static_cast<__float128>(k) - 0.5Q) * expq(ak) / fact;
        if (k % 2 == 0) c[k] = -c[k];
        fact *= static_cast<__float128>(k);
    }
    return c;
}

qc log_gamma_spouge_q(qc z) {
    static const std::vector<__float128> c = spouge_coeffs();
    // Push Re z up by recurrence; large enough that the double-precision
    // Stirling estimate below is valid for branch unwinding.
    qc shift{0, 0};
    while (z.re < 8.0Q) {
        shift = shift + qlog(z);
        z = z + 1.0Q;
    }
    qc acc{c[0], 0};
    for (int k = 1; k < kSpougeA; ++k)
        acc = acc + qc{c[k], 0} / (z + static_cast<__float128>(k - 1));
    const qc zm1 = z + (-1.0Q);
    const qc za = zm1 + static_cast<__float128>(kSpougeA);
    const qc main = (zm1 + 0.5Q) * qlog(za) - za;
    qc log_acc = qlog(acc);
    // The principal log of the Spouge sum can wind for large |Im z|; recover
    // the continuous branch from a coarse Stirling estimate of ln Gamma.
    {
        const cxd zd = to_cxd(z);
        const cxd est = (zd - 0.5) * std::log(zd) - zd +
                        0.91893853320467274178 + 1.0 / (12.0 * zd);
        const double target = est.imag() - static_cast<double>(main.im);
        const double got = static_cast<double>(log_acc.im);
        const double k2pi = std::round((target - got) / (2.0 * M_PI));
        log_acc.im += static_cast<__float128>(k2pi) * 2.0Q * M_PIq;
    }
    return main + log_acc - shift;
}

qc kummer_quad_q(qc a, qc b, qc z) {
    qc term{1, 0}, sum{1, 0};
    for (int k = 0; k < 100000; ++k) {
        term = term * (a + static_cast<__float128>(k)) * z /
               ((b + static_cast<__float128>(k)) * qc{static_cast<__float128>(k + 1), 0});
        sum = sum + term;
        if (qabs(term) < 1e-36Q * qabs(sum) && k > 3) return sum;
    }
    throw std::runtime_error("kummer_quad: no convergence");
}

// D_nu(z) from the two-Kummer representation, all in quad precision.
qc weber_series_q(qc nu, qc z) {
    const qc x = qc{0.5Q, 0} * z * z;
    const qc m1 = kummer_quad_q(qc{-0.5Q, 0} * nu, qc{0.5Q, 0}, x);
    const qc m2 = kummer_quad_q(qc{0.5Q, 0} * (qc{1.0Q, 0} - nu), qc{1.5Q, 0}, x);
    const qc g1 = log_gamma_spouge_q(qc{0.5Q, 0} * (qc{1.0Q, 0} - nu));
    const qc half_nu = qc{-0.5Q, 0} * nu;
    qc t2{0, 0};
    // 1/Gamma(-nu/2) vanishes when -nu/2 is a non-positive integer
    const bool pole = (half_nu.im == 0 && half_nu.re <= 0 &&
                       half_nu.re == static_cast<__float128>(llroundq(half_nu.re)));
    if (!pole) {
        const qc g2 = log_gamma_spouge_q(half_nu);
        t2 = qc{sqrtq(2.0Q), 0} * z * m2 * qexp(qc{0, 0} - g2);
    }
    const qc t1 = m1 * qexp(qc{0, 0} - g1);
    const qc pre = qexp(qc{0.5Q * logq(2.0Q), 0} * nu - qc{0.25Q, 0} * z * z) *
                   qc{sqrtq(M_PIq), 0};
    return pre * (t1 - t2);
}

} // namespace

cxd log_gamma_spouge(cxd z) { return to_cxd(log_gamma_spouge_q(from_cxd(z))); }

cxd kummer_quad(cxd a, cxd b, cxd z) {
    return to_cxd(kummer_quad_q(from_cxd(a), from_cxd(b), from_cxd(z)));
}

cxd weber_rk4(cxd nu, cxd z, int steps, double r0) {
    const double r_target = std::abs(z);
    const cxd dir = (r_target > 0) ? z / r_target : cxd(1, 0);
    if (r_target <= r0) return to_cxd(weber_series_q(from_cxd(nu), from_cxd(z)));
    const cxd z0 = r0 * dir;
    const qc nu_q = from_cxd(nu);
    cxd w = to_cxd(weber_series_q(nu_q, from_cxd(z0)));
    // w' = nu D_{nu-1} - (z/2) D_nu
    const cxd d_m1 = to_cxd(weber_series_q(nu_q + qc{-1.0Q, 0}, from_cxd(z0)));
    cxd wp = nu * d_m1 - 0.5 * z0 * w;

    const double h = (r_target - r0) / steps;
    auto deriv = [&](double r, cxd w_, cxd wp_, cxd& dw, cxd& dwp) {
        const cxd zz = r * dir;
        dw = dir * wp_;
        dwp = dir * (0.25 * zz * zz - nu - 0.5) * w_;
    };
    double r = r0;
    for (int i = 0; i < steps; ++i) {
        cxd k1w, k1p, k2w, k2p, k3w, k3p, k4w, k4p;
        deriv(r, w, wp, k1w, k1p);
        deriv(r + 0.5 * h, w + 0.5 * h * k1w, wp + 0.5 * h * k1p, k2w, k2p);
        deriv(r + 0.5 * h, w + 0.5 * h * k2w, wp + 0.5 * h * k2p, k3w, k3p);
        deriv(r + h, w + h * k3w, wp + h * k3p, k4w, k4p);
        w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        wp += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        r += h;
    }
    return w;
}

namespace {

// one classic RK4 step of dU/dt = -i H(t) U for 2x2 complex U
template <class HofT>
void rk4_step(const HofT& h_of_t, double t, double dt, pulsekit::Mat2c& u) {
    using pulsekit::Mat2c;
    const cxd mi(0.0, -1.0);
    auto rhs = [&](double tt, const Mat2c& uu) {
        Mat2c h = h_of_t(tt);
        Mat2c out = h * uu;
        for (auto& e : out.m) e *= mi;
        return out;
    };
    auto axpy = [](const Mat2c& a, double s, const Mat2c& b) {
        Mat2c out = a;
        for (int i = 0; i < 4; ++i) out.m[i] += s * b.m[i];
        return out;
    };
    const Mat2c k1 = rhs(t, u);
    const Mat2c k2 = rhs(t + 0.5 * dt, axpy(u, 0.5 * dt, k1));
    const Mat2c k3 = rhs(t + 0.5 * dt, axpy(u, 0.5 * dt, k2));
    const Mat2c k4 = rhs(t + dt, axpy(u, dt, k3));
    for (int i = 0; i < 4; ++i)
        u.m[i] += (dt / 6.0) * (k1.m[i] + 2.0 * k2.m[i] + 2.0 * k3.m[i] + k4.m[i]);
}

} // namespace

pulsekit::Mat2c propagate_rk4(const pulsekit::DriveParams& params, double t0,
                              double t1, long steps) {
    pulsekit::Mat2c u = pulsekit::Mat2c::identity();
    const double dt = (t1 - t0) / static_cast<double>(steps);
    auto h_of_t = [&](double t) {
        const double om = params.shape.omega0 * params.shape.f(t);
        return pulsekit::Mat2c{{cxd(-0.5 * params.detuning), cxd(0.5 * om),
                                cxd(0.5 * om), cxd(0.5 * params.detuning)}};
    };
    double t = t0;
    for (long i = 0; i < steps; ++i) {
        rk4_step(h_of_t, t, dt, u);
        t = t0 + (t1 - t0) * static_cast<double>(i + 1) / static_cast<double>(steps);
    }
    return u;
}

pulsekit::Mat2c propagate_linear_rk4(double k, double delta, double lam, long steps) {
    pulsekit::Mat2c u = pulsekit::Mat2c::identity();
    const double dt = lam / static_cast<double>(steps);
    auto h_of_t = [&](double t) {
        return pulsekit::Mat2c{{cxd(-0.5 * delta), cxd(0.5 * k * t), cxd(0.5 * k * t),
                                cxd(0.5 * delta)}};
    };
    double t = 0.0;
    for (long i = 0; i < steps; ++i) {
        rk4_step(h_of_t, t, dt, u);
        t = lam * static_cast<double>(i + 1) / static_cast<double>(steps);
    }
    return u;
}

} // namespace oracles
