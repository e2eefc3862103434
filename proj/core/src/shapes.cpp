#include "pulsekit/shapes.hpp"

#include <algorithm>
#include <cmath>

#include "pulsekit/errors.hpp"
#include "pulsekit/numerics.hpp"

namespace pulsekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Raw (unprocessed) envelopes f0(x) centered at x = 0, width tau.
// Returns value or closed-form derivative of the requested order.
double raw_envelope(ShapeKind kind, double x, double tau, int order) {
    const double u = x / tau;
    switch (kind) {
        case ShapeKind::sine: {
            // f0(x) = cos(pi x / tau); the half-period sine in disguise
            const double w = kPi / tau;
            switch (order) {
                case 0: return std::cos(w * x);
                case 1: return -w * std::sin(w * x);
                default: return -w * w * std::cos(w * x);
            }
        }
        case ShapeKind::lorentzian: {
            const double d = 1.0 + u * u;
            switch (order) {
                case 0: return 1.0 / d;
                case 1: return -2.0 * u / (tau * d * d);
                default: return 2.0 * (3.0 * u * u - 1.0) / (tau * tau * d * d * d);
            }
        }
        case ShapeKind::lorentzian2: {
            const double d = 1.0 + u * u;
            switch (order) {
                case 0: return 1.0 / (d * d);
                case 1: return -4.0 * u / (tau * d * d * d);
                default: return 4.0 * (5.0 * u * u - 1.0) / (tau * tau * d * d * d * d);
            }
        }
        case ShapeKind::sech: {
            const double s = 1.0 / std::cosh(u);
            const double th = std::tanh(u);
            switch (order) {
                case 0: return s;
                case 1: return -s * th / tau;
                default: return s * (th * th - s * s) / (tau * tau);
            }
        }
        case ShapeKind::sech2: {
            const double s = 1.0 / std::cosh(u);
            const double th = std::tanh(u);
            switch (order) {
                case 0: return s * s;
                case 1: return -2.0 * s * s * th / tau;
                default: return 2.0 * s * s * (2.0 * th * th - s * s) / (tau * tau);
            }
        }
        case ShapeKind::gaussian: {
            const double g = std::exp(-u * u);
            switch (order) {
                case 0: return g;
                case 1: return -2.0 * u * g / tau;
                default: return (4.0 * u * u - 2.0) * g / (tau * tau);
            }
        }
        case ShapeKind::exponential: {
            const double g = std::exp(-std::abs(u));
            const double sgn = (u > 0) - (u < 0);
            switch (order) {
                case 0: return g;
                case 1: return -sgn * g / tau;  // one-sided away from the cusp
                default: return g / (tau * tau);
            }
        }
        case ShapeKind::rectangular:
            return order == 0 ? 1.0 : 0.0;
    }
    throw UnsupportedKind("unknown shape kind");
}

} // namespace

const char* to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::sine: return "sine";
        case ShapeKind::lorentzian: return "lorentzian";
        case ShapeKind::lorentzian2: return "lorentzian2";
        case ShapeKind::sech: return "sech";
        case ShapeKind::sech2: return "sech2";
        case ShapeKind::gaussian: return "gaussian";
        case ShapeKind::exponential: return "exponential";
        case ShapeKind::rectangular: return "rectangular";
    }
    return "?";
}

ShapeKind shape_kind_from_string(const std::string& name) {
    for (ShapeKind k : shape_catalog())
        if (name == to_string(k)) return k;
    throw UnsupportedKind("unsupported shape kind: " + name);
}

std::vector<ShapeKind> shape_catalog() {
    return {ShapeKind::sine,     ShapeKind::lorentzian, ShapeKind::lorentzian2,
            ShapeKind::sech,     ShapeKind::sech2,      ShapeKind::gaussian,
            ShapeKind::exponential, ShapeKind::rectangular};
}

double PulseShape::f(double t) const {
    if (kind == ShapeKind::rectangular)
        return (t >= 0.0 && t <= duration) ? 1.0 : 0.0;
    if (t < 0.0 || t > duration) return 0.0;
    return (raw_envelope(kind, t - 0.5 * duration, tau, 0) - background) * norm;
}

double PulseShape::df(double t, int order) const {
    if (order == 0) return f(t);
    if (kind == ShapeKind::rectangular) return 0.0;
    return raw_envelope(kind, t - 0.5 * duration, tau, order) * norm;
}

PulseShape make_shape(ShapeKind kind, double tau, double duration, double omega0) {
    if (duration <= 0.0) throw InvalidDuration("duration must be positive");
    if (tau <= 0.0) throw InvalidDuration("tau must be positive");
    PulseShape s;
    s.kind = kind;
    s.duration = duration;
    s.tau = (kind == ShapeKind::sine) ? duration : tau;  // sine: half period == T
    s.omega0 = omega0;
    if (kind == ShapeKind::rectangular) {
        s.background = 0.0;
        s.norm = 1.0;
        s.processed = true;
        return s;
    }
    s.background = raw_envelope(kind, 0.5 * duration, s.tau, 0);
    const double peak = raw_envelope(kind, 0.0, s.tau, 0);
    s.norm = 1.0 / (peak - s.background);
    s.processed = true;
    return s;
}

double evaluate(const PulseShape& shape, double t, int deriv_order) {
    if (deriv_order < 0 || deriv_order > 2)
        throw OutOfDomain("deriv_order must be 0, 1 or 2");
    if (deriv_order == 0) return shape.omega0 * shape.f(t);
    if (t < 0.0 || t > shape.duration)
        throw OutOfDomain("derivative query outside [0, T]");
    if (shape.kind == ShapeKind::exponential && t == 0.5 * shape.duration)
        throw CuspError("derivative at the exponential cusp is one-sided");
    return shape.omega0 * shape.df(t, deriv_order);
}

double area(const PulseShape& shape) {
    if (shape.kind == ShapeKind::rectangular)
        return shape.omega0 * shape.duration;
    const double tol = 1e-12 * std::max(shape.omega0, 1.0) * shape.duration;
    return num::integrate([&](double t) { return shape.omega0 * shape.f(t); }, 0.0,
                          shape.duration, tol);
}

PulseShape calibrate_area(const PulseShape& shape, double target) {
    PulseShape out = shape;
    const double a = area(shape);
    if (a <= 0.0) throw Error("calibrate_area: zero-area shape");
    out.omega0 = shape.omega0 * target / a;
    return out;
}

double secant_slope(const PulseShape& shape, double lambda) {
    if (lambda <= 0.0 || lambda > 0.5 * shape.duration)
        throw InvalidLambda("secant_slope: lambda outside (0, T/2]");
    return shape.f(lambda) / lambda;
}

double initial_slope(const PulseShape& shape) {
    if (shape.kind == ShapeKind::rectangular) return 0.0;
    return shape.df(0.0, 1);
}

ShapeDiagnostics diagnose(const PulseShape& shape) {
    ShapeDiagnostics d;
    const double T = shape.duration;
    d.slope_at_start = initial_slope(shape);
    d.secant_slope_quarter = shape.f(0.25 * T) / (0.25 * T);
    d.cusp_detected = shape.kind == ShapeKind::exponential;

    // linearity metric: T |f''| / |f'| averaged over the first 10% of T
    const int samples = 64;
    double acc = 0.0;
    int used = 0;
    for (int i = 1; i <= samples; ++i) {
        const double t = 0.1 * T * static_cast<double>(i) / samples;
        const double d1 = shape.df(t, 1);
        const double d2 = shape.df(t, 2);
        if (std::abs(d1) < 1e-300) continue;
        acc += T * std::abs(d2) / std::abs(d1);
        ++used;
    }
    d.linearity_ratio = used ? acc / used : 0.0;

    // zeros of f'' in (0, T/2)
    if (shape.kind != ShapeKind::rectangular) {
        const int n = 512;
        const double t_lo = T * 1e-9;
        const double t_hi =
            (shape.kind == ShapeKind::exponential) ? 0.5 * T * (1.0 - 1e-9) : 0.5 * T;
        double prev_t = t_lo;
        double prev = shape.df(prev_t, 2);
        for (int i = 1; i <= n; ++i) {
            const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / n;
            const double cur = shape.df(t, 2);
            if (prev == 0.0) {
                d.inflection_offsets.push_back(prev_t);
            } else if (prev * cur < 0.0) {
                d.inflection_offsets.push_back(num::bisect(
                    [&](double x) { return shape.df(x, 2); }, prev_t, t, 1e-14 * T));
            }
            prev_t = t;
            prev = cur;
        }
    }
    return d;
}

} // namespace pulsekit
