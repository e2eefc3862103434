#pragma once

// Small self-contained numerical kernels shared across the library:
// adaptive Gauss-Kronrod quadrature, an embedded Dormand-Prince RK5(4)
// integrator for complex state vectors, root bracketing/bisection,
// Nelder-Mead, least-squares slopes and an index-chunked parallel_for.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "pulsekit/errors.hpp"

namespace pulsekit::num {

using cxd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (G7,K15) quadrature with absolute error control.
// ---------------------------------------------------------------------------

namespace detail {
// K15 nodes on [0,1] half-interval (positive abscissae) and weights; the
// even-indexed nodes carry the embedded G7 rule.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> k15_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk_nodes[i];
        const double f1 = f(c - dx);
        const double f2 = (i == 7) ? f1 : f(c + dx);
        const double fsum = (i == 7) ? f1 : f1 + f2;
        resk += k15_weights[i] * fsum;
        if (i % 2 == 1) resg += g7_weights[i / 2] * fsum;
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}
} // namespace detail

// Integrate f over [a,b] to absolute tolerance abs_tol.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol,
                 int max_intervals = 2000) {
    if (a == b) return 0.0;
    struct Seg { double a, b, val, err; };
    double val, err;
    detail::gk15(f, a, b, val, err);
    std::vector<Seg> segs{{a, b, val, err}};
    double total_err = err;
    double total_val = val;
    while (total_err > abs_tol && static_cast<int>(segs.size()) < max_intervals) {
        // split the segment with the largest error
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        Seg l{s.a, m, 0, 0}, r{m, s.b, 0, 0};
        detail::gk15(f, l.a, l.b, l.val, l.err);
        detail::gk15(f, r.a, r.b, r.val, r.err);
        total_val += l.val + r.val - s.val;
        total_err += l.err + r.err - s.err;
        segs[worst] = l;
        segs.push_back(r);
    }
    return total_val;
}

// ---------------------------------------------------------------------------
// Embedded Dormand-Prince RK5(4) for fixed-size complex state vectors.
// ---------------------------------------------------------------------------

template <std::size_t N>
using State = std::array<cxd, N>;

template <std::size_t N>
inline double state_norm(const State<N>& s) {
    double m = 0.0;
    for (const auto& v : s) m = std::max(m, std::abs(v));
    return m;
}

struct OdeStats {
    int steps = 0;
    int rejected = 0;
};

// Integrates dy/dt = f(t, y) from t0 to t1 with mixed abs/rel local error
// control at `tol`. Throws StepFailure if the step size underflows.
template <std::size_t N, class F>
State<N> integrate_ode(const F& f, State<N> y, double t0, double t1, double tol,
                       OdeStats* stats = nullptr) {
    if (t1 == t0) return y;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    double t = t0;
    double h = dir * std::min(span, std::max(1e-8 * span, 0.01 * span));
    const double hmin = span * 1e-15;

    State<N> k1 = f(t, y);
    auto axpy = [](State<N> base, double hh, std::initializer_list<std::pair<double, const State<N>*>> terms) {
        for (auto& [w, k] : terms)
            for (std::size_t i = 0; i < N; ++i) base[i] += hh * w * (*k)[i];
        return base;
    };

    int guard = 0;
    while (dir * (t1 - t) > 0) {
        if (++guard > 10'000'000) throw StepFailure("ODE step limit exceeded");
        if (dir * (t + h - t1) > 0) h = t1 - t;
        const State<N> k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
        const State<N> k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        State<N> y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State<N> k7 = f(t + h, y5);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const cxd e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
            const double scale = std::max(1.0, std::max(std::abs(y[i]), std::abs(y5[i])));
            err = std::max(err, std::abs(e) / scale);
        }
        if (err <= tol) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            if (stats) ++stats->steps;
        } else if (stats) {
            ++stats->rejected;
        }
        const double fac = (err > 0.0)
                               ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0)
                               : 5.0;
        h *= fac;
        if (std::abs(h) < hmin && dir * (t1 - t) > 0)
            throw StepFailure("ODE step size underflow");
    }
    return y;
}

// ---------------------------------------------------------------------------
// Scalar root finding / extremum refinement
// ---------------------------------------------------------------------------

// Bisection for f(a)*f(b) < 0; returns midpoint once |b-a| <= xtol.
template <class F>
double bisect(const F& f, double a, double b, double xtol, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw Error("bisect: root not bracketed");
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section maximization on [a,b].
template <class F>
double golden_max(const F& f, double a, double b, double xtol) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex minimization (deterministic).
// ---------------------------------------------------------------------------

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    int evaluations = 0;
    bool converged = false;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0,
                                    std::vector<double> step,
                                    double ftol = 1e-14, double xtol = 1e-11,
                                    int max_evals = 20000) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++evals;
    }
    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fv[idx[i]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    order();
    bool converged = false;
    while (evals < max_evals) {
        double spread_f = std::abs(fv[n] - fv[0]);
        double spread_x = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            spread_x = std::max(spread_x, std::abs(simplex[n][i] - simplex[0][i]));
        if (spread_f <= ftol * (1.0 + std::abs(fv[0])) && spread_x <= xtol) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);
        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (simplex[n][j] - centroid[j]);
            return p;
        };
        std::vector<double> xr = blend(-1.0);
        double fr = f(xr);
        ++evals;
        if (fr < fv[0]) {
            std::vector<double> xe = blend(-2.0);
            double fe = f(xe);
            ++evals;
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            const bool outside = fr < fv[n];
            std::vector<double> xc = blend(outside ? -0.5 : 0.5);
            double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    fv[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
        order();
    }
    return {simplex[0], fv[0], evals, converged};
}

// ---------------------------------------------------------------------------
// Least squares slope of y against x (for log-log regressions).
// ---------------------------------------------------------------------------

inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw Error("lsq_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0.0) throw Error("lsq_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / d;
}

// ---------------------------------------------------------------------------
// Deterministic index-chunked parallel for.
// ---------------------------------------------------------------------------

template <class F>
void parallel_for(std::size_t n, const F& body, unsigned max_threads = 0) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads) hw = std::min(hw, max_threads);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace pulsekit::num
