#include "pulsekit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "pulsekit/errors.hpp"
#include "pulsekit/integrated_model.hpp"
#include "pulsekit/numerics.hpp"

namespace pulsekit {

const char* to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::split: return "split";
        case Method::integrated: return "integrated";
    }
    return "?";
}

Method method_from_string(const std::string& name) {
    if (name == "exact") return Method::exact;
    if (name == "split") return Method::split;
    if (name == "integrated") return Method::integrated;
    throw UnsupportedKind("unsupported method: " + name);
}

double probability_at(const PulseShape& shape, double detuning, Method method,
                      const ScanOptions& opts) {
    DriveParams params{shape, detuning};
    switch (method) {
        case Method::exact: {
            const Mat2c u =
                propagate_exact(params, 0.0, shape.duration, opts.exact_tol);
            return std::norm(u.u12());
        }
        case Method::split: {
            const double lam = opts.lambda > 0.0 ? opts.lambda : default_lambda(shape);
            return split_probability(params, lam, opts.mode);
        }
        case Method::integrated:
            return integrated_probability(params, ProbabilityForm::a, opts.mode);
    }
    throw Error("probability_at: bad method");
}

Profile detuning_profile(const PulseShape& shape,
                         const std::vector<double>& detunings, Method method,
                         const ScanOptions& opts) {
    if (detunings.empty()) throw Error("detuning_profile: empty grid");
    for (std::size_t i = 1; i < detunings.size(); ++i)
        if (!(detunings[i] > detunings[i - 1]))
            throw Error("detuning_profile: grid must be strictly increasing");
    Profile prof;
    prof.method = method;
    prof.shape = shape;
    prof.lambda = (method == Method::split)
                      ? (opts.lambda > 0.0 ? opts.lambda : default_lambda(shape))
                      : 0.0;
    prof.rows.resize(detunings.size());
    num::parallel_for(
        detunings.size(),
        [&](std::size_t i) {
            prof.rows[i] = {detunings[i],
                            probability_at(shape, detunings[i], method, opts)};
        },
        opts.max_threads);
    return prof;
}

Landscape landscape(const PulseShape& shape, const std::vector<double>& omega0s,
                    const std::vector<double>& detunings, Method method,
                    const ScanOptions& opts) {
    if (omega0s.empty() || detunings.empty())
        throw Error("landscape: empty grid");
    Landscape ls;
    ls.omega0s = omega0s;
    ls.detunings = detunings;
    ls.p.assign(omega0s.size(), std::vector<double>(detunings.size(), 0.0));
    num::parallel_for(
        omega0s.size() * detunings.size(),
        [&](std::size_t idx) {
            const std::size_t i = idx / detunings.size();
            const std::size_t j = idx % detunings.size();
            PulseShape s = shape;
            s.omega0 = omega0s[i];
            ls.p[i][j] = probability_at(s, detunings[j], method, opts);
        },
        opts.max_threads);

    // ridge maxima along the resonant column (detuning closest to zero)
    std::size_t j0 = 0;
    for (std::size_t j = 1; j < detunings.size(); ++j)
        if (std::abs(detunings[j]) < std::abs(detunings[j0])) j0 = j;
    for (std::size_t i = 1; i + 1 < omega0s.size(); ++i) {
        if (ls.p[i][j0] > ls.p[i - 1][j0] && ls.p[i][j0] > ls.p[i + 1][j0] &&
            ls.p[i][j0] > 0.5)
            ls.ridge_omega0s.push_back(omega0s[i]);
    }
    return ls;
}

namespace {

// Linear-interpolation crossing of `level` inside [i, i+1].
double crossing_position(const std::vector<ProfileRow>& rows, std::size_t i,
                         double level) {
    const double x0 = rows[i].detuning, x1 = rows[i + 1].detuning;
    const double y0 = rows[i].probability, y1 = rows[i + 1].probability;
    const double t = (level - y0) / (y1 - y0);
    return x0 + t * (x1 - x0);
}

} // namespace

ProfileFeatures extract_features(const Profile& profile, const FeatureOptions& opts) {
    const auto& rows = profile.rows;
    if (rows.size() < 5) throw FeatureNotFound("profile has too few points");
    ProfileFeatures out;

    // half-width: outermost |detuning| where the interpolated profile crosses 1/2
    double outermost = -1.0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double y0 = rows[i].probability - 0.5;
        const double y1 = rows[i + 1].probability - 0.5;
        if (y0 == 0.0) outermost = std::max(outermost, std::abs(rows[i].detuning));
        if (y0 * y1 < 0.0) {
            const double x = crossing_position(rows, i, 0.5);
            outermost = std::max(outermost, std::abs(x));
        }
    }
    if (outermost >= 0.0) out.half_width = outermost;

    // satellites: prominence-filtered local maxima on the positive side,
    // beyond the main lobe guard, refined parabolically
    const double peak_guard = opts.main_lobe_guard;
    std::vector<Satellite> sats;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i].detuning <= peak_guard) continue;
        const double y = rows[i].probability;
        if (!(y > rows[i - 1].probability && y > rows[i + 1].probability)) continue;
        // prominence: drop to the higher of the two neighboring minima
        double left_min = y, right_min = y;
        for (std::size_t k = i; k-- > 0;) {
            left_min = std::min(left_min, rows[k].probability);
            if (rows[k].probability > y) break;
        }
        for (std::size_t k = i + 1; k < rows.size(); ++k) {
            right_min = std::min(right_min, rows[k].probability);
            if (rows[k].probability > y) break;
        }
        const double prominence = y - std::max(left_min, right_min);
        if (prominence < opts.prominence * y) continue;
        // parabolic refinement through the three points
        const double ym = rows[i - 1].probability, yp = rows[i + 1].probability;
        const double denom = ym - 2.0 * y + yp;
        double pos = rows[i].detuning, mag = y;
        if (denom < 0.0) {
            const double h = 0.5 * (rows[i + 1].detuning - rows[i - 1].detuning);
            const double dx = 0.5 * (ym - yp) / denom;
            pos += dx * h;
            mag = y - 0.25 * (ym - yp) * dx;
        }
        sats.push_back({pos, mag});
    }
    std::sort(sats.begin(), sats.end(),
              [](const Satellite& a, const Satellite& b) { return a.position < b.position; });
    out.satellites = sats;

    if (opts.require_satellites && sats.size() < 3)
        throw FeatureNotFound("profile has fewer than three satellites");
    if (!out.half_width && opts.require_satellites)
        throw FeatureNotFound("profile does not cross 1/2");

    // wing exponent: log-log regression of satellite magnitude vs position,
    // excluding the first satellite (transition region)
    if (sats.size() >= 3) {
        std::vector<double> lx, ly;
        for (std::size_t i = 1; i < sats.size(); ++i) {
            if (sats[i].magnitude <= 0.0) continue;
            lx.push_back(std::log(sats[i].position));
            ly.push_back(std::log(sats[i].magnitude));
        }
        if (lx.size() >= 2) out.wing_exponent = num::lsq_slope(lx, ly);
    }
    return out;
}

double broadening_exponent(const std::vector<double>& omega0s,
                           const std::vector<double>& half_widths) {
    if (omega0s.size() != half_widths.size() || omega0s.size() < 2)
        throw Error("broadening_exponent: need matching lists with >= 2 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < omega0s.size(); ++i) {
        lx.push_back(std::log(omega0s[i]));
        ly.push_back(std::log(half_widths[i]));
    }
    return num::lsq_slope(lx, ly);
}

double delta_half_solve() {
    return num::bisect([](double d) { return amplitude_factor(d) - 0.5; }, 0.0,
                       2.0, 1e-8);
}

} // namespace pulsekit
