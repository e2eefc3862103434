#include "pulsekit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pulsekit/errors.hpp"
#include "pulsekit/integrated_model.hpp"
#include "pulsekit/numerics.hpp"
#include "pulsekit/split_model.hpp"

namespace pulsekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double apply_correction(double p, double eps1, double eps2) {
    bool clamped = false;
    return apply_correction_flagged(p, eps1, eps2, &clamped);
}

double apply_correction_flagged(double p, double eps1, double eps2, bool* clamped) {
    const double v = eps1 + eps2 * (2.0 * p - 1.0);
    if (clamped) *clamped = (v < 0.0 || v > 1.0);
    return std::clamp(v, 0.0, 1.0);
}

double fit_model_probability(const DriveParams& fixed, const FitModelParams& mp,
                             FitMethod method, ParamMode mode, double detuning) {
    DriveParams p = fixed;
    p.shape.omega0 = fixed.shape.omega0 * mp.omega0_scale;
    p.detuning = detuning - mp.resonance_offset;
    const double raw =
        (method == FitMethod::split)
            ? split_probability(p, mp.lambda, mode)
            : integrated_probability(p, ProbabilityForm::a, mode);
    return mp.eps1 + mp.eps2 * (2.0 * raw - 1.0);
}

namespace {

struct ParamLayout {
    bool has_lambda = false;
    bool has_scale = false;
    int count() const { return 3 + (has_lambda ? 1 : 0) + (has_scale ? 1 : 0); }
};

FitModelParams unpack(const std::vector<double>& x, const ParamLayout& lay,
                      double lambda_fixed) {
    FitModelParams mp;
    mp.eps1 = x[0];
    mp.eps2 = x[1];
    mp.resonance_offset = x[2];
    int i = 3;
    mp.lambda = lay.has_lambda ? x[i++] : lambda_fixed;
    mp.omega0_scale = lay.has_scale ? x[i++] : 1.0;
    return mp;
}

std::vector<std::string> parameter_names(const ParamLayout& lay) {
    std::vector<std::string> names{"eps1", "eps2", "resonance_offset"};
    if (lay.has_lambda) names.push_back("lambda");
    if (lay.has_scale) names.push_back("omega0_scale");
    return names;
}

} // namespace

FitResult fit(const std::vector<DataPoint>& data, const DriveParams& fixed,
              const FitConfig& config) {
    ParamLayout lay;
    lay.has_lambda = (config.method == FitMethod::split) && config.fit_lambda;
    lay.has_scale = config.free_omega0_scale;
    const int nfree = lay.count();
    if (static_cast<int>(data.size()) < nfree + 2)
        throw InsufficientData("fit: need at least " + std::to_string(nfree + 2) +
                               " data points");

    const double T = fixed.shape.duration;
    const double lambda_default = default_lambda(fixed.shape);
    double dscale = 0.0;
    for (const auto& d : data) dscale = std::max(dscale, std::abs(d.detuning));
    if (dscale == 0.0) dscale = 1.0;

    auto objective = [&](const std::vector<double>& x) {
        FitModelParams mp = unpack(x, lay, lambda_default);
        // soft box constraints keep Nelder-Mead inside the physical region
        double penalty = 0.0;
        auto pen = [&](double v, double lo, double hi) {
            if (v < lo) penalty += 1e3 * (lo - v) * (lo - v);
            if (v > hi) penalty += 1e3 * (v - hi) * (v - hi);
            return std::clamp(v, lo, hi);
        };
        mp.eps1 = pen(mp.eps1, 0.0, 1.0);
        mp.eps2 = pen(mp.eps2, 0.0, 1.0);
        mp.resonance_offset = pen(mp.resonance_offset, -0.5 * dscale, 0.5 * dscale);
        if (lay.has_lambda) mp.lambda = pen(mp.lambda, 1e-3 * T, 0.5 * T);
        if (lay.has_scale) mp.omega0_scale = pen(mp.omega0_scale, 0.5, 2.0);
        double ss = 0.0;
        for (const auto& d : data) {
            const double r = fit_model_probability(fixed, mp, config.method,
                                                   config.mode, d.detuning) -
                             d.probability;
            ss += r * r;
        }
        return ss / static_cast<double>(data.size()) + penalty;
    };

    double mean = 0.0;
    for (const auto& d : data) mean += d.probability;
    mean /= static_cast<double>(data.size());

    // deterministic restart grid; the first entry is the identity-correction
    // start and the last is the null (constant) model
    std::vector<std::vector<double>> starts = {
        {0.5, 0.5, 0.0},
        {0.1, 0.8, 0.02 * dscale},
        {0.05, 0.45, -0.02 * dscale},
        {0.3, 0.6, 0.0},
        {std::clamp(mean, 0.0, 1.0), 0.0, 0.0},
    };
    const std::vector<double> lambda_starts = {0.25 * T, 0.125 * T, 0.375 * T,
                                               0.3 * T, 0.2 * T};
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (lay.has_lambda) starts[i].push_back(lambda_starts[i]);
        if (lay.has_scale) starts[i].push_back(1.0);
    }

    num::NelderMeadResult best;
    best.fmin = std::numeric_limits<double>::infinity();
    int total_evals = 0;
    bool any_converged = false;
    for (const auto& s : starts) {
        std::vector<double> step = {0.1, 0.1, 0.05 * dscale};
        if (lay.has_lambda) step.push_back(0.08 * T);
        if (lay.has_scale) step.push_back(0.1);
        auto r = num::nelder_mead(objective, s, step, config.ftol, config.xtol,
                                  config.max_evals);
        total_evals += r.evaluations;
        any_converged = any_converged || r.converged;
        if (r.fmin < best.fmin) best = r;
    }

    FitResult out;
    out.method = config.method;
    out.model = unpack(best.x, lay, lambda_default);
    out.model.eps1 = std::clamp(out.model.eps1, 0.0, 1.0);
    out.model.eps2 = std::clamp(out.model.eps2, 0.0, 1.0);
    if (lay.has_lambda)
        out.model.lambda = std::clamp(out.model.lambda, 1e-3 * T, 0.5 * T);
    else if (config.method == FitMethod::split)
        out.model.lambda = lambda_default;
    out.iterations = total_evals;
    out.converged = any_converged;
    out.parameter_names = parameter_names(lay);

    out.residuals.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        out.residuals[i] = fit_model_probability(fixed, out.model, config.method,
                                                 config.mode, data[i].detuning) -
                           data[i].probability;
    const Metrics m = metrics(data, fixed, out.model, config, &out.covariance);
    out.mae = m.mae;
    out.sdrf = m.sdrf;
    out.singular_jacobian = m.singular_jacobian;
    return out;
}

Metrics metrics(const std::vector<DataPoint>& data, const DriveParams& fixed,
                const FitModelParams& mp, const FitConfig& config,
                std::vector<std::vector<double>>* covariance) {
    Metrics out;
    const std::size_t n = data.size();
    ParamLayout lay;
    lay.has_lambda = (config.method == FitMethod::split) && config.fit_lambda;
    lay.has_scale = config.free_omega0_scale;
    const int p = lay.count();

    double ss = 0.0, sa = 0.0;
    for (const auto& d : data) {
        const double r = fit_model_probability(fixed, mp, config.method, config.mode,
                                               d.detuning) -
                         d.probability;
        ss += r * r;
        sa += std::abs(r);
    }
    out.mae = sa / static_cast<double>(n);
    if (static_cast<int>(n) <= p) {
        out.singular_jacobian = true;
        return out;
    }

    // J by central differences, step = 1e-6 of each parameter's scale
    const double T = fixed.shape.duration;
    double dscale = 0.0;
    for (const auto& d : data) dscale = std::max(dscale, std::abs(d.detuning));
    if (dscale == 0.0) dscale = 1.0;
    std::vector<double> x = {mp.eps1, mp.eps2, mp.resonance_offset};
    std::vector<double> scale = {1.0, 1.0, dscale};
    if (lay.has_lambda) {
        x.push_back(mp.lambda);
        scale.push_back(T);
    }
    if (lay.has_scale) {
        x.push_back(mp.omega0_scale);
        scale.push_back(1.0);
    }
    auto model_at = [&](const std::vector<double>& xv, double det) {
        return fit_model_probability(fixed, unpack(xv, lay, mp.lambda),
                                     config.method, config.mode, det);
    };
    std::vector<std::vector<double>> jt(p, std::vector<double>(n));
    for (int j = 0; j < p; ++j) {
        const double h = 1e-6 * scale[j];
        std::vector<double> xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        for (std::size_t i = 0; i < n; ++i)
            jt[j][i] = (model_at(xp, data[i].detuning) -
                        model_at(xm, data[i].detuning)) /
                       (2.0 * h);
    }
    // JtJ and its inverse by Gauss-Jordan
    std::vector<std::vector<double>> a(p, std::vector<double>(2 * p, 0.0));
    for (int r = 0; r < p; ++r) {
        for (int c = 0; c < p; ++c)
            for (std::size_t i = 0; i < n; ++i) a[r][c] += jt[r][i] * jt[c][i];
        a[r][p + r] = 1.0;
    }
    for (int col = 0; col < p; ++col) {
        int piv = col;
        for (int r = col + 1; r < p; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) {
            out.singular_jacobian = true;
            return out;
        }
        std::swap(a[piv], a[col]);
        const double d = a[col][col];
        for (int c = 0; c < 2 * p; ++c) a[col][c] /= d;
        for (int r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (int c = 0; c < 2 * p; ++c) a[r][c] -= f * a[col][c];
        }
    }
    const double sigma2 = ss / static_cast<double>(n - p);
    if (covariance) {
        covariance->assign(p, std::vector<double>(p));
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) (*covariance)[r][c] = sigma2 * a[r][p + c];
    }
    const double var_offset = sigma2 * a[2][p + 2];  // resonance_offset is index 2
    if (var_offset >= 0.0) out.sdrf = std::sqrt(var_offset);
    return out;
}

FrequencyUnit frequency_unit_from_string(const std::string& name) {
    if (name == "rad_per_s" || name == "rad/s") return FrequencyUnit::rad_per_s;
    if (name == "hz") return FrequencyUnit::hz;
    if (name == "mhz") return FrequencyUnit::mhz;
    throw UnsupportedKind("unsupported frequency unit: " + name);
}

double to_rad_per_s(double value, FrequencyUnit unit) {
    switch (unit) {
        case FrequencyUnit::rad_per_s: return value;
        case FrequencyUnit::hz: return value * 2.0 * kPi;
        case FrequencyUnit::mhz: return value * 2.0 * kPi * 1e6;
    }
    return value;
}

std::vector<DataPoint> ingest_csv(const std::string& path, FrequencyUnit unit) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    // header: count columns
    {
        std::stringstream hs(line);
        std::string cell;
        int cols = 0;
        while (std::getline(hs, cell, ',')) ++cols;
        if (cols < 2)
            throw MissingColumn(path + ": need detuning and probability columns");
    }
    std::vector<DataPoint> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string c0, c1;
        if (!std::getline(ls, c0, ',') || !std::getline(ls, c1, ','))
            throw MissingColumn(path + ":" + std::to_string(lineno) +
                                ": expected two columns");
        try {
            std::size_t p0 = 0, p1 = 0;
            const double det = std::stod(c0, &p0);
            const double prob = std::stod(c1, &p1);
            rows.push_back({to_rad_per_s(det, unit), prob});
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": cannot parse numeric value");
        }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const DataPoint& a, const DataPoint& b) {
                         return a.detuning < b.detuning;
                     });
    return rows;
}

} // namespace pulsekit
