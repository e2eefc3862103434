#include "pulsekit/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "pulsekit/errors.hpp"

namespace pulsekit::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << std::setprecision(15);
    return out;
}

nlohmann::json shape_json(const PulseShape& s) {
    return {{"kind", to_string(s.kind)},
            {"tau_seconds", s.tau},
            {"duration_seconds", s.duration},
            {"omega0_rad_per_s", s.omega0}};
}

} // namespace

void write_envelope_csv(const std::string& path, const PulseShape& shape,
                        int samples) {
    if (samples < 2) throw Error("write_envelope_csv: need >= 2 samples");
    auto out = open_out(path);
    out << "t_seconds,omega_rad_per_s\n";
    for (int i = 0; i < samples; ++i) {
        const double t = shape.duration * static_cast<double>(i) / (samples - 1);
        out << t << "," << evaluate(shape, t, 0) << "\n";
    }
}

void write_profile_csv(const std::string& path,
                       const std::vector<Profile>& profiles) {
    if (profiles.empty()) throw Error("write_profile_csv: no profiles");
    const std::size_t n = profiles.front().rows.size();
    for (const auto& p : profiles)
        if (p.rows.size() != n)
            throw Error("write_profile_csv: profiles on different grids");
    auto out = open_out(path);
    out << "detuning_rad_per_s";
    if (profiles.size() == 1) {
        out << ",probability";
    } else {
        for (const auto& p : profiles) out << ",probability_" << to_string(p.method);
    }
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << profiles.front().rows[i].detuning;
        for (const auto& p : profiles) out << "," << p.rows[i].probability;
        out << "\n";
    }
}

void write_profile_sidecar(const std::string& path,
                           const std::vector<Profile>& profiles) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["kind"] = "profile";
    j["shape"] = shape_json(profiles.front().shape);
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& p : profiles) {
        nlohmann::json m{{"method", to_string(p.method)}};
        if (p.method == Method::split) m["lambda_seconds"] = p.lambda;
        methods.push_back(m);
    }
    j["methods"] = methods;
    const auto& rows = profiles.front().rows;
    j["grid"] = {{"min_rad_per_s", rows.front().detuning},
                 {"max_rad_per_s", rows.back().detuning},
                 {"count", rows.size()}};
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_landscape_csv(const std::string& path, const Landscape& ls) {
    auto out = open_out(path);
    out << "omega0_rad_per_s,detuning_rad_per_s,probability\n";
    for (std::size_t i = 0; i < ls.omega0s.size(); ++i)
        for (std::size_t j = 0; j < ls.detunings.size(); ++j)
            out << ls.omega0s[i] << "," << ls.detunings[j] << "," << ls.p[i][j]
                << "\n";
}

void write_rabi_csv(const std::string& path, const std::vector<double>& omega0s,
                    const std::vector<std::string>& method_names,
                    const std::vector<std::vector<double>>& columns) {
    auto out = open_out(path);
    out << "omega0_rad_per_s";
    for (const auto& name : method_names) out << ",probability_" << name;
    out << "\n";
    for (std::size_t i = 0; i < omega0s.size(); ++i) {
        out << omega0s[i];
        for (const auto& col : columns) out << "," << col[i];
        out << "\n";
    }
}

std::string fit_result_to_json(const FitResult& r) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["kind"] = "fit_result";
    j["method"] = r.method == FitMethod::split ? "split" : "integrated";
    j["parameters"] = {{"eps1", r.model.eps1},
                       {"eps2", r.model.eps2},
                       {"resonance_offset_rad_per_s", r.model.resonance_offset},
                       {"omega0_scale", r.model.omega0_scale}};
    if (r.method == FitMethod::split)
        j["parameters"]["lambda_seconds"] = r.model.lambda;
    j["mae"] = r.mae;
    if (r.sdrf)
        j["sdrf_rad_per_s"] = *r.sdrf;
    else
        j["sdrf_rad_per_s"] = nullptr;
    j["singular_jacobian"] = r.singular_jacobian;
    j["residuals"] = r.residuals;
    j["parameter_names"] = r.parameter_names;
    j["covariance"] = r.covariance;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j.dump(2);
}

void write_fit_result_json(const std::string& path, const FitResult& result) {
    auto out = open_out(path);
    out << fit_result_to_json(result) << "\n";
}

std::string features_to_json(const ProfileFeatures& f) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["kind"] = "profile_features";
    if (f.half_width)
        j["half_width_rad_per_s"] = *f.half_width;
    else
        j["half_width_rad_per_s"] = nullptr;
    nlohmann::json sats = nlohmann::json::array();
    for (const auto& s : f.satellites)
        sats.push_back({{"position_rad_per_s", s.position},
                        {"magnitude", s.magnitude}});
    j["satellites"] = sats;
    if (f.wing_exponent)
        j["wing_exponent"] = *f.wing_exponent;
    else
        j["wing_exponent"] = nullptr;
    return j.dump(2);
}

void write_features_json(const std::string& path, const ProfileFeatures& features) {
    auto out = open_out(path);
    out << features_to_json(features) << "\n";
}

} // namespace pulsekit::io
