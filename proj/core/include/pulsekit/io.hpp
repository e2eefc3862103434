#pragma once

// CSV / JSON artifact writers. Column names and JSON schemas are fixed and
// carry a schema_version field.

#include <string>
#include <vector>

#include "pulsekit/analysis.hpp"
#include "pulsekit/fitting.hpp"

namespace pulsekit::io {

inline constexpr int schema_version = 1;

// columns: t_seconds, omega_rad_per_s
void write_envelope_csv(const std::string& path, const PulseShape& shape,
                        int samples);

// columns: detuning_rad_per_s, probability[_method...]
void write_profile_csv(const std::string& path,
                       const std::vector<Profile>& profiles);

// JSON sidecar describing a profile scan (shape, omega0, T, methods, grid).
void write_profile_sidecar(const std::string& path,
                           const std::vector<Profile>& profiles);

// columns: omega0_rad_per_s, detuning_rad_per_s, probability (long format)
void write_landscape_csv(const std::string& path, const Landscape& ls);

// columns: omega0_rad_per_s, probability[_method...] (amplitude scan)
void write_rabi_csv(const std::string& path, const std::vector<double>& omega0s,
                    const std::vector<std::string>& method_names,
                    const std::vector<std::vector<double>>& columns);

std::string fit_result_to_json(const FitResult& result);
void write_fit_result_json(const std::string& path, const FitResult& result);

std::string features_to_json(const ProfileFeatures& features);
void write_features_json(const std::string& path, const ProfileFeatures& features);

} // namespace pulsekit::io
