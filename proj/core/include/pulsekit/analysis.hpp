#pragma once

// Profile and landscape scanning plus feature extraction: half-width,
// satellites, wing decay exponent, power-broadening exponent and the
// delta_1/2 root of the oscillation-amplitude condition.

#include <optional>
#include <string>
#include <vector>

#include "pulsekit/dynamics.hpp"
#include "pulsekit/split_model.hpp"

namespace pulsekit {

enum class Method { exact, split, integrated };

const char* to_string(Method m);
Method method_from_string(const std::string& name);

struct ScanOptions {
    double exact_tol = 1e-10;   // propagate_exact tolerance
    double lambda = -1.0;       // split matching point; < 0 means T/4
    ParamMode mode = ParamMode::slope_consistent;
    unsigned max_threads = 0;   // 0: hardware concurrency
};

struct ProfileRow {
    double detuning = 0.0;  // rad/s
    double probability = 0.0;
};

struct Profile {
    Method method = Method::exact;
    std::vector<ProfileRow> rows;
    PulseShape shape;       // meta: drive minus the detuning
    double lambda = 0.0;    // split matching point used (0 otherwise)
};

// One probability per grid detuning (strictly increasing grid required).
Profile detuning_profile(const PulseShape& shape,
                         const std::vector<double>& detunings, Method method,
                         const ScanOptions& opts = {});

// Evaluates a single profile point with the given method.
double probability_at(const PulseShape& shape, double detuning, Method method,
                      const ScanOptions& opts = {});

struct Landscape {
    std::vector<double> omega0s;               // rad/s
    std::vector<double> detunings;             // rad/s
    std::vector<std::vector<double>> p;        // [omega index][detuning index]
    std::vector<double> ridge_omega0s;         // resonant-column maxima (areas pi, 3pi, ...)
};

Landscape landscape(const PulseShape& shape, const std::vector<double>& omega0s,
                    const std::vector<double>& detunings, Method method,
                    const ScanOptions& opts = {});

struct Satellite {
    double position = 0.0;   // rad/s (signed detuning of the local maximum)
    double magnitude = 0.0;  // probability at the refined peak
};

struct ProfileFeatures {
    std::optional<double> half_width;   // outermost |Delta| with P = 1/2
    std::vector<Satellite> satellites;  // |Delta| ascending, positive side
    std::optional<double> wing_exponent;
};

struct FeatureOptions {
    double prominence = 1e-4;      // relative to the peak value
    double main_lobe_guard = 0.0;  // exclude |Delta| below this from satellites
    bool require_satellites = true;
};

// Half-width by bisection on the linearly interpolated profile, satellites by
// prominence-filtered local maxima with parabolic refinement, wing exponent by
// log-log regression of satellite magnitudes (first satellite excluded).
// Throws FeatureNotFound when the profile never crosses 1/2 or has fewer than
// three satellites (when required).
ProfileFeatures extract_features(const Profile& profile,
                                 const FeatureOptions& opts = {});

// Log-log slope of half-width against omega0.
double broadening_exponent(const std::vector<double>& omega0s,
                           const std::vector<double>& half_widths);

// Oscillation amplitude factor at delta and the bisection root delta_1/2 of
// amplitude_factor(delta) = 1/2 (absolute tolerance 1e-8).
double delta_half_solve();

} // namespace pulsekit
