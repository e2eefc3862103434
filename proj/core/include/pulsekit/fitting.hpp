#pragma once

// Line-profile fitting with either analytic model plus the linear correction
// P_final = eps1 + eps2 (2 P - 1), and the MAE / SDRF metrics.

#include <optional>
#include <string>
#include <vector>

#include "pulsekit/analysis.hpp"
#include "pulsekit/dynamics.hpp"

namespace pulsekit {

struct DataPoint {
    double detuning = 0.0;     // rad/s
    double probability = 0.0;  // measured transition probability
};

enum class FitMethod { split, integrated };

struct FitConfig {
    FitMethod method = FitMethod::integrated;
    ParamMode mode = ParamMode::slope_consistent;
    bool fit_lambda = true;          // split only
    bool free_omega0_scale = false;  // optional global Omega0 scale factor
    int max_evals = 40000;           // per restart
    double ftol = 1e-15;
    double xtol = 1e-11;
    std::uint64_t seed = 12345;      // reserved for seeded consumers; the
                                     // restart grid itself is deterministic
};

struct FitModelParams {
    double eps1 = 0.5;
    double eps2 = 0.5;
    double resonance_offset = 0.0;  // rad/s shift of the resonance
    double lambda = 0.0;            // split matching point (seconds)
    double omega0_scale = 1.0;
};

struct FitResult {
    FitMethod method = FitMethod::integrated;
    FitModelParams model;
    double mae = 0.0;
    std::optional<double> sdrf;  // standard error of resonance_offset (rad/s)
    bool singular_jacobian = false;
    std::vector<double> residuals;
    std::vector<std::vector<double>> covariance;  // over the free parameters
    std::vector<std::string> parameter_names;
    int iterations = 0;  // total objective evaluations across restarts
    bool converged = false;
};

// P_final = eps1 + eps2 (2 p - 1), clamped to [0, 1] only at output.
double apply_correction(double p, double eps1, double eps2);
double apply_correction_flagged(double p, double eps1, double eps2, bool* clamped);

// Model probability at a detuning for the given parameters.
double fit_model_probability(const DriveParams& fixed, const FitModelParams& mp,
                             FitMethod method, ParamMode mode, double detuning);

// Least-squares fit via Nelder-Mead with 5 deterministic restarts.
// Throws InsufficientData when data count < free parameters + 2.
FitResult fit(const std::vector<DataPoint>& data, const DriveParams& fixed,
              const FitConfig& config = {});

struct Metrics {
    double mae = 0.0;
    std::optional<double> sdrf;
    bool singular_jacobian = false;
};

// MAE and the linearized standard error of the resonance offset.
Metrics metrics(const std::vector<DataPoint>& data, const DriveParams& fixed,
                const FitModelParams& mp, const FitConfig& config,
                std::vector<std::vector<double>>* covariance = nullptr);

enum class FrequencyUnit { rad_per_s, hz, mhz };
FrequencyUnit frequency_unit_from_string(const std::string& name);
double to_rad_per_s(double value, FrequencyUnit unit);

// Reads a two-column CSV (header required): detuning, probability. Rows are
// returned sorted by detuning with the unit conversion applied.
std::vector<DataPoint> ingest_csv(const std::string& path, FrequencyUnit unit);

} // namespace pulsekit
