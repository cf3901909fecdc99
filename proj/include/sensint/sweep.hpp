#pragma once

#include <optional>
#include <vector>

#include "sensint/sensitivity.hpp"

namespace sensint {

struct SweepSamples {
    std::vector<double> omegas;
    std::vector<double> mags;
    std::vector<double> logs;

    std::size_t size() const noexcept { return omegas.size(); }
};

struct SweepWindow {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int points = 2000;
};

/// [1e-4, 1e3] times max(largest root modulus, 1/td).
SweepWindow default_window(const SensitivityModel& g, int points = 2000);

/// Log-spaced samples of |g(j omega)|, densified wherever ln|g| moves by
/// more than max_log_step between neighbours.
SweepSamples sweep(const SensitivityModel& g, double omega_min, double omega_max, int points,
                   double max_log_step = 0.05);
SweepSamples sweep(const SensitivityModel& g, const SweepWindow& window);

struct IndexConfig {
    /// omega_c sits this fraction below the first unit crossing; rho is the
    /// largest |g| on [omega_min, omega_c]. Zero puts omega_c on the crossing
    /// itself, where rho is 1 by definition.
    double band_guard = 0.035;
    /// Fixed omega_c shared by several loops; overrides band_guard.
    std::optional<double> band_edge;
    double crossing_rel_tol = 1e-9;
};

struct SensitivityIndices {
    double omega_cross = 0.0;  ///< first upward crossing of |g| = 1
    double omega_c = 0.0;
    double rho = 0.0;
    double s_max = 0.0;
    double omega_ms = 0.0;
    double stability_margin = 0.0;  ///< 1 / s_max
};

/// Crossing by bisection on g, peak by golden-section search around the
/// largest sample. Throws LowFrequencyAmplification if the curve starts at or
/// above 1 and NoCrossover if it never reaches 1.
SensitivityIndices extract_indices(const SensitivityModel& g, const SweepSamples& s, const IndexConfig& cfg = {});

}  // namespace sensint
