#pragma once

#include "wigdet/core.hpp"

namespace wigdet {

struct RidgeCurve {
    std::vector<double> taus;
    std::vector<double> omegas;
    std::vector<double> weights;

    size_t size() const { return taus.size(); }
};

// Per-row argmax over omega > omega_min with parabolic refinement. Rows whose peak is
// below 1e-9 of the grid maximum are skipped.
RidgeCurve extract_ridge(const TimeFrequencyGrid& grid, double omega_min);

struct AccelerationSample {
    double tau;
    double a;
};

// a = -d ln(omega)/d tau by three-point differences on the (possibly non-uniform) ridge.
std::vector<AccelerationSample> recover_acceleration(const RidgeCurve& ridge);

// Gaussian smoothing over the stationary window: width tau_s(tau) in time, then
// 1/(2 tau_s) in frequency. Mass-preserving with reflected boundaries.
TimeFrequencyGrid stationary_smooth(const TimeFrequencyGrid& grid, const AccelerationProfile& profile, double ratio);

// Integral of values d tau d omega / 2 pi by the trapezoid rule.
double grid_mass(const TimeFrequencyGrid& grid);

void write_ridge_csv(const RidgeCurve& ridge, const std::string& path);

}  // namespace wigdet
