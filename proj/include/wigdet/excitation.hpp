#pragma once

#include "wigdet/trajectory.hpp"

namespace wigdet {

// Gaussian packet amplitude on the worldline, with u = t - x taken from the trajectory.
cdouble packet_value(const WavepacketSpec& wp, const Trajectory& traj, double tau);
// sup |packet_value| = (p0 / sqrt(2 pi sigma_x^2))^{1/2}
double packet_peak(const WavepacketSpec& wp);

// Delta G between the two proper times: real, symmetric, with the h.c. terms included.
cdouble excess_correlation(const FieldState& state, const Trajectory& traj, double tau1, double tau2);

// Main (Phi* Phi) and interference (Phi Phi) parts separately; their sum is excess_correlation.
struct CorrelationParts {
    double main = 0.0;
    double interference = 0.0;
};
CorrelationParts correlation_parts(const FieldState& state, const Trajectory& traj, double tau1, double tau2);

struct ExcitationJob {
    FieldState state;
    Trajectory traj;
    Eigen::VectorXd taus;
    Eigen::VectorXd omegas;
    // Unset: taken from the packet support (Gaussian states). Required for plane waves.
    std::optional<double> upsilon_max;
    std::optional<double> step;
    double taper_fraction = 0.2;
    int threads = 1;

    ExcitationJob(FieldState s, Trajectory t, Eigen::VectorXd taus_, Eigen::VectorXd omegas_)
        : state(std::move(s)), traj(std::move(t)), taus(std::move(taus_)), omegas(std::move(omegas_)) {}
};

struct ExcitationGrids {
    TimeFrequencyGrid total;
    TimeFrequencyGrid main;
    TimeFrequencyGrid interference;
};

ExcitationGrids excess_wigner_parts(const ExcitationJob& job);
TimeFrequencyGrid excess_wigner(const ExcitationJob& job);

// Closed form for a Gaussian packet on an inertial worldline of rapidity eta:
// spots at +-D p0 with D = e^{-eta}, plus the omega = 0 ridge for coherent states.
CorrelationParts gaussian_inertial_wigner(const WavepacketSpec& wp, double rapidity, double tau, double omega,
                                          Statistics stats, int n = 1);

// Bessel closed forms for plane waves on the uniformly accelerated worldline.
TimeFrequencyGrid monochromatic_accel_wigner(const FieldState& state, double a, const Eigen::VectorXd& taus,
                                             const Eigen::VectorXd& omegas, int threads = 1);

// 4 sinh(a dtau / 4) / a
double twin_delay(double a, double delta_tau_r);

}  // namespace wigdet
