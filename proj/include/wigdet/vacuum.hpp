#pragma once

#include "wigdet/trajectory.hpp"

namespace wigdet {

// |w|/2pi for w < 0, zero otherwise.
double inertial_vacuum_wigner(double omega);

// (w/2pi) / (e^{2 pi w/a} - 1), a/(4 pi^2) at w = 0. Equals the excess plus the inertial part.
double thermal_wigner(double a, double omega);
// The excess itself: thermal_wigner(a, |w|), even in w.
double thermal_excess(double a, double omega);

struct VacuumJob {
    Trajectory traj;
    Eigen::VectorXd taus;
    Eigen::VectorXd omegas;
    double upsilon_max = 80.0;
    double step = 0.02;
    double taper_fraction = 0.2;  // raised cosine on the last part of [0, upsilon_max]
    int threads = 1;

    VacuumJob(Trajectory t, Eigen::VectorXd taus_, Eigen::VectorXd omegas_)
        : traj(std::move(t)), taus(std::move(taus_)), omegas(std::move(omegas_)) {}
};

// Fourier transform of the algebraic tail model m_s(u) = (1 - e^{-u^2/s^2})/u^2.
double tail_model_transform(double s, double omega);

TimeFrequencyGrid vacuum_excess_wigner(const VacuumJob& job);
// Adds the inertial part back; label "total".
TimeFrequencyGrid vacuum_total_wigner(const VacuumJob& job);
TimeFrequencyGrid page_distribution(const VacuumJob& job);

enum class JumpSide { after, before };

double discontinuity_asymptote(double a, double tau_rel, double omega, JumpSide side);

}  // namespace wigdet
