#pragma once

#include "wigdet/trajectory.hpp"

namespace wigdet {

struct GaussianSpot {
    double main;          // Phi* Phi + h.c.: chirped spots at +-omega_r
    double interference;  // Phi Phi + h.c.: ridge around omega = 0
};

// Linearized (chirped Gaussian) approximation around the reception point of wp.x0.
// Throws HorizonError when the packet centre is never received.
GaussianSpot gaussian_approx_wigner(const WavepacketSpec& wp, const Trajectory& traj, double tau, double omega);

struct StationaryPointSet {
    double tau = 0.0;
    double omega = 0.0;
    std::vector<double> points;  // offsets upsilon, ascending
    bool inside_hull = false;
};

// Uniform acceleration: cosh(a u/2) = (omega/p0) e^{a tau}.
StationaryPointSet stationary_points(double a, double p0, double tau, double omega);

// Three successive simplifications of the stationary-phase cosine, plus the
// alternative prefactor printed with the last one.
enum class StationaryPhaseForm {
    full,       // exact phase and amplitude at the two stationary points
    log_phase,  // arcosh(x) -> ln 2x, sqrt(w^2 - w(tau)^2) -> w in the phase
    final,      // ln(w/p0) dropped: phase 2(1 - ln 2) w/a - 2 w tau
    main_text,  // final phase with prefactor sqrt(8 p0^2/(a s^2)) / sqrt(w^2 - w(tau)^2)
};

std::string to_string(StationaryPhaseForm f);

// Phi* Phi + h.c. part of the packet Wigner function on the uniformly accelerated worldline.
// Outside the hull: DomainError. Within eps^2 of the hull edge (in omega^2): AiryRegimeError.
double stationary_phase_wigner(const WavepacketSpec& wp, double a, double tau, double omega,
                               StationaryPhaseForm form = StationaryPhaseForm::full);

// (a^2 p0 e^{-a tau})^{1/3} / 4 pi
double airy_curvature(double a, double p0, double tau);

}  // namespace wigdet
