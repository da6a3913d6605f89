#pragma once

#include "wigdet/core.hpp"

namespace wigdet {

enum class AdiabaticOrder { W0, W12, W22, W1_sinusoidal };

std::string to_string(AdiabaticOrder order);

// Thermal at the instantaneous acceleration.
double adiabatic_W0(double a_tau, double omega);
// Second-derivative term, proportional to a''/a^2.
double correction_W12(double a, double addot, double omega);
// Squared-rate term, proportional to a'^2/a^3.
double correction_W22(double a, double adot, double omega);

// Full first functional order in a1 for a = a0 + a1 sin(2 pi f tau). g+- use a_tau.
double first_order_sinusoidal(double a0, double a1, double f, double tau, double omega);

struct AdiabaticTerms {
    double w0, w12, w22;
};
// Terms evaluated from the profile's local a, a', a'' at tau.
AdiabaticTerms adiabatic_terms(const AccelerationProfile& profile, double tau, double omega);

struct StationaryTimescale {
    double value = 0.0;
    bool degenerate = false;  // a(tau) = 0
    bool capped = false;      // criterion never violated inside the cap
};

StationaryTimescale stationary_timescale(const AccelerationProfile& profile, double tau, double ratio);

enum class Regime { adiabatic, averaged_thermal, non_perturbative };

std::string to_string(Regime r);
Regime classify_regime(double a0, double a1, double f);

}  // namespace wigdet
