#include "wigdet/adiabatic.hpp"

#include "wigdet/specfun.hpp"
#include "wigdet/vacuum.hpp"

#include <cmath>

namespace wigdet {

std::string to_string(AdiabaticOrder order) {
    switch (order) {
    case AdiabaticOrder::W0: return "W0";
    case AdiabaticOrder::W12: return "W12";
    case AdiabaticOrder::W22: return "W22";
    case AdiabaticOrder::W1_sinusoidal: return "W1_sinusoidal";
    }
    return "?";
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::adiabatic: return "adiabatic";
    case Regime::averaged_thermal: return "averaged-thermal";
    case Regime::non_perturbative: return "non-perturbative";
    }
    return "?";
}

double adiabatic_W0(double a_tau, double omega) {
    if (!(a_tau > 0)) throw DomainError("adiabatic_W0 needs a_tau > 0");
    return thermal_wigner(a_tau, omega);
}

double correction_W12(double a, double addot, double omega) {
    if (!(a > 0)) throw DomainError("correction_W12 needs a > 0");
    if (addot == 0.0) return 0.0;
    const auto g = thermal_g_derivatives(two_pi * omega / a);
    const double p = pi;
    const double bracket =
        -g[0] + two_pi / a * omega * g[1] + 0.5 * p * p * g[2] - omega / (3.0 * a) * p * p * p * g[3];
    return -addot / (4.0 * pi * pi * a * a) * bracket;
}

double correction_W22(double a, double adot, double omega) {
    if (!(a > 0)) throw DomainError("correction_W22 needs a > 0");
    if (adot == 0.0) return 0.0;
    const auto g = thermal_g_derivatives(two_pi * omega / a);
    const double q = omega / (2.0 * a);
    const double bracket = -g[0] + two_pi / a * omega * g[1] + (q * q + 0.625) * pi * pi * g[2];
    return 2.0 / (3.0 * pi * pi) * adot * adot / (a * a * a) * bracket;
}

double first_order_sinusoidal(double a0, double a1, double f, double tau, double omega) {
    if (!(a0 > 0)) throw DomainError("first_order_sinusoidal needs a0 > 0");
    if (!(f > 0)) throw DomainError("first_order_sinusoidal needs f > 0");
    const double s = std::sin(two_pi * f * tau);
    const double a = a0 + a1 * s;
    if (!(a > 0)) throw DomainError("first_order_sinusoidal needs a(tau) > 0");
    if (s == 0.0 || a1 == 0.0) return 0.0;
    const double k = two_pi * f / a;
    const double r = 1.0 / (1.0 + k * k);
    const double gp = thermal_g(two_pi * (omega + pi * f) / a);
    const double gm = thermal_g(two_pi * (omega - pi * f) / a);
    const auto g0 = thermal_g_derivatives(two_pi * omega / a);
    const double bracket =
        0.5 * r * (gp + gm) - omega / (two_pi * f) * r * (gp - gm) + two_pi / a * omega * g0[1] - g0[0];
    return a1 * s / (4.0 * pi * pi) * bracket;
}

AdiabaticTerms adiabatic_terms(const AccelerationProfile& profile, double tau, double omega) {
    const double a = accel(profile, tau);
    return {adiabatic_W0(a, omega), correction_W12(a, accel_curvature(profile, tau), omega),
            correction_W22(a, accel_rate(profile, tau), omega)};
}

namespace {

// Scan step small enough not to step over a violation.
double scan_step(const AccelerationProfile& profile, double cap) {
    double step = cap / 4096.0;
    if (auto* s = std::get_if<Sinusoidal>(&profile)) {
        if (s->f > 0) step = std::min(step, 0.01 / (two_pi * s->f));
    } else if (auto* p = std::get_if<PiecewiseConstant>(&profile)) {
        for (size_t i = 1; i < p->breakpoints.size(); ++i)
            step = std::min(step, 0.25 * (p->breakpoints[i] - p->breakpoints[i - 1]));
    } else if (auto* d = std::get_if<Sampled>(&profile)) {
        for (size_t i = 1; i < d->taus.size(); ++i) step = std::min(step, 0.5 * (d->taus[i] - d->taus[i - 1]));
    }
    return std::max(step, cap * 1e-6);
}

}  // namespace

StationaryTimescale stationary_timescale(const AccelerationProfile& profile, double tau, double ratio) {
    if (!(ratio > 0 && ratio < 1)) throw InvalidInput("stationary_timescale needs ratio in (0, 1)");
    const auto [lo, hi] = natural_domain(profile);
    if (tau < lo || tau > hi) throw RangeError("stationary_timescale: tau outside the profile domain");
    const double a0 = accel(profile, tau);
    const double rate = std::abs(accel_rate(profile, tau));
    if (std::abs(a0) < 1e-12 * std::max(1.0, rate)) return {0.0, true, false};

    const double cap = std::min(1e3, std::isfinite(hi - lo) ? hi - lo : 1e3);
    const double bound = ratio * std::abs(a0);
    auto ok = [&](double u) {
        for (double t : {tau + u, tau - u})
            if (t >= lo && t <= hi && std::abs(accel(profile, t) - a0) > bound) return false;
        return true;
    };
    if (std::holds_alternative<Constant>(profile)) return {cap, false, true};

    const double step = scan_step(profile, cap);
    for (double u = step, prev = 0.0; prev < cap; prev = u, u = std::min(cap, u + step)) {
        if (ok(u)) continue;
        double good = prev, bad = u;
        for (int it = 0; it < 80 && bad - good > 1e-14 * std::max(1.0, bad); ++it) {
            const double mid = 0.5 * (good + bad);
            (ok(mid) ? good : bad) = mid;
        }
        return {good, false, false};
    }
    return {cap, false, true};
}

Regime classify_regime(double a0, double a1, double f) {
    if (!(a0 > 0)) throw DomainError("classify_regime needs a0 > 0");
    // thresholds are inclusive up to round-off, so f = 0.2 a0 / 2pi lands on the upper side
    const double cut = 0.2 * (1 - 1e-12);
    const double r1 = std::abs(a1) / a0;
    const double r2 = two_pi * std::abs(f) / a0;
    if (r1 < cut && r2 < cut) return Regime::adiabatic;
    if (r1 < cut) return Regime::averaged_thermal;
    return Regime::non_perturbative;
}

}  // namespace wigdet
