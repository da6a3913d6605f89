#include "wigdet/approx.hpp"

#include <cmath>

namespace wigdet {

GaussianSpot gaussian_approx_wigner(const WavepacketSpec& wp, const Trajectory& traj, double tau, double omega) {
    validate(wp);
    const auto tr = traj.reception_time(wp.x0);
    if (!tr) throw HorizonError("packet centre never reaches the detector");
    const double D = std::exp(-traj.rapidity(*tr));
    const double ar = traj.a(*tr);
    const double wr = wp.p0 * D;
    const double s2 = wp.sigma_x * wp.sigma_x;
    const double t = tau - *tr;
    const double env = std::exp(-D * D * t * t / (2.0 * s2));

    auto spot = [&](double w) {
        const double d = w - wr * (1.0 - ar * t);
        return 2.0 * wp.p0 / D * env * std::exp(-2.0 * s2 / (D * D) * d * d);
    };
    GaussianSpot out;
    out.main = spot(omega) + spot(-omega);

    const cdouble I(0.0, 1.0);
    const cdouble B = D * D / (8.0 * s2) - I * ar * wr / 4.0;
    const cdouble pref = 2.0 * wp.p0 / std::sqrt(cdouble(D * D, -2.0 * ar * wr * s2));
    const cdouble z = I * (ar * wr * t * t - 2.0 * wr * t) - omega * omega / (4.0 * B);
    out.interference = 2.0 * (pref * env * std::exp(z)).real();
    return out;
}

StationaryPointSet stationary_points(double a, double p0, double tau, double omega) {
    if (!(a > 0) || !(p0 > 0)) throw DomainError("stationary_points needs a > 0 and p0 > 0");
    StationaryPointSet s{tau, omega, {}, false};
    const double arg = omega / p0 * std::exp(a * tau);
    if (!(arg >= 1.0)) return s;
    s.inside_hull = true;
    const double u = 2.0 / a * std::acosh(arg);
    if (u == 0.0) s.points = {0.0};
    else s.points = {-u, u};
    return s;
}

std::string to_string(StationaryPhaseForm f) {
    switch (f) {
    case StationaryPhaseForm::full: return "full";
    case StationaryPhaseForm::log_phase: return "log";
    case StationaryPhaseForm::final: return "final";
    case StationaryPhaseForm::main_text: return "main-text";
    }
    return "?";
}

double airy_curvature(double a, double p0, double tau) {
    if (!(a > 0) || !(p0 > 0)) throw DomainError("airy_curvature needs a > 0 and p0 > 0");
    return std::cbrt(a * a * p0 * std::exp(-a * tau)) / (4.0 * pi);
}

double stationary_phase_wigner(const WavepacketSpec& wp, double a, double tau, double omega,
                               StationaryPhaseForm form) {
    validate(wp);
    if (!(a > 0)) throw DomainError("stationary_phase_wigner needs a > 0");
    const double p0 = wp.p0, s = wp.sigma_x;
    const double wt = p0 * std::exp(-a * tau);
    if (!(omega > wt)) throw DomainError("outside the hull of the instantaneous frequency curve");
    const double d2 = (omega - wt) * (omega + wt);
    const double eps = airy_curvature(a, p0, tau);
    if (d2 <= eps * eps) throw AiryRegimeError("too close to the instantaneous frequency curve");

    const double wr = p0 * (1.0 + a * wp.x0);
    const double q = a * p0 * s;
    const double env = std::exp(-((omega - wr) * (omega - wr) + d2) / (2.0 * q * q));
    const double root = std::sqrt(d2);
    double amp = 2.0 * p0 / s * std::sqrt(2.0 / (a * root));
    double phase = 0.0;
    switch (form) {
    case StationaryPhaseForm::full:
        phase = 2.0 / a * root - 2.0 * omega / a * std::acosh(omega / wt);
        break;
    case StationaryPhaseForm::log_phase:
        phase = 2.0 * omega / a * (1.0 - std::log(2.0 * omega / wt));
        break;
    case StationaryPhaseForm::main_text:
        amp = std::sqrt(8.0 * p0 * p0 / (a * s * s)) / root;
        [[fallthrough]];
    case StationaryPhaseForm::final:
        phase = 2.0 * (1.0 - std::log(2.0)) * omega / a - 2.0 * omega * tau;
        break;
    }
    return amp * env * std::cos(phase + 0.25 * pi);
}

}  // namespace wigdet
