#include "wigdet/excitation.hpp"

#include "wigdet/parallel.hpp"
#include "wigdet/quadrature.hpp"
#include "wigdet/specfun.hpp"

#include <cmath>

namespace wigdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// psi is the single-mode amplitude on the worldline; Delta G = mult (psi1* psi2 + cc)
// plus (psi1 psi2 + cc) when the state is coherent.
struct Amplitude {
    cdouble psi;
    double mult;
    bool coherent;
};

Amplitude amplitude(const FieldState& state, const Trajectory& traj, double tau) {
    return std::visit(
        overloaded{
            [](const Vacuum&) { return Amplitude{0.0, 0.0, false}; },
            [&](const GaussianCoherent& s) { return Amplitude{packet_value(s.wp, traj, tau), 1.0, true}; },
            [&](const GaussianFock& s) { return Amplitude{packet_value(s.wp, traj, tau), double(s.n), false}; },
            [&](const Superposition& s) {
                cdouble psi = 0.0;
                for (const auto& t : s.terms) psi += t.amplitude * packet_value(t.wp, traj, tau);
                return Amplitude{psi, 1.0, s.statistics == Statistics::coherent};
            },
            [&](const MonochromaticCoherent& s) {
                return Amplitude{s.alpha * std::exp(cdouble(0.0, -s.p * traj.light_cone(tau))), 1.0, true};
            },
            [&](const MonochromaticFock& s) {
                return Amplitude{std::exp(cdouble(0.0, -s.p * traj.light_cone(tau))), double(s.n), false};
            },
        },
        state);
}

CorrelationParts combine(const Amplitude& x, const Amplitude& y) {
    CorrelationParts c;
    c.main = x.mult * 2.0 * (std::conj(x.psi) * y.psi).real();
    if (x.coherent) c.interference = 2.0 * (x.psi * y.psi).real();
    return c;
}

std::vector<WavepacketSpec> packets(const FieldState& state) {
    std::vector<WavepacketSpec> out;
    if (auto* s = std::get_if<GaussianCoherent>(&state)) out.push_back(s->wp);
    if (auto* s = std::get_if<GaussianFock>(&state)) out.push_back(s->wp);
    if (auto* s = std::get_if<Superposition>(&state))
        for (const auto& t : s->terms) out.push_back(t.wp);
    return out;
}

struct Support {
    double lo, hi;
    double d_max;
    bool horizon = false;
};

// Proper-time interval outside which every packet envelope is below e^{-27}.
Support packet_support(const std::vector<WavepacketSpec>& wps, const Trajectory& traj, const Eigen::VectorXd& taus) {
    const double g_lo = taus.minCoeff(), g_hi = taus.maxCoeff();
    const double span = std::max(1.0, g_hi - g_lo);
    Support s{INFINITY, -INFINITY, 0.0};
    for (const auto& wp : wps) {
        const double w = 10.5 * wp.sigma_x;
        auto t0 = traj.reception_time(wp.x0 + w);
        auto t1 = traj.reception_time(wp.x0 - w);
        s.lo = std::min(s.lo, t0 ? *t0 : std::max(traj.tau_min(), g_lo - span));
        if (!t1) s.horizon = true;
        s.hi = std::max(s.hi, t1 ? *t1 : std::min(traj.tau_max(), g_hi + span));
    }
    s.lo = std::max(s.lo, traj.tau_min());
    s.hi = std::min(s.hi, traj.tau_max());
    for (int k = 0; k <= 400; ++k) {
        const double t = s.lo + (s.hi - s.lo) * k / 400.0;
        s.d_max = std::max(s.d_max, std::exp(-traj.rapidity(t)));
    }
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

double packet_peak(const WavepacketSpec& wp) {
    return std::sqrt(wp.p0 / std::sqrt(two_pi * wp.sigma_x * wp.sigma_x));
}

cdouble packet_value(const WavepacketSpec& wp, const Trajectory& traj, double tau) {
    const double X = traj.light_cone(tau) + wp.x0;
    const double s = wp.sigma_x;
    return packet_peak(wp) * std::exp(-X * X / (4.0 * s * s)) * std::exp(cdouble(0.0, -wp.p0 * X));
}

CorrelationParts correlation_parts(const FieldState& state, const Trajectory& traj, double tau1, double tau2) {
    return combine(amplitude(state, traj, tau1), amplitude(state, traj, tau2));
}

cdouble excess_correlation(const FieldState& state, const Trajectory& traj, double tau1, double tau2) {
    const auto c = correlation_parts(state, traj, tau1, tau2);
    return c.main + c.interference;
}

ExcitationGrids excess_wigner_parts(const ExcitationJob& job) {
    validate(job.state);
    if (!(job.taper_fraction > 0 && job.taper_fraction <= 1))
        throw InvalidInput("taper fraction must lie in (0, 1]");
    ExcitationGrids out;
    out.main = TimeFrequencyGrid(job.taus, job.omegas);
    check_grid(out.main);
    out.interference = out.main;
    std::vector<std::string> warnings;

    const auto wps = packets(job.state);
    const bool plane = std::holds_alternative<MonochromaticCoherent>(job.state) ||
                       std::holds_alternative<MonochromaticFock>(job.state);
    if (plane && (!job.upsilon_max || !job.step))
        throw InvalidInput("plane-wave states need an explicit upsilon_max and step");
    for (const auto& wp : wps)
        if (wp.narrowband_warning()) warnings.push_back("packet is not narrow-band: p0 < 5 sigma_p");

    const double w_max = job.omegas.cwiseAbs().maxCoeff();
    double h = job.step.value_or(0.0);
    std::optional<Support> sup;
    if (!wps.empty()) {
        sup = packet_support(wps, job.traj, job.taus);
        if (sup->horizon) warnings.push_back("part of the packet never reaches the detector (horizon)");
        if (!job.step) {
            double p_max = 0.0, s_min = INFINITY;
            for (const auto& wp : wps) p_max = std::max(p_max, wp.p0), s_min = std::min(s_min, wp.sigma_x);
            h = pi / (4.0 * std::max(w_max, sup->d_max * (p_max + 12.0 / s_min)));
        }
    }
    if (!(h > 0)) throw InvalidInput("upsilon step must be positive");

    const long n_tau = out.main.n_tau();
    const int nw = int(out.main.n_omega());
    const double w0 = job.omegas[0], dw = out.main.d_omega();
    std::vector<double> used(n_tau, 0.0);
    std::vector<char> truncated(n_tau, 0), clipped(n_tau, 0);

    parallel_rows(n_tau, job.threads, [&](long i) {
        const double tau = job.taus[i];
        double U = INFINITY;
        if (sup) {
            const double need = 2.0 * std::min(tau - sup->lo, sup->hi - tau);
            if (need <= 0) return;
            U = need;
        }
        if (job.upsilon_max) {
            if (*job.upsilon_max < U && sup) truncated[i] = 1;
            U = std::min(U, *job.upsilon_max);
        }
        const double room = 2.0 * std::min(tau - job.traj.tau_min(), job.traj.tau_max() - tau);
        if (room < U) {
            U = room;
            clipped[i] = 1;
        }
        const int n = int(std::floor(U / h)) + 1;
        if (n < 3) return;
        U = (n - 1) * h;
        used[i] = U;

        std::vector<cdouble> sm(n), si(n);
        for (int j = 0; j < n; ++j) {
            const double u = j * h;
            const double w = raised_cosine(u, U, job.taper_fraction);
            const auto c = correlation_parts(job.state, job.traj, tau - 0.5 * u, tau + 0.5 * u);
            sm[j] = w * c.main;
            si[j] = w * c.interference;
        }
        auto Tm = chirp_transform(sm, h, w0, dw, nw);
        auto Ti = chirp_transform(si, h, w0, dw, nw);
        for (int k = 0; k < nw; ++k) {
            out.main.values(i, k) = h * (2.0 * Tm[k].real() - sm[0].real());
            out.interference.values(i, k) = h * (2.0 * Ti[k].real() - si[0].real());
        }
    });

    if (std::count(truncated.begin(), truncated.end(), 1))
        warnings.push_back("upsilon_max shorter than the packet support: correlation truncated");
    if (std::count(clipped.begin(), clipped.end(), 1))
        warnings.push_back("trajectory domain shorter than the requested upsilon window");

    out.total = out.main;
    out.total.values += out.interference.values;
    auto label = [&](TimeFrequencyGrid& g, const std::string& part) {
        g.meta.trajectory = job.traj.describe();
        g.meta.state = describe(job.state);
        g.meta.component = Component::excitation_excess;
        g.meta.regularization = "excess over the vacuum; no subtraction needed";
        g.meta.warnings = warnings;
        g.meta.notes["part"] = part;
        g.meta.notes["step"] = fmt(h);
        g.meta.notes["upsilon_max"] = fmt(*std::max_element(used.begin(), used.end()));
    };
    label(out.main, "main");
    label(out.interference, "interference");
    label(out.total, "total");
    return out;
}

TimeFrequencyGrid excess_wigner(const ExcitationJob& job) { return excess_wigner_parts(job).total; }

CorrelationParts gaussian_inertial_wigner(const WavepacketSpec& wp, double rapidity, double tau, double omega,
                                          Statistics stats, int n) {
    validate(wp);
    const double D = std::exp(-rapidity);
    const double s = wp.sigma_x;
    const double X = D * tau + wp.x0;
    const double pref = 2.0 * wp.p0 / D * std::exp(-X * X / (2.0 * s * s));
    const double c = 2.0 * s * s / (D * D);
    const double dp = omega - wp.p0 * D, dm = omega + wp.p0 * D;
    CorrelationParts out;
    out.main = (stats == Statistics::fock ? n : 1) * pref * (std::exp(-c * dp * dp) + std::exp(-c * dm * dm));
    if (stats == Statistics::coherent) out.interference = 2.0 * pref * std::exp(-c * omega * omega) * std::cos(2.0 * wp.p0 * X);
    return out;
}

TimeFrequencyGrid monochromatic_accel_wigner(const FieldState& state, double a, const Eigen::VectorXd& taus,
                                             const Eigen::VectorXd& omegas, int threads) {
    if (!(a > 0)) throw DomainError("monochromatic_accel_wigner needs a > 0");
    validate(state);
    cdouble alpha = 0.0;
    double p = 0.0, nf = 0.0;
    if (auto* s = std::get_if<MonochromaticCoherent>(&state)) {
        alpha = s->alpha, p = s->p, nf = std::norm(s->alpha);
    } else if (auto* s = std::get_if<MonochromaticFock>(&state)) {
        p = s->p, nf = s->n;
    } else {
        throw InvalidInput("monochromatic_accel_wigner needs a plane-wave state");
    }
    TimeFrequencyGrid grid(taus, omegas);
    check_grid(grid);
    const cdouble phase = alpha * alpha * std::exp(cdouble(0.0, -2.0 * p / a));
    parallel_rows(grid.n_tau(), threads, [&](long i) {
        const double f = 2.0 * p / a * std::exp(-a * taus[i]);
        for (Eigen::Index k = 0; k < grid.n_omega(); ++k) {
            const double mu = 2.0 * omegas[k] / a;
            // 2 cosh(mu pi/2) K_{i mu}(f)
            const double fock = (1.0 + std::exp(-pi * std::abs(mu))) * bessel_K_imag_order_scaled(mu, f);
            double w = nf * 4.0 / a * fock;
            if (alpha != 0.0)
                w += 2.0 * (phase * (4.0 / a) * bessel_K_imag_order_imag_arg(mu, f, ArgSign::plus, 1e-9)).real();
            grid.values(i, k) = w;
        }
    });
    grid.meta.trajectory = describe(AccelerationProfile(Constant{a}));
    grid.meta.state = describe(state);
    grid.meta.component = Component::excitation_excess;
    grid.meta.regularization = "excess over the vacuum; Bessel closed form";
    check_grid(grid);
    return grid;
}

double twin_delay(double a, double delta_tau_r) {
    if (!(a > 0)) throw DomainError("twin_delay needs a > 0");
    return 4.0 * std::sinh(0.25 * a * delta_tau_r) / a;
}

}  // namespace wigdet
