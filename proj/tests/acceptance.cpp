// One PASS/FAIL line per acceptance criterion. Exit status 1 if any criterion fails.
#include "wigdet/adiabatic.hpp"
#include "wigdet/analysis.hpp"
#include "wigdet/excitation.hpp"
#include "wigdet/specfun.hpp"
#include "wigdet/vacuum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace wigdet;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

Eigen::VectorXd one(double tau) { return Eigen::VectorXd::Constant(1, tau); }

Verdict thermal_law() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = vacuum_excess_wigner(VacuumJob(Trajectory(Constant{1.0}), one(0.0), uniform_axis(-4.0, 4.0, 64)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < g.n_omega(); ++k) {
        const double ref = thermal_excess(1.0, g.omegas[k]);
        worst = std::max(worst, std::abs(g.values(0, k) - ref) / ref);
    }
    return {worst < 1e-3 && secs < 10, "sup rel err " + num(worst) + " (< 1e-3), " + num(secs) + " s (< 10)"};
}

double power_rel(const AccelerationProfile& p, double tau, double amax) {
    VacuumJob job(Trajectory(p), one(tau), uniform_axis(-10 * amax, 10 * amax, 2001));
    job.upsilon_max = 80.0 / amax;
    job.step = 0.02 / amax;
    const double a = accel(p, tau);
    return std::abs(integrate_power(vacuum_excess_wigner(job), tau).value / (a * a / (48 * pi * pi)) - 1);
}

Verdict power_identity() {
    const double c = power_rel(Constant{1.0}, 0.0, 1.0);
    const double f = 0.05 / two_pi;
    const AccelerationProfile s = Sinusoidal{1.0, 0.1, f};
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) worst = std::max(worst, power_rel(s, i / (8 * f), 1.1));
    return {c < 1e-3 && worst < 2e-2, "constant " + num(c) + " (< 1e-3), sinusoidal worst of 8 " + num(worst) + " (< 2e-2)"};
}

Verdict adiabatic_hierarchy() {
    const auto t0 = std::chrono::steady_clock::now();
    const double f = 0.01 / two_pi;
    const AccelerationProfile s = Sinusoidal{1.0, 0.01, f};
    const auto taus = uniform_axis(0.0, 1.0 / f, 16), om = uniform_axis(0.0, 2.0, 41);
    const auto g = vacuum_excess_wigner(VacuumJob(Trajectory(s), taus, om));
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (Eigen::Index i = 0; i < taus.size(); ++i)
        for (Eigen::Index k = 0; k < om.size(); ++k) {
            const auto t = adiabatic_terms(s, taus[i], om[k]);
            const double d = g.values(i, k) - thermal_excess(accel(s, taus[i]), om[k]);
            r0 = std::max(r0, std::abs(d));
            r1 = std::max(r1, std::abs(d - t.w12));
            r2 = std::max(r2, std::abs(d - t.w12 - t.w22));
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {r0 > 10 * r1 && r1 > 10 * r2 && secs < 120,
            "residuals " + num(r0) + " > 10x " + num(r1) + " > 10x " + num(r2) + ", " + num(secs) + " s (< 120)"};
}

Verdict first_order_limits() {
    const double a0 = 1.0, a1 = 1e-6, f = 1e-3 / two_pi, tau = 0.2 / f;
    const AccelerationProfile s = Sinusoidal{a0, a1, f};
    double wmax = 0.0, slow = 0.0;
    for (double w = 0.0; w <= 3.0; w += 0.05) wmax = std::max(wmax, std::abs(adiabatic_terms(s, tau, w).w12));
    for (double w = 0.0; w <= 3.0; w += 0.05) {
        const double w12 = adiabatic_terms(s, tau, w).w12;
        if (std::abs(w12) < 1e-3 * wmax) continue;
        slow = std::max(slow, std::abs(first_order_sinusoidal(a0, a1, f, tau, w) / w12 - 1));
    }
    const double b1 = 0.1, ff = 20.0, tf = 0.25 / ff, w = 0.5, a = a0 + b1;
    const auto g0 = thermal_g_derivatives(two_pi * w / a);
    const double ref = b1 / (4 * pi * pi) * (two_pi / a * w * g0[1] - g0[0]);
    const double fast = std::abs(first_order_sinusoidal(a0, b1, ff, tf, w) / ref - 1);
    return {slow < 1e-2 && fast < 5e-2, "slow drive " + num(slow) + " (< 1e-2), f = 20 a0 " + num(fast) + " (< 5e-2)"};
}

Verdict discontinuity() {
    const AccelerationProfile p = PiecewiseConstant{{0.0, 4.0}, {0.0, 1.0, 0.0}};
    const double tau = 1.0;
    VacuumJob job(Trajectory(p), one(tau), uniform_axis(7.5, 14.5, 2201));
    job.step = 0.01;
    const auto g = vacuum_excess_wigner(job);
    std::vector<double> q(g.n_omega());
    for (Eigen::Index k = 0; k < g.n_omega(); ++k) {
        const double w = g.omegas[k];
        const double amp = discontinuity_asymptote(1.0, tau, w, JumpSide::after) / std::sin(2 * w * tau);
        q[k] = std::abs(g.values(0, k) - thermal_excess(1.0, w)) / std::abs(amp);
    }
    double lo = 1e300, hi = 0.0;
    int n = 0;
    for (size_t k = 1; k + 1 < q.size(); ++k)
        if (q[k] > q[k - 1] && q[k] >= q[k + 1] && g.omegas[k] >= 8.0 && g.omegas[k] <= 14.0) {
            lo = std::min(lo, q[k]);
            hi = std::max(hi, q[k]);
            ++n;
        }
    return {n >= 3 && lo >= 0.9 && hi <= 1.1,
            std::to_string(n) + " envelope maxima, ratio in [" + num(lo) + ", " + num(hi) + "] (need [0.9, 1.1])"};
}

Verdict doppler() {
    bool ok = true;
    std::string d;
    for (double x0 : {0.0, 0.5, 0.9}) {
        const double tr = -std::log1p(x0), wr = 4.0 * (1 + x0);
        ExcitationJob job(GaussianFock{1, {4.0, 0.5, x0}}, Trajectory(Constant{1.0}), uniform_axis(tr - 2.0, tr + 2.0, 81),
                          uniform_axis(0.05, 12.0, 240));
        const auto g = excess_wigner(job);
        Eigen::Index bi, bk;
        g.values.maxCoeff(&bi, &bk);
        const bool hit = std::abs(g.taus[bi] - tr) <= g.d_tau() && std::abs(g.omegas[bk] - wr) <= g.d_omega();
        ok = ok && hit;
        Eigen::Index mi;
        g.values.rowwise().sum().maxCoeff(&mi);
        d += "x0=" + num(x0) + ": argmax (" + num(g.taus[bi]) + ", " + num(g.omegas[bk]) + ") vs (" + num(tr) + ", " +
             num(wr) + "), time-marginal peak " + num(g.taus[mi]) + "; ";
    }
    return {ok, d + "cell " + num(4.0 / 80) + " x " + num(11.95 / 239)};
}

Verdict twin() {
    const Trajectory t(twin_profile(1.0));
    const double c = -0.5 * (t.light_cone(-2.0) + t.light_cone(2.0));
    auto spread = [&](double dtau, double centre) {
        const double x = 0.5 * twin_delay(1.0, dtau);
        return *t.reception_time(centre - x) - *t.reception_time(centre + x);
    };
    const double d3 = spread(3.0, c), d4 = spread(4.0, c), d3_origin = spread(3.0, 0.0);
    const double x = 0.5 * twin_delay(1.0, 3.0);
    const auto taus = uniform_axis(-3.0, 3.0, 97), om = uniform_axis(0.0, 14.0, 128);
    auto centre = [&](double x0) {
        const auto g = excess_wigner(ExcitationJob(GaussianFock{1, {4.0, 1.0 / 3.0, x0}}, t, taus, om));
        Eigen::Index mi;
        g.values.rowwise().sum().maxCoeff(&mi);
        return g.taus[mi];
    };
    const double sep = centre(c - x) - centre(c + x);
    const double cell = taus[1] - taus[0];
    const bool ok = std::abs(d3 - 3.0) <= 1e-6 && std::abs(sep - 3.0) <= cell;
    return {ok, "reception-time difference " + num(d3) + " vs 3 (1e-6), spot separation " + num(sep) + " vs 3 (cell " +
                    num(cell) + "); packets about x0 = 0 give " + num(d3_origin) + "; full trip " + num(d4) + " vs 4"};
}

Verdict bessel() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto taus = uniform_axis(-1.0, 2.0, 64), om = uniform_axis(-2.0, 6.0, 64);
    double worst = 0.0;
    for (const FieldState& st : {FieldState{MonochromaticFock{1, 2.0}}, FieldState{MonochromaticCoherent{cdouble(0.7, 0.4), 2.0}}}) {
        const auto b = monochromatic_accel_wigner(st, 1.0, taus, om);
        ExcitationJob job(st, Trajectory(Constant{1.0}), taus, om);
        job.upsilon_max = 14.0;
        job.step = 2e-4;
        const auto n = excess_wigner(job);
        worst = std::max(worst, (b.values - n.values).cwiseAbs().maxCoeff() / b.values.cwiseAbs().maxCoeff());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-4 && secs < 60, "max abs diff / peak " + num(worst) + " (< 1e-4), " + num(secs) + " s (< 60)"};
}

Verdict invariants() {
    std::string d;
    bool ok = true;
    auto add = [&](const std::string& name, double v, double tol) {
        ok = ok && v < tol;
        d += name + " " + num(v) + " (< " + num(tol) + "); ";
    };

    const Trajectory sine(Sinusoidal{1.0, 0.5, 0.2});
    double imag = 0.0;
    for (const FieldState& s : {FieldState{GaussianCoherent{{4.0, 0.5, 0.0}}},
                                FieldState{Superposition{{{cdouble(1.0, 0.0), {4.0, 0.5, -1.0}}, {cdouble(0.0, 1.0), {4.0, 0.5, 1.0}}},
                                                         Statistics::coherent}}})
        for (double tau : {-0.8, 0.9})
            for (double w : {0.0, 1.5, 4.0}) {
                cdouble sum = 0.0;
                double mag = 0.0;
                for (int j = -1200; j <= 1200; ++j) {
                    const double u = j * 0.01;
                    const cdouble c = excess_correlation(s, sine, tau - u / 2, tau + u / 2) * std::exp(cdouble(0.0, w * u));
                    sum += c;
                    mag += std::abs(c);
                }
                imag = std::max(imag, std::abs(sum.imag()) / mag);
            }
    add("realness", imag, 1e-9);

    const auto om = uniform_axis(-4.0, 4.0, 33);
    const auto g = vacuum_excess_wigner(VacuumJob(Trajectory(Sinusoidal{1.0, 0.5, 0.1}), uniform_axis(-1.0, 1.0, 5), om));
    const Eigen::MatrixXd flipped = g.values.rowwise().reverse();
    add("frequency symmetry", (g.values - flipped).cwiseAbs().maxCoeff() / g.values.cwiseAbs().maxCoeff(), 1e-8);

    const WavepacketSpec wide{4.0, 1.0, 0.0};
    const auto fock = excess_wigner(ExcitationJob(GaussianFock{1, wide}, Trajectory(Constant{0.0}), uniform_axis(-3.0, 3.0, 61),
                                                  uniform_axis(-0.5, 0.5, 21)));
    add("fock mid-ridge", fock.values.cwiseAbs().maxCoeff() /
                              gaussian_inertial_wigner(wide, 0.0, 0.0, 4.0, Statistics::fock).main, 1e-3);

    const Trajectory acc(Constant{1.0});
    const auto taus = uniform_axis(-4.0, 8.0, 121), wide_om = uniform_axis(-10.0, 10.0, 100);
    const double e0 = average_energy(excess_wigner(ExcitationJob(GaussianFock{1, {4.0, 0.5, 0.0}}, acc, taus, wide_om))).value;
    const double e1 = average_energy(excess_wigner(ExcitationJob(GaussianFock{1, {4.0, 0.5, -5.0}}, acc, taus, wide_om))).value;
    add("horizon loss", std::abs(e1) / e0, 1e-6);

    const Trajectory b(PiecewiseConstant{{-100.0}, {1.0, 1.0}}), c(Sampled{{-50.0, 50.0}, {1.0, 1.0}});
    double cov = 0.0;
    for (const FieldState& s : {FieldState{GaussianFock{1, {4.0, 0.5, 0.2}}}, FieldState{GaussianCoherent{{4.0, 0.5, 0.2}}}})
        for (auto [t1, t2] : {std::pair{-0.5, 0.3}, {0.1, 0.1}, {1.0, -1.2}}) {
            const cdouble ga = excess_correlation(s, acc, t1, t2);
            cov = std::max(cov, std::abs(excess_correlation(s, b, t1, t2) - ga) / (1 + std::abs(ga)));
            cov = std::max(cov, std::abs(excess_correlation(s, c, t1, t2) - ga) / (1 + std::abs(ga)));
        }
    add("reparametrization", cov, 1e-10);

    const AccelerationProfile p = Sinusoidal{1.0, 1.0, 0.2 / two_pi};
    const auto eg = excess_wigner(ExcitationJob(GaussianCoherent{{4.0, 0.5, 0.0}}, Trajectory(p), uniform_axis(-2.0, 3.0, 51),
                                                uniform_axis(-8.0, 8.0, 81)));
    add("smoothing mass", std::abs(grid_mass(stationary_smooth(eg, p, 0.05)) / grid_mass(eg) - 1), 1e-6);
    d.resize(d.size() - 2);
    return {ok, d};
}

Verdict particles() {
    const double f = 0.2 / two_pi, tq = 0.25 / f;
    const AccelerationProfile s = Sinusoidal{1.0, 1.0, f};
    const auto g = vacuum_total_wigner(VacuumJob(Trajectory(s), uniform_axis(tq - 8.0, tq + 8.0, 81), uniform_axis(-8.0, 8.0, 161)));
    const auto sm = stationary_smooth(g, s, 0.05);
    const Eigen::Index i = nearest_index(sm.taus, tq);
    const double a = accel(s, sm.taus[i]);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < sm.n_omega(); ++k) {
        const double w = sm.omegas[k];
        if (w < 0 || w > 2 * a) continue;
        worst = std::max(worst, std::abs(sm.values(i, k) / thermal_wigner(a, w) - 1));
    }
    return {worst <= 0.1, "a_tau = " + num(a) + ", worst rel dev over [0, 2 a_tau] " + num(worst) + " (<= 0.1)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"thermal law", thermal_law},
        {"power identity", power_identity},
        {"adiabatic hierarchy", adiabatic_hierarchy},
        {"first-order sinusoidal limits", first_order_limits},
        {"discontinuity asymptotics", discontinuity},
        {"doppler/redshift argmax", doppler},
        {"twin delay", twin},
        {"bessel closed forms", bessel},
        {"structural invariants", invariants},
        {"stationary smoothing", particles},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
