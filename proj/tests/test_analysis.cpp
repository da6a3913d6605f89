#include "doctest.h"

#include "wigdet/adiabatic.hpp"
#include "wigdet/analysis.hpp"
#include "wigdet/excitation.hpp"
#include "wigdet/vacuum.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace wigdet;

namespace {

RidgeCurve exponential_ridge(double p0, double a, double lo, double hi, int n) {
    RidgeCurve r;
    for (int i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * i / (n - 1);
        r.taus.push_back(t);
        r.omegas.push_back(p0 * std::exp(-a * t));
        r.weights.push_back(1.0);
    }
    return r;
}

double worst_ridge_error(double a, double sigma) {
    const WavepacketSpec wp{4.0, sigma, 0.0};
    const double span = 3 * sigma + 1;
    ExcitationJob job(GaussianFock{1, wp}, Trajectory(Constant{a}), uniform_axis(-span, span, 121),
                      uniform_axis(0.05, 10.0, 400));
    const auto r = extract_ridge(excess_wigner(job), 0.5);
    double wmax = 0.0, worst = 0.0;
    for (double w : r.weights) wmax = std::max(wmax, w);
    for (size_t i = 0; i < r.size(); ++i) {
        if (r.weights[i] < 0.1 * wmax || std::abs(r.taus[i]) > 2 * sigma) continue;
        worst = std::max(worst, std::abs(r.omegas[i] / (4.0 * std::exp(-a * r.taus[i])) - 1));
    }
    return worst;
}

}  // namespace

TEST_CASE("ridge of an inertial packet") {
    const WavepacketSpec wp{4.0, 2.0, 0.0};
    const double eta = std::atanh(0.3);
    TimeFrequencyGrid g(uniform_axis(-3.0, 3.0, 31), uniform_axis(0.0, 8.0, 161));
    for (Eigen::Index i = 0; i < g.n_tau(); ++i)
        for (Eigen::Index k = 0; k < g.n_omega(); ++k)
            g.values(i, k) = gaussian_inertial_wigner(wp, eta, g.taus[i], g.omegas[k], Statistics::fock).main;
    const auto r = extract_ridge(g, 0.5);
    REQUIRE(r.size() == 31);
    for (size_t i = 0; i < r.size(); ++i) CHECK(r.omegas[i] == doctest::Approx(4.0 * std::exp(-eta)).epsilon(1e-3));

    TimeFrequencyGrid scaled = g;
    scaled.values *= 37.5;
    const auto s = extract_ridge(scaled, 0.5);
    REQUIRE(s.size() == r.size());
    for (size_t i = 0; i < r.size(); ++i) CHECK(s.omegas[i] == r.omegas[i]);

    const auto path = (std::filesystem::temp_directory_path() / "wigdet_ridge.csv").string();
    write_ridge_csv(r, path);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "tau,omega,weight");
}

TEST_CASE("empty ridge") {
    TimeFrequencyGrid g(uniform_axis(-1.0, 1.0, 16), uniform_axis(0.0, 4.0, 16));
    CHECK(extract_ridge(g, 0.5).size() == 0);
    g.values.setConstant(1.0);
    CHECK(extract_ridge(g, 10.0).size() == 0);
}

TEST_CASE("ridge of an accelerated packet") {
    SUBCASE("figure parameters") { CHECK(worst_ridge_error(1.0, 0.5) <= 0.02); }
    SUBCASE("weak acceleration") { CHECK(worst_ridge_error(0.1, 1.0) <= 0.02); }
}

TEST_CASE("acceleration from a ridge") {
    for (double a : {0.3, 1.0, 2.5}) {
        for (const auto& s : recover_acceleration(exponential_ridge(4.0, a, -1.0, 1.0, 41)))
            CHECK(s.a == doctest::Approx(a).epsilon(1e-3));
    }
    // non-uniform spacing
    RidgeCurve r = exponential_ridge(4.0, 1.0, -1.0, 1.0, 3);
    r.taus = {-1.0, -0.2, 1.0};
    for (size_t i = 0; i < 3; ++i) r.omegas[i] = 4.0 * std::exp(-r.taus[i]);
    for (const auto& s : recover_acceleration(r)) CHECK(s.a == doctest::Approx(1.0).epsilon(1e-12));

    for (const auto& s : recover_acceleration(exponential_ridge(4.0, 0.0, -1.0, 1.0, 9))) CHECK(std::abs(s.a) <= 1e-12);
    CHECK_THROWS_AS(recover_acceleration(exponential_ridge(4.0, 1.0, -1.0, 1.0, 2)), InvalidInput);
}

TEST_CASE("acceleration of the twin trajectory from its ridge") {
    const WavepacketSpec wp{4.0, 1.0 / 3.0, 0.0};
    ExcitationJob job(GaussianFock{1, wp}, Trajectory(twin_profile(1.0)), uniform_axis(-3.0, 3.0, 97),
                      uniform_axis(0.0, 14.0, 128));
    const auto ridge = extract_ridge(excess_wigner(job), 0.5);
    const auto acc = recover_acceleration(ridge);
    std::vector<double> flips;
    for (size_t i = 1; i < acc.size(); ++i) {
        const auto &p = acc[i - 1], &q = acc[i];
        if (p.tau < -1.6 || q.tau > 1.6) continue;
        if (p.a * q.a < 0) flips.push_back(p.tau + (q.tau - p.tau) * p.a / (p.a - q.a));
    }
    REQUIRE(flips.size() == 2);
    CHECK(std::abs(flips[0] + 1.0) <= 0.1);
    CHECK(std::abs(flips[1] - 1.0) <= 0.1);
    // negative in between
    for (const auto& s : acc)
        if (std::abs(s.tau) < 0.8) CHECK(s.a < 0.0);
}

TEST_CASE("smoothing a stationary grid changes nothing") {
    VacuumJob job(Trajectory(Constant{1.0}), uniform_axis(-2.0, 2.0, 21), uniform_axis(-4.0, 4.0, 41));
    const auto g = vacuum_total_wigner(job);
    const auto s = stationary_smooth(g, Constant{1.0}, 0.05);
    CHECK((s.values - g.values).cwiseAbs().maxCoeff() <= 1e-3 * g.values.cwiseAbs().maxCoeff());
    CHECK_THROWS_AS(stationary_smooth(g, Constant{1.0}, 1.5), InvalidInput);
}

TEST_CASE("smoothed rows are thermal at the instantaneous acceleration") {
    // a0 = a1, ratio 1/20, at the maximum of a
    const double f = 0.2 / two_pi, tq = 0.25 / f;
    const AccelerationProfile s = Sinusoidal{1.0, 1.0, f};
    VacuumJob job(Trajectory(s), uniform_axis(tq - 8.0, tq + 8.0, 81), uniform_axis(-8.0, 8.0, 161));
    const auto g = vacuum_total_wigner(job);
    const auto sm = stationary_smooth(g, s, 0.05);
    const Eigen::Index i = nearest_index(sm.taus, tq);
    const double a = accel(s, sm.taus[i]);
    for (Eigen::Index k = 0; k < sm.n_omega(); ++k) {
        const double w = sm.omegas[k];
        if (w < 0 || w > 2 * a) continue;
        CAPTURE(w);
        CHECK(sm.values(i, k) == doctest::Approx(thermal_wigner(a, w)).epsilon(0.1));
    }
    CHECK(grid_mass(sm) == doctest::Approx(grid_mass(g)).epsilon(1e-6));
}

TEST_CASE("a narrow feature spreads to the stationary width") {
    // slowly varying a: tau_s = 0.05 a / a' = 50 at tau = 0
    const AccelerationProfile s = Sampled{{-2000.0, 2000.0}, {-1.0, 3.0}};
    const double ts = stationary_timescale(s, 0.0, 0.05).value;
    CHECK(ts == doctest::Approx(50.0).epsilon(1e-6));
    TimeFrequencyGrid g(uniform_axis(-300.0, 300.0, 3001), uniform_axis(-2.0, 2.0, 17));
    g.values.row(nearest_index(g.taus, 0.0)).setConstant(1.0);
    const auto sm = stationary_smooth(g, s, 0.05);
    const Eigen::VectorXd col = sm.values.col(8);
    const double m0 = col.sum(), m1 = col.dot(g.taus);
    const double var = col.dot(g.taus.cwiseProduct(g.taus)) / m0 - (m1 / m0) * (m1 / m0);
    // input variance is one grid cell: d^2 / 12
    CHECK(var == doctest::Approx(ts * ts + g.d_tau() * g.d_tau() / 12).epsilon(0.05));
}

TEST_CASE("smoothing preserves the integral") {
    const WavepacketSpec wp{4.0, 0.5, 0.0};
    ExcitationJob job(GaussianCoherent{wp}, Trajectory(Sinusoidal{1.0, 1.0, 0.2 / two_pi}),
                      uniform_axis(-2.0, 3.0, 51), uniform_axis(-8.0, 8.0, 81));
    const auto g = excess_wigner(job);
    const auto sm = stationary_smooth(g, Sinusoidal{1.0, 1.0, 0.2 / two_pi}, 0.05);
    CHECK(grid_mass(sm) == doctest::Approx(grid_mass(g)).epsilon(1e-6));

    // a grid crossing a zero of a(tau) gets flagged
    const double f = 0.2 / two_pi;
    TimeFrequencyGrid z(uniform_axis(-0.25 / f - 1.0, -0.25 / f + 1.0, 21), uniform_axis(-1.0, 1.0, 16));
    z.values.setConstant(1.0);
    const auto zs = stationary_smooth(z, Sinusoidal{1.0, 1.0, f}, 0.05);
    CHECK(zs.meta.notes.at("degenerate_rows") == "1");
    CHECK_FALSE(zs.meta.warnings.empty());
}
