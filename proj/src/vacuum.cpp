#include "wigdet/vacuum.hpp"

#include "wigdet/parallel.hpp"
#include "wigdet/quadrature.hpp"
#include "wigdet/specfun.hpp"

#include <cmath>
#include <sstream>

namespace wigdet {

double inertial_vacuum_wigner(double omega) { return omega < 0 ? -omega / two_pi : 0.0; }

double thermal_wigner(double a, double omega) {
    if (!(a > 0)) throw DomainError("thermal_wigner needs a > 0");
    // (w/2pi)/(e^{2 pi w/a}-1) = (a/4pi^2) g(2 pi w/a)
    return a / (4.0 * pi * pi) * thermal_g(two_pi * omega / a);
}

double thermal_excess(double a, double omega) { return thermal_wigner(a, std::abs(omega)); }

double tail_model_transform(double s, double omega) {
    const double u = 0.5 * s * std::abs(omega);
    return 2.0 * std::sqrt(pi) / s * (std::exp(-u * u) - std::sqrt(pi) * u * std::erfc(u));
}

namespace {

enum class Kind { wigner, page };

TimeFrequencyGrid run(const VacuumJob& job, Kind kind) {
    if (!(job.step > 0) || !(job.upsilon_max > job.step))
        throw InvalidInput("vacuum job needs 0 < step < upsilon_max");
    if (!(job.taper_fraction > 0 && job.taper_fraction <= 1))
        throw InvalidInput("taper fraction must lie in (0, 1]");
    TimeFrequencyGrid grid(job.taus, job.omegas);
    check_grid(grid);

    const double h = job.step;
    const int n = int(std::lround(job.upsilon_max / h)) + 1;
    const double U = (n - 1) * h;
    const double s = U / 8.0;
    const double norm = 1.0 / (4.0 * pi * pi);
    const double w0 = job.omegas[0], dw = grid.d_omega();
    const int nw = int(grid.n_omega());

    Eigen::VectorXd tail(nw);
    for (int k = 0; k < nw; ++k) tail[k] = tail_model_transform(s, job.omegas[k]);

    std::vector<double> window(n), model(n);
    for (int j = 0; j < n; ++j) {
        const double u = j * h;
        window[j] = raised_cosine(u, U, job.taper_fraction);
        model[j] = j == 0 ? 1.0 / (s * s) : -std::expm1(-u * u / (s * s)) / (u * u);
    }

    std::vector<double> leak(grid.n_tau(), 0.0);
    parallel_rows(grid.n_tau(), job.threads, [&](long i) {
        const double tau = job.taus[i];
        const std::vector<double> K =
            kind == Kind::wigner ? job.traj.kernel_row(tau, h, n) : job.traj.causal_kernel_row(tau, h, n);
        const double c = U * U * K[n - 1];
        std::vector<cdouble> samples(n);
        double kmax = 0.0;
        for (int j = 0; j < n; ++j) {
            samples[j] = window[j] * (K[j] - c * model[j]);
            kmax = std::max(kmax, std::abs(K[j]));
        }
        // remainder left where the taper starts, relative to the kernel scale
        const int jt = std::min(n - 1, int((1.0 - job.taper_fraction) * (n - 1)));
        leak[i] = kmax > 0 ? std::abs(K[jt] - c * model[jt]) / kmax : 0.0;

        double endpoint = 0.0;
        if (kind == Kind::page && n >= 3) {
            const double d0 = (-3.0 * K[0] + 4.0 * K[1] - K[2]) / (2.0 * h);
            endpoint = h * h / 6.0 * d0;
        }
        auto T = chirp_transform(samples, h, w0, dw, nw);
        const double s0 = samples[0].real();
        for (int k = 0; k < nw; ++k)
            grid.values(i, k) = norm * (c * tail[k] + h * (2.0 * T[k].real() - s0) + endpoint);
    });

    grid.meta.trajectory = job.traj.describe();
    grid.meta.state = "vacuum";
    grid.meta.component = kind == Kind::wigner ? Component::vacuum_excess : Component::page;
    grid.meta.regularization =
        "inertial vacuum subtracted: kernel 1/dx^2 + 1/u^2; tail c/u^2 beyond upsilon_max transformed in closed "
        "form; raised-cosine taper on the remainder";
    std::ostringstream os;
    os.precision(10);
    os << U;
    grid.meta.notes["upsilon_max"] = os.str();
    os.str("");
    os << h;
    grid.meta.notes["step"] = os.str();
    grid.meta.notes["taper_fraction"] = std::to_string(job.taper_fraction);
    if (kind == Kind::page)
        grid.meta.notes["page_kernel"] = "causal running transform 2 Re int_0^U G_reg(tau, tau-u) e^{iwu} du";
    const double worst = *std::max_element(leak.begin(), leak.end());
    grid.meta.notes["tail_remainder"] = std::to_string(worst);
    if (worst > 1e-6)
        grid.meta.warnings.push_back("kernel remainder at the taper start is " + std::to_string(worst) +
                                     " of its peak; increase upsilon_max");
    double wmin = 0.0;
    for (Eigen::Index k = 0; k < grid.n_omega(); ++k)
        if (job.omegas[k] != 0.0 && (wmin == 0.0 || std::abs(job.omegas[k]) < wmin)) wmin = std::abs(job.omegas[k]);
    if (wmin > 0 && U < 4.0 * pi / wmin)
        grid.meta.warnings.push_back("upsilon_max below 4 pi / min|omega|: lowest frequencies are not resolved");
    check_grid(grid);
    return grid;
}

}  // namespace

TimeFrequencyGrid vacuum_excess_wigner(const VacuumJob& job) { return run(job, Kind::wigner); }

TimeFrequencyGrid vacuum_total_wigner(const VacuumJob& job) {
    TimeFrequencyGrid grid = run(job, Kind::wigner);
    for (Eigen::Index i = 0; i < grid.n_tau(); ++i)
        for (Eigen::Index k = 0; k < grid.n_omega(); ++k) grid.values(i, k) += inertial_vacuum_wigner(grid.omegas[k]);
    grid.meta.component = Component::total;
    grid.meta.regularization = "unregularized: inertial vacuum part added back";
    return grid;
}

TimeFrequencyGrid page_distribution(const VacuumJob& job) { return run(job, Kind::page); }

double discontinuity_asymptote(double a, double tau_rel, double omega, JumpSide side) {
    if (tau_rel == 0.0) throw DomainError("discontinuity asymptote needs tau_rel != 0");
    if (omega == 0.0) throw DomainError("discontinuity asymptote needs omega != 0");
    const double norm = 1.0 / (4.0 * pi * pi);
    if (side == JumpSide::after) {
        const double sh = std::sinh(a * tau_rel);
        return -norm * std::pow(a, 4) / (8.0 * sh * sh) * std::sin(2.0 * omega * tau_rel) / std::pow(omega, 3);
    }
    return -norm * a * a / (16.0 * std::pow(tau_rel, 3)) * std::cos(2.0 * omega * tau_rel) / std::pow(omega, 4);
}

}  // namespace wigdet
