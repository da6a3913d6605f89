#include "wigdet/analysis.hpp"

#include "wigdet/adiabatic.hpp"

#include <cmath>
#include <fstream>

namespace wigdet {

RidgeCurve extract_ridge(const TimeFrequencyGrid& grid, double omega_min) {
    check_grid(grid);
    RidgeCurve r;
    if (grid.empty()) return r;
    Eigen::Index k0 = 0;
    while (k0 < grid.n_omega() && !(grid.omegas[k0] > omega_min)) ++k0;
    if (k0 >= grid.n_omega()) return r;
    const auto block = grid.values.rightCols(grid.n_omega() - k0);
    const double gmax = block.maxCoeff();
    if (!(gmax > 0)) return r;
    const double dw = grid.d_omega();

    for (Eigen::Index i = 0; i < grid.n_tau(); ++i) {
        Eigen::Index k;
        const double peak = block.row(i).maxCoeff(&k);
        if (!(peak > 1e-9 * gmax)) continue;
        double w = grid.omegas[k0 + k], val = peak;
        if (k > 0 && k + 1 < block.cols()) {
            const double ym = block(i, k - 1), yp = block(i, k + 1);
            const double den = ym - 2.0 * peak + yp;
            if (den < 0) {
                const double d = 0.5 * (ym - yp) / den;
                w += d * dw;
                val = peak - 0.25 * (ym - yp) * d;
            }
        }
        r.taus.push_back(grid.taus[i]);
        r.omegas.push_back(w);
        r.weights.push_back(val);
    }
    return r;
}

std::vector<AccelerationSample> recover_acceleration(const RidgeCurve& ridge) {
    const size_t n = ridge.size();
    if (n < 3) throw InvalidInput("recover_acceleration needs at least 3 ridge points");
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(ridge.omegas[i] > 0)) throw InvalidInput("ridge frequencies must be positive");
        if (i > 0 && !(ridge.taus[i] > ridge.taus[i - 1])) throw InvalidInput("ridge times must increase");
        y[i] = std::log(ridge.omegas[i]);
    }
    // derivative at x[c] of the parabola through points i, i+1, i+2
    auto deriv = [&](size_t i, size_t c) {
        const double x0 = ridge.taus[i], x1 = ridge.taus[i + 1], x2 = ridge.taus[i + 2], x = ridge.taus[c];
        return y[i] * ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2)) +
               y[i + 1] * ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2)) +
               y[i + 2] * ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    };
    std::vector<AccelerationSample> out(n);
    for (size_t c = 0; c < n; ++c) {
        const size_t i = c == 0 ? 0 : std::min(c - 1, n - 3);
        out[c] = {ridge.taus[c], -deriv(i, c)};
    }
    return out;
}

double grid_mass(const TimeFrequencyGrid& grid) {
    check_grid(grid);
    if (grid.n_tau() < 2 || grid.n_omega() < 2) throw InvalidInput("grid_mass needs at least 2x2 points");
    Eigen::VectorXd rows(grid.n_tau());
    for (Eigen::Index i = 0; i < grid.n_tau(); ++i) rows[i] = trapezoid(grid.values.row(i).transpose(), grid.d_omega());
    return trapezoid(rows, grid.d_tau()) / two_pi;
}

namespace {

Eigen::VectorXd trapezoid_weights(Eigen::Index n) {
    Eigen::VectorXd c = Eigen::VectorXd::Ones(n);
    if (n > 1) c[0] = c[n - 1] = 0.5;
    return c;
}

// Smoothing matrix S (out = S in) for per-point widths sigma. The Gaussian between i and k
// uses the mean variance of both points so the kernel is symmetric; images across both ends
// give reflected boundaries. A symmetric Sinkhorn scaling then makes every row sum to one
// (constants kept) and every trapezoid-weighted column sum to its weight (mass kept).
Eigen::MatrixXd smoothing_matrix(const Eigen::VectorXd& axis, const std::vector<double>& sigma) {
    const Eigen::Index n = axis.size();
    const double lo = axis[0], hi = axis[n - 1];
    const Eigen::VectorXd c = trapezoid_weights(n);
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k <= i; ++k) {
            const double s = std::sqrt(0.5 * (sigma[i] * sigma[i] + sigma[k] * sigma[k]));
            double g = 0.0;
            for (double x : {axis[k], 2.0 * lo - axis[k], 2.0 * hi - axis[k]}) {
                const double d = (axis[i] - x) / s;
                g += std::exp(-0.5 * d * d);
            }
            K(i, k) = K(k, i) = g / s;
        }
    }
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    for (int it = 0; it < 5000; ++it) {
        const Eigen::VectorXd r = K * c.cwiseProduct(d);
        const double err = (d.cwiseProduct(r).array() - 1.0).abs().maxCoeff();
        if (err < 1e-14) break;
        d = (d.array() / r.array()).sqrt();
    }
    Eigen::MatrixXd S(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) S(i, k) = d[i] * K(i, k) * c[k] * d[k];
    return S;
}

}  // namespace

TimeFrequencyGrid stationary_smooth(const TimeFrequencyGrid& grid, const AccelerationProfile& profile, double ratio) {
    check_grid(grid);
    if (!(ratio > 0 && ratio < 1)) throw InvalidInput("stationary_smooth needs ratio in (0, 1)");
    if (grid.n_tau() < 2 || grid.n_omega() < 2) throw InvalidInput("stationary_smooth needs at least 2x2 points");
    const Eigen::Index nt = grid.n_tau();

    std::vector<double> width(nt);
    std::vector<char> degenerate(nt, 0);
    double min_positive = INFINITY;
    int capped = 0;
    for (Eigen::Index i = 0; i < nt; ++i) {
        const auto ts = stationary_timescale(profile, grid.taus[i], ratio);
        width[i] = ts.value;
        capped += ts.capped;
        if (ts.degenerate || !(ts.value > 0)) degenerate[i] = 1;
        else min_positive = std::min(min_positive, ts.value);
    }
    int n_degenerate = 0;
    for (Eigen::Index i = 0; i < nt; ++i) {
        if (!degenerate[i]) continue;
        ++n_degenerate;
        width[i] = std::isfinite(min_positive) ? min_positive : grid.d_tau();
    }

    TimeFrequencyGrid out = grid;
    const Eigen::MatrixXd St = smoothing_matrix(grid.taus, width);
    out.values = St * grid.values;
    // frequency direction: row i uses 1/(2 tau_s(tau_i))
    for (Eigen::Index i = 0; i < nt; ++i) {
        std::vector<double> sw(grid.n_omega(), 0.5 / width[i]);
        const Eigen::MatrixXd Sw = smoothing_matrix(grid.omegas, sw);
        out.values.row(i) = (Sw * out.values.row(i).transpose()).transpose();
    }

    out.meta.notes["smoothing"] = "gaussian: tau width tau_s(tau), omega width 1/(2 tau_s)";
    out.meta.notes["smoothing_ratio"] = std::to_string(ratio);
    out.meta.notes["degenerate_rows"] = std::to_string(n_degenerate);
    out.meta.notes["capped_rows"] = std::to_string(capped);
    if (n_degenerate > 0)
        out.meta.warnings.push_back(std::to_string(n_degenerate) +
                                    " rows with a(tau) = 0 smoothed with the smallest positive width");
    return out;
}

void write_ridge_csv(const RidgeCurve& ridge, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot open " + path);
    f.precision(17);
    f << "tau,omega,weight\n";
    for (size_t i = 0; i < ridge.size(); ++i) f << ridge.taus[i] << ',' << ridge.omegas[i] << ',' << ridge.weights[i] << '\n';
}

}  // namespace wigdet
