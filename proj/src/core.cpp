#include "wigdet/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wigdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
}

bool strictly_ascending(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

// Integral of a piecewise-linear interpolant over [lo, hi], lo <= hi, constant beyond the ends.
double sampled_integral(const Sampled& s, double lo, double hi) {
    const auto& t = s.taus;
    const auto& y = s.accels;
    const size_t n = t.size();
    double total = 0.0;
    if (lo < t.front()) {
        double e = std::min(hi, t.front());
        total += y.front() * (e - lo);
        lo = e;
    }
    if (hi > t.back()) {
        double b = std::max(lo, t.back());
        total += y.back() * (hi - b);
        hi = b;
    }
    if (!(hi > lo)) return total;
    size_t i = std::upper_bound(t.begin(), t.end(), lo) - t.begin();
    i = std::clamp<size_t>(i, 1, n - 1);
    double x = lo;
    for (; i < n && x < hi; ++i) {
        double seg_end = std::min(hi, t[i]);
        if (seg_end <= x) continue;
        double slope = (y[i] - y[i - 1]) / (t[i] - t[i - 1]);
        double ya = y[i - 1] + slope * (x - t[i - 1]);
        double yb = y[i - 1] + slope * (seg_end - t[i - 1]);
        total += 0.5 * (ya + yb) * (seg_end - x);
        x = seg_end;
    }
    return total;
}

double piecewise_integral(const PiecewiseConstant& p, double lo, double hi) {
    const auto& b = p.breakpoints;
    size_t seg = std::upper_bound(b.begin(), b.end(), lo) - b.begin();
    double total = 0.0;
    double x = lo;
    while (x < hi) {
        double seg_end = seg < b.size() ? std::min(hi, b[seg]) : hi;
        total += p.values[seg] * (seg_end - x);
        x = seg_end;
        ++seg;
    }
    return total;
}

}  // namespace

void validate(const AccelerationProfile& profile) {
    std::visit(overloaded{
                   [](const Constant& c) { require_finite(c.a0, "a0"); },
                   [](const Sinusoidal& s) {
                       require_finite(s.a0, "a0");
                       require_finite(s.a1, "a1");
                       require_finite(s.f, "f");
                   },
                   [](const PiecewiseConstant& p) {
                       if (p.values.size() != p.breakpoints.size() + 1)
                           throw InvalidInput("piecewise profile needs one more value than breakpoints");
                       if (!strictly_ascending(p.breakpoints))
                           throw InvalidInput("piecewise breakpoints must be strictly ascending");
                       for (double b : p.breakpoints) require_finite(b, "breakpoint");
                       for (double v : p.values) require_finite(v, "segment value");
                   },
                   [](const Sampled& s) {
                       if (s.taus.size() < 2 || s.taus.size() != s.accels.size())
                           throw InvalidInput("sampled profile needs >= 2 (tau, a) pairs of equal length");
                       if (!strictly_ascending(s.taus))
                           throw InvalidInput("sampled taus must be strictly ascending");
                       for (double t : s.taus) require_finite(t, "sample tau");
                       for (double a : s.accels) require_finite(a, "sample acceleration");
                   },
               },
               profile);
}

std::string describe(const AccelerationProfile& profile) {
    std::ostringstream os;
    os.precision(12);
    std::visit(overloaded{
                   [&](const Constant& c) { os << "constant(a0=" << c.a0 << ")"; },
                   [&](const Sinusoidal& s) {
                       os << "sinusoidal(a0=" << s.a0 << ",a1=" << s.a1 << ",f=" << s.f << ")";
                   },
                   [&](const PiecewiseConstant& p) {
                       os << "piecewise(breakpoints=[";
                       for (size_t i = 0; i < p.breakpoints.size(); ++i)
                           os << (i ? "," : "") << p.breakpoints[i];
                       os << "],values=[";
                       for (size_t i = 0; i < p.values.size(); ++i) os << (i ? "," : "") << p.values[i];
                       os << "])";
                   },
                   [&](const Sampled& s) {
                       os << "sampled(n=" << s.taus.size() << ",tau=[" << s.taus.front() << ","
                          << s.taus.back() << "])";
                   },
               },
               profile);
    return os.str();
}

double accel(const AccelerationProfile& profile, double tau) {
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.a0; },
            [&](const Sinusoidal& s) { return s.a0 + s.a1 * std::sin(two_pi * s.f * tau); },
            [&](const PiecewiseConstant& p) {
                size_t seg = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), tau) -
                             p.breakpoints.begin();
                return p.values[seg];
            },
            [&](const Sampled& s) {
                const auto& t = s.taus;
                if (tau <= t.front()) return s.accels.front();
                if (tau >= t.back()) return s.accels.back();
                size_t i = std::upper_bound(t.begin(), t.end(), tau) - t.begin();
                double w = (tau - t[i - 1]) / (t[i] - t[i - 1]);
                return (1.0 - w) * s.accels[i - 1] + w * s.accels[i];
            },
        },
        profile);
}

double accel_rate(const AccelerationProfile& profile, double tau) {
    return std::visit(overloaded{
                          [](const Constant&) { return 0.0; },
                          [&](const Sinusoidal& s) {
                              return s.a1 * two_pi * s.f * std::cos(two_pi * s.f * tau);
                          },
                          [](const PiecewiseConstant&) { return 0.0; },
                          [&](const Sampled& s) {
                              const auto& t = s.taus;
                              if (tau < t.front() || tau > t.back()) return 0.0;
                              size_t i = std::upper_bound(t.begin(), t.end(), tau) - t.begin();
                              i = std::clamp<size_t>(i, 1, t.size() - 1);
                              return (s.accels[i] - s.accels[i - 1]) / (t[i] - t[i - 1]);
                          },
                      },
                      profile);
}

double accel_curvature(const AccelerationProfile& profile, double tau) {
    if (auto s = std::get_if<Sinusoidal>(&profile)) {
        double w = two_pi * s->f;
        return -s->a1 * w * w * std::sin(w * tau);
    }
    return 0.0;
}

double rapidity_increment(const AccelerationProfile& profile, double tau, double r) {
    if (r == 0.0) return 0.0;
    return std::visit(
        overloaded{
            [&](const Constant& c) { return c.a0 * r; },
            [&](const Sinusoidal& s) {
                if (s.f == 0.0) return s.a0 * r;
                return s.a0 * r +
                       s.a1 / (pi * s.f) * std::sin(two_pi * s.f * (tau + 0.5 * r)) * std::sin(pi * s.f * r);
            },
            [&](const PiecewiseConstant& p) {
                return r > 0 ? piecewise_integral(p, tau, tau + r) : -piecewise_integral(p, tau + r, tau);
            },
            [&](const Sampled& s) {
                return r > 0 ? sampled_integral(s, tau, tau + r) : -sampled_integral(s, tau + r, tau);
            },
        },
        profile);
}

std::vector<double> kinks(const AccelerationProfile& profile) {
    if (auto p = std::get_if<PiecewiseConstant>(&profile)) return p->breakpoints;
    if (auto s = std::get_if<Sampled>(&profile)) return s->taus;
    return {};
}

std::pair<double, double> natural_domain(const AccelerationProfile& profile) {
    if (auto s = std::get_if<Sampled>(&profile)) return {s->taus.front(), s->taus.back()};
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
}

AccelerationProfile twin_profile(double a) {
    return PiecewiseConstant{{-2.0 / a, -1.0 / a, 1.0 / a, 2.0 / a}, {0.0, a, -a, a, 0.0}};
}

void validate(const WavepacketSpec& wp) {
    require_finite(wp.p0, "p0");
    require_finite(wp.sigma_x, "sigma_x");
    require_finite(wp.x0, "x0");
    if (!(wp.p0 > 0)) throw InvalidInput("p0 must be positive");
    if (!(wp.sigma_x > 0)) throw InvalidInput("sigma_x must be positive");
}

void validate(const FieldState& state) {
    std::visit(overloaded{
                   [](const Vacuum&) {},
                   [](const GaussianCoherent& s) { validate(s.wp); },
                   [](const GaussianFock& s) {
                       if (s.n < 1) throw InvalidInput("Fock occupation must be >= 1");
                       validate(s.wp);
                   },
                   [](const Superposition& s) {
                       if (s.terms.empty()) throw InvalidInput("superposition needs at least one term");
                       for (const auto& t : s.terms) {
                           require_finite(t.amplitude.real(), "amplitude");
                           require_finite(t.amplitude.imag(), "amplitude");
                           validate(t.wp);
                       }
                   },
                   [](const MonochromaticCoherent& s) {
                       require_finite(std::abs(s.alpha), "alpha");
                       if (!(s.p > 0)) throw InvalidInput("momentum must be positive");
                   },
                   [](const MonochromaticFock& s) {
                       if (s.n < 1) throw InvalidInput("Fock occupation must be >= 1");
                       if (!(s.p > 0)) throw InvalidInput("momentum must be positive");
                   },
               },
               state);
}

std::string describe(const FieldState& state) {
    std::ostringstream os;
    os.precision(12);
    auto packet = [&](const WavepacketSpec& wp) {
        os << "p0=" << wp.p0 << ",sigma_x=" << wp.sigma_x << ",x0=" << wp.x0;
    };
    std::visit(overloaded{
                   [&](const Vacuum&) { os << "vacuum"; },
                   [&](const GaussianCoherent& s) {
                       os << "gaussian-coherent(";
                       packet(s.wp);
                       os << ")";
                   },
                   [&](const GaussianFock& s) {
                       os << "gaussian-fock(n=" << s.n << ",";
                       packet(s.wp);
                       os << ")";
                   },
                   [&](const Superposition& s) {
                       os << "superposition(" << (s.statistics == Statistics::fock ? "fock" : "coherent");
                       for (const auto& t : s.terms) {
                           os << ";amp=" << t.amplitude.real() << (t.amplitude.imag() < 0 ? "" : "+")
                              << t.amplitude.imag() << "i,";
                           packet(t.wp);
                       }
                       os << ")";
                   },
                   [&](const MonochromaticCoherent& s) {
                       os << "mono-coherent(alpha=" << s.alpha.real() << (s.alpha.imag() < 0 ? "" : "+")
                          << s.alpha.imag() << "i,p=" << s.p << ")";
                   },
                   [&](const MonochromaticFock& s) { os << "mono-fock(n=" << s.n << ",p=" << s.p << ")"; },
               },
               state);
    return os.str();
}

std::string to_string(Component c) {
    switch (c) {
        case Component::vacuum_excess: return "vacuum-excess";
        case Component::excitation_excess: return "excitation-excess";
        case Component::total: return "total";
        case Component::page: return "page";
    }
    return "unknown";
}

Component parse_component(const std::string& label) {
    if (label == "vacuum-excess") return Component::vacuum_excess;
    if (label == "excitation-excess") return Component::excitation_excess;
    if (label == "total") return Component::total;
    if (label == "page") return Component::page;
    throw InvalidInput("unknown component label '" + label + "'");
}

Eigen::VectorXd uniform_axis(double lo, double hi, Eigen::Index n) {
    if (n < 1) throw InvalidInput("axis needs at least one point");
    if (n == 1) return Eigen::VectorXd::Constant(1, lo);
    if (!(hi > lo)) throw InvalidInput("axis range must be ascending");
    Eigen::VectorXd v(n);
    const double h = (hi - lo) / double(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = lo + h * double(i);
    v[n - 1] = hi;
    return v;
}

namespace {

void check_axis(const Eigen::VectorXd& v, const char* name) {
    if (v.size() == 0) throw InvalidInput(std::string(name) + " axis is empty");
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i])) throw InvalidInput(std::string(name) + " axis is not finite");
    if (v.size() < 2) return;
    const double h = (v[v.size() - 1] - v[0]) / double(v.size() - 1);
    if (!(h > 0)) throw InvalidInput(std::string(name) + " axis must be strictly ascending");
    const double scale = v.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * h + 8.0 * std::numeric_limits<double>::epsilon() * scale;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs((v[i] - v[i - 1]) - h) > tol)
            throw InvalidInput(std::string(name) + " axis is not uniformly spaced");
}

}  // namespace

void check_grid(const TimeFrequencyGrid& grid) {
    check_axis(grid.taus, "tau");
    check_axis(grid.omegas, "omega");
    if (grid.values.rows() != grid.taus.size() || grid.values.cols() != grid.omegas.size())
        throw InvalidInput("grid values do not match axis sizes");
    if (!grid.values.allFinite()) throw InvalidInput("grid contains non-finite values");
}

Eigen::Index nearest_index(const Eigen::VectorXd& axis, double x) {
    if (axis.size() == 1) return 0;
    const double h = (axis[axis.size() - 1] - axis[0]) / double(axis.size() - 1);
    long k = std::lround((x - axis[0]) / h);
    return std::clamp<long>(k, 0, long(axis.size()) - 1);
}

double hermitian_defect(const ComplexKernelSlice& slice) {
    const Eigen::Index n = slice.values.size();
    if (slice.upsilons.size() != n) throw InvalidInput("slice sizes differ");
    const double scale = slice.values.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = n - 1 - i;
        if (std::abs(slice.upsilons[i] + slice.upsilons[j]) > 1e-12 * (1.0 + std::abs(slice.upsilons[i])))
            throw InvalidInput("slice offsets are not symmetric");
        worst = std::max(worst, std::abs(slice.values[j] - std::conj(slice.values[i])));
    }
    return worst / scale;
}

double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& y, double h) {
    const Eigen::Index n = y.size();
    if (n < 2) return 0.0;
    return h * (y.sum() - 0.5 * (y[0] + y[n - 1]));
}

std::vector<SpectralPoint> marginal_spectral_density(const TimeFrequencyGrid& grid, std::optional<double> period) {
    if (grid.empty()) throw InvalidInput("marginal of an empty grid");
    Eigen::Index lo = 0, hi = grid.n_tau() - 1;
    if (period) {
        const double span = grid.taus[hi] - grid.taus[lo];
        if (!(*period > 0)) throw InvalidInput("period must be positive");
        if (span + 1e-12 * std::abs(span) < *period)
            throw PreconditionError("grid spans less than one period");
        const double centre = 0.5 * (grid.taus[0] + grid.taus[hi]);
        const double h = grid.d_tau();
        const double slack = 1e-9 * h;
        Eigen::Index a = 0, b = hi;
        while (a < hi && grid.taus[a] < centre - 0.5 * *period - slack) ++a;
        while (b > 0 && grid.taus[b] > centre + 0.5 * *period + slack) --b;
        lo = a;
        hi = b;
    }
    const Eigen::Index rows = hi - lo + 1;
    std::vector<SpectralPoint> out;
    out.reserve(grid.n_omega());
    for (Eigen::Index k = 0; k < grid.n_omega(); ++k) {
        double avg;
        if (rows == 1) {
            avg = grid.values(lo, k);
        } else {
            Eigen::VectorXd col = grid.values.col(k).segment(lo, rows);
            avg = trapezoid(col, grid.d_tau()) / (grid.taus[hi] - grid.taus[lo]);
        }
        out.push_back({grid.omegas[k], avg});
    }
    return out;
}

PowerEstimate integrate_power(const TimeFrequencyGrid& grid, double tau) {
    if (grid.empty()) throw InvalidInput("power of an empty grid");
    if (grid.meta.component == Component::total)
        throw PreconditionError("frequency integral of an unregularized (total) grid diverges");
    const double t0 = grid.taus[0], t1 = grid.taus[grid.n_tau() - 1];
    const double slack = 1e-12 * (1.0 + std::abs(t0) + std::abs(t1));
    if (tau < t0 - slack || tau > t1 + slack) throw RangeError("tau outside the grid");
    const Eigen::Index row = nearest_index(grid.taus, tau);
    const Eigen::Index n = grid.n_omega();
    if (n < 2) return {0.0, 0.0, grid.taus[row]};
    const double h = grid.d_omega();
    Eigen::VectorXd y = grid.values.row(row).transpose();
    const double full = trapezoid(y, h) / two_pi;
    double err = 0.0;
    const Eigen::Index m = (n - 1) / 2;  // coarse intervals
    if (m >= 1) {
        Eigen::VectorXd fine = y.head(2 * m + 1);
        Eigen::VectorXd coarse(m + 1);
        for (Eigen::Index i = 0; i <= m; ++i) coarse[i] = y[2 * i];
        err = std::abs(trapezoid(fine, h) - trapezoid(coarse, 2 * h)) / 3.0 / two_pi;
    }
    return {full, err, grid.taus[row]};
}

EnergyEstimate average_energy(const TimeFrequencyGrid& grid) {
    if (grid.empty()) throw InvalidInput("energy of an empty grid");
    EnergyEstimate out{0.0, false, {}};
    Eigen::Index k0 = 0;
    const double w_tol = 1e-12 * (1.0 + grid.omegas.cwiseAbs().maxCoeff());
    while (k0 < grid.n_omega() && grid.omegas[k0] < -w_tol) ++k0;
    if (k0 < grid.n_omega()) {
        const Eigen::Index cols = grid.n_omega() - k0;
        Eigen::VectorXd per_row(grid.n_tau());
        for (Eigen::Index i = 0; i < grid.n_tau(); ++i) {
            Eigen::VectorXd y = grid.values.row(i).segment(k0, cols).transpose();
            per_row[i] = cols > 1 ? trapezoid(y, grid.d_omega()) / two_pi : 0.0;
        }
        out.value = grid.n_tau() > 1 ? trapezoid(per_row, grid.d_tau()) : 0.0;
    }
    const double peak = grid.values.cwiseAbs().maxCoeff();
    double edge = 0.0;
    const Eigen::Index last = grid.n_tau() - 1;
    edge = std::max(edge, grid.values.row(0).cwiseAbs().maxCoeff());
    edge = std::max(edge, grid.values.row(last).cwiseAbs().maxCoeff());
    edge = std::max(edge, grid.values.col(grid.n_omega() - 1).cwiseAbs().maxCoeff());
    if (grid.omegas[0] > w_tol) edge = std::max(edge, grid.values.col(0).cwiseAbs().maxCoeff());
    if (peak > 0 && edge > 1e-6 * peak) {
        out.truncated = true;
        std::ostringstream os;
        os << "grid boundary reaches " << edge / peak << " of the peak; energy may be truncated";
        out.warnings.push_back(os.str());
    }
    return out;
}

}  // namespace wigdet
