#include "wigdet/trajectory.hpp"

#include "wigdet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wigdet {

namespace {

constexpr int gl_points = 10;
constexpr double knot_span = 64.0;
constexpr double max_rapidity = 600.0;

// (sinh x - x) without cancellation
double sinh_minus_x(double x) {
    const double ax = std::abs(x);
    if (ax < 0.5) {
        const double x2 = x * x;
        double term = x * x2 / 6.0, sum = 0.0;
        for (int k = 1; k < 12; ++k) {
            sum += term;
            term *= x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        }
        return sum;
    }
    return std::sinh(x) - x;
}

double constant_kernel(double a, double ups) {
    const double x = 0.5 * std::abs(a * ups);
    if (x == 0.0) return a * a / 12.0;
    if (x > 20.0) {
        const double e = std::exp(-2.0 * x);
        return 1.0 / (ups * ups) - a * a * e / ((1.0 - e) * (1.0 - e));
    }
    const double sh = std::sinh(x);
    return 0.25 * a * a * sinh_minus_x(x) * (sh + x) / (x * x * sh * sh);
}

}  // namespace

double IntervalSums::kernel() const {
    return excess() / (length * length * f_plus() * f_minus());
}

Trajectory::Trajectory(AccelerationProfile profile, double rapidity0)
    : profile_(std::move(profile)), eta_(rapidity0) {
    validate(profile_);
    if (!std::isfinite(eta_) || std::abs(eta_) > 50.0) throw InvalidInput("initial rapidity out of range");
    std::tie(lo_, hi_) = natural_domain(profile_);
    kinks_ = kinks(profile_);
    rate_ = std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return std::abs(p.a0);
            } else if constexpr (std::is_same_v<T, Sinusoidal>) {
                return std::max(std::abs(p.a0) + std::abs(p.a1), two_pi * std::abs(p.f));
            } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
                double m = 0.0;
                for (double v : p.values) m = std::max(m, std::abs(v));
                return m;
            } else {
                double m = 0.0;
                for (double v : p.accels) m = std::max(m, std::abs(v));
                return m;
            }
        },
        profile_);

    // knots every 1/16 on [kl, kh], grown outward from tau = 0
    const double kl = std::min(0.0, std::max(lo_, -knot_span));
    const double kh = std::max(0.0, std::min(hi_, knot_span));
    const int n_left = int(std::floor(-kl / knot_step_));
    const int n_right = int(std::floor(kh / knot_step_));
    knot_lo_ = -n_left * knot_step_;
    knots_.assign(n_left + n_right + 1, Knot{0, 0, 0, 0});
    int first = 0, last = int(knots_.size()) - 1;
    for (int k = n_left; k < last; ++k) {
        const double tk = knot_lo_ + k * knot_step_;
        const Knot& K = knots_[k];
        const double dA = rapidity_increment(profile_, tk, knot_step_);
        if (std::abs(K.A + dA) > max_rapidity) {
            last = k;
            break;
        }
        auto inc = increments(tk, knot_step_);
        knots_[k + 1] = Knot{K.A + dA, K.u + inc[0], K.t + inc[1], K.x + inc[2]};
    }
    for (int k = n_left; k > 0; --k) {
        const double tk = knot_lo_ + k * knot_step_;
        const Knot& K = knots_[k];
        const double dA = rapidity_increment(profile_, tk, -knot_step_);
        if (std::abs(K.A + dA) > max_rapidity) {
            first = k;
            break;
        }
        auto inc = increments(tk, -knot_step_);
        knots_[k - 1] = Knot{K.A + dA, K.u + inc[0], K.t + inc[1], K.x + inc[2]};
    }
    knots_.erase(knots_.begin() + last + 1, knots_.end());
    knots_.erase(knots_.begin(), knots_.begin() + first);
    knot_lo_ += first * knot_step_;
}

void Trajectory::check(double tau) const {
    if (!(tau >= lo_ && tau <= hi_))
        throw RangeError("proper time " + std::to_string(tau) + " outside trajectory domain");
}

double Trajectory::rate() const { return rate_; }

std::string Trajectory::describe() const {
    std::string d = wigdet::describe(profile_);
    if (eta_ != 0.0) d += " rapidity0=" + std::to_string(eta_);
    return d;
}

double Trajectory::accumulate_A(double tau) const {
    check(tau);
    return rapidity_increment(profile_, 0.0, tau);
}

void Trajectory::add_panel(IntervalSums& acc, double ref, double t0, double t1) const {
    if (!(t1 > t0)) return;
    const GaussRule& gl = gauss_legendre(gl_points);
    std::vector<double> cuts{t0};
    auto it = std::upper_bound(kinks_.begin(), kinks_.end(), t0);
    for (; it != kinks_.end() && *it < t1; ++it) cuts.push_back(*it);
    cuts.push_back(t1);
    for (size_t c = 1; c < cuts.size(); ++c) {
        const double a = cuts[c - 1], b = cuts[c];
        const int m = std::max(1, int(std::ceil((b - a) * rate_ / 0.5)));
        const double w = (b - a) / m;
        for (int p = 0; p < m; ++p) {
            const double mid = a + (p + 0.5) * w, half = 0.5 * w;
            double dp = 0.0, dm = 0.0, s = 0.0;
            for (int i = 0; i < gl_points; ++i) {
                const double t = mid + half * gl.nodes[i];
                const double dA = rapidity_increment(profile_, ref, t - ref);
                const double sh = 2.0 * std::sinh(0.5 * dA);
                dp += gl.weights[i] * std::expm1(dA);
                dm += gl.weights[i] * std::expm1(-dA);
                s += gl.weights[i] * sh * sh;
            }
            acc.d_plus += half * dp;
            acc.d_minus += half * dm;
            acc.s += half * s;
        }
    }
    acc.length += t1 - t0;
}

IntervalSums Trajectory::sums(double ref, double t0, double t1) const {
    IntervalSums acc;
    add_panel(acc, ref, t0, t1);
    return acc;
}

bool Trajectory::series_regime(double tau, double upsilon) const {
    const double u = std::abs(upsilon);
    if (u == 0.0) return true;
    auto it = std::upper_bound(kinks_.begin(), kinks_.end(), tau - 0.5 * u);
    if (it != kinks_.end() && *it < tau + 0.5 * u) return false;
    const double scale = std::max({std::abs(a(tau)), std::sqrt(std::abs(accel_rate(profile_, tau))),
                                   std::cbrt(std::abs(accel_curvature(profile_, tau)))});
    return scale * u < 1e-3;
}

std::pair<double, double> Trajectory::f_plus_minus(double tau, double upsilon) const {
    check(tau - 0.5 * std::abs(upsilon));
    check(tau + 0.5 * std::abs(upsilon));
    if (upsilon == 0.0) return {0.0, 0.0};
    if (auto c = std::get_if<Constant>(&profile_)) {
        const double f = c->a0 == 0.0 ? upsilon : 2.0 / c->a0 * std::sinh(0.5 * c->a0 * upsilon);
        return {f, f};
    }
    const double u = std::abs(upsilon);
    auto s = sums(tau, tau - 0.5 * u, tau + 0.5 * u);
    const double sign = upsilon > 0 ? 1.0 : -1.0;
    return {sign * s.f_plus(), sign * s.f_minus()};
}

double Trajectory::interval_sq(double tau, double upsilon) const {
    const double u = std::abs(upsilon);
    check(tau - 0.5 * u);
    check(tau + 0.5 * u);
    if (u == 0.0) return 0.0;
    if (series_regime(tau, u)) {
        const double a0 = a(tau), a1 = accel_rate(profile_, tau), a2 = accel_curvature(profile_, tau);
        const double u2 = u * u;
        return -u2 * (1.0 + a0 * a0 * u2 / 12.0 + (2 * a0 * a0 * a0 * a0 + 3 * a0 * a2 + a1 * a1) * u2 * u2 / 720.0);
    }
    if (auto c = std::get_if<Constant>(&profile_)) {
        if (c->a0 == 0.0) return -u * u;
        const double f = 2.0 / c->a0 * std::sinh(0.5 * c->a0 * u);
        return -f * f;
    }
    auto s = sums(tau, tau - 0.5 * u, tau + 0.5 * u);
    return -(u * u + s.excess());
}

double Trajectory::vacuum_kernel(double tau, double upsilon) const {
    const double u = std::abs(upsilon);
    check(tau - 0.5 * u);
    check(tau + 0.5 * u);
    if (auto c = std::get_if<Constant>(&profile_)) return constant_kernel(c->a0, u);
    if (series_regime(tau, u)) {
        const double a0 = a(tau), a1 = accel_rate(profile_, tau), a2 = accel_curvature(profile_, tau);
        return a0 * a0 / 12.0 + (3 * a0 * a2 + a1 * a1 - 3 * a0 * a0 * a0 * a0) * u * u / 720.0;
    }
    return sums(tau, tau - 0.5 * u, tau + 0.5 * u).kernel();
}

std::vector<double> Trajectory::kernel_row(double tau, double h, int n) const {
    if (n < 1) return {};
    const double reach = 0.5 * (n - 1) * h;
    check(tau - reach);
    check(tau + reach);
    std::vector<double> out(n);
    if (auto c = std::get_if<Constant>(&profile_)) {
        for (int j = 0; j < n; ++j) out[j] = constant_kernel(c->a0, j * h);
        return out;
    }
    IntervalSums acc;
    out[0] = vacuum_kernel(tau, 0.0);
    for (int j = 1; j < n; ++j) {
        add_panel(acc, tau, tau + 0.5 * (j - 1) * h, tau + 0.5 * j * h);
        add_panel(acc, tau, tau - 0.5 * j * h, tau - 0.5 * (j - 1) * h);
        acc.length = j * h;
        out[j] = series_regime(tau, j * h) ? vacuum_kernel(tau, j * h) : acc.kernel();
    }
    return out;
}

std::vector<double> Trajectory::causal_kernel_row(double tau, double h, int n) const {
    if (n < 1) return {};
    check(tau);
    check(tau - (n - 1) * h);
    std::vector<double> out(n);
    if (auto c = std::get_if<Constant>(&profile_)) {
        for (int j = 0; j < n; ++j) out[j] = constant_kernel(c->a0, j * h);
        return out;
    }
    IntervalSums acc;
    out[0] = vacuum_kernel(tau, 0.0);
    for (int j = 1; j < n; ++j) {
        add_panel(acc, tau, tau - j * h, tau - (j - 1) * h);
        acc.length = j * h;
        const double centre = tau - 0.5 * j * h;
        out[j] = series_regime(centre, j * h) ? vacuum_kernel(centre, j * h) : acc.kernel();
    }
    return out;
}

std::array<double, 3> Trajectory::increments(double tau0, double r) const {
    std::array<double, 3> out{0.0, 0.0, 0.0};
    if (r == 0.0) return out;
    const double lo = std::min(tau0, tau0 + r), hi = std::max(tau0, tau0 + r);
    const double sign = r > 0 ? 1.0 : -1.0;
    const double A0 = rapidity_increment(profile_, 0.0, tau0);
    const GaussRule& gl = gauss_legendre(gl_points);
    std::vector<double> cuts{lo};
    auto it = std::upper_bound(kinks_.begin(), kinks_.end(), lo);
    for (; it != kinks_.end() && *it < hi; ++it) cuts.push_back(*it);
    cuts.push_back(hi);
    for (size_t c = 1; c < cuts.size(); ++c) {
        const double a = cuts[c - 1], b = cuts[c];
        const int m = std::max(1, int(std::ceil((b - a) * rate_ / 0.5)));
        const double w = (b - a) / m;
        for (int p = 0; p < m; ++p) {
            const double mid = a + (p + 0.5) * w, half = 0.5 * w;
            for (int i = 0; i < gl_points; ++i) {
                const double t = mid + half * gl.nodes[i];
                const double A = A0 + rapidity_increment(profile_, tau0, t - tau0);
                const double wt = half * gl.weights[i];
                out[0] += wt * std::exp(-A);
                out[1] += wt * std::cosh(A);
                out[2] += wt * std::sinh(A);
            }
        }
    }
    for (double& v : out) v *= sign;
    return out;
}

const Trajectory::Knot& Trajectory::nearest_knot(double tau, double& tau_k) const {
    long k = std::lround((tau - knot_lo_) / knot_step_);
    k = std::clamp<long>(k, 0, long(knots_.size()) - 1);
    tau_k = knot_lo_ + k * knot_step_;
    return knots_[k];
}

double Trajectory::light_cone(double tau) const {
    check(tau);
    double u;
    if (auto c = std::get_if<Constant>(&profile_)) {
        u = c->a0 == 0.0 ? tau : -std::expm1(-c->a0 * tau) / c->a0;
    } else {
        double tk;
        const Knot& K = nearest_knot(tau, tk);
        u = K.u + increments(tk, tau - tk)[0];
    }
    return eta_ == 0.0 ? u : std::exp(-eta_) * u;
}

WorldPoint Trajectory::position(double tau) const {
    check(tau);
    WorldPoint p;
    if (auto c = std::get_if<Constant>(&profile_)) {
        if (c->a0 == 0.0) {
            p = {tau, 0.0};
        } else {
            const double x = c->a0 * tau;
            p = {std::sinh(x) / c->a0, 2.0 * std::sinh(0.5 * x) * std::sinh(0.5 * x) / c->a0};
        }
    } else {
        double tk;
        const Knot& K = nearest_knot(tau, tk);
        auto inc = increments(tk, tau - tk);
        p = {K.t + inc[1], K.x + inc[2]};
    }
    if (eta_ == 0.0) return p;
    const double ch = std::cosh(eta_), sh = std::sinh(eta_);
    return {ch * p.t + sh * p.x, sh * p.t + ch * p.x};
}

std::optional<double> Trajectory::reception_time(double x0) const {
    if (!std::isfinite(x0)) throw InvalidInput("x0 must be finite");
    // work with the unboosted light-cone coordinate
    x0 *= std::exp(eta_);
    if (auto c = std::get_if<Constant>(&profile_)) {
        if (c->a0 == 0.0) {
            if (!contains(-x0)) return std::nullopt;
            return -x0;
        }
        const double arg = c->a0 * x0;
        if (!(arg > -1.0)) return std::nullopt;
        return -std::log1p(arg) / c->a0;
    }
    const double target = -x0;
    if (target == 0.0) return contains(0.0) ? std::optional<double>(0.0) : std::nullopt;
    const double d = target > 0 ? 1.0 : -1.0;

    // bracket by doubling away from tau = 0
    double t_prev = 0.0, step = 0.5, t_next = 0.0;
    bool found = false;
    while (step < 1e5) {
        t_next = d * step;
        bool edge = false;
        if (t_next < lo_) t_next = lo_, edge = true;
        if (t_next > hi_) t_next = hi_, edge = true;
        const double u = std::exp(eta_) * light_cone(t_next);
        if (d * (u - target) >= 0.0) {
            found = true;
            break;
        }
        if (edge || std::abs(accumulate_A(t_next)) > max_rapidity) break;
        t_prev = t_next;
        step *= 2.0;
    }
    if (!found) return std::nullopt;

    double lo = std::min(t_prev, t_next), hi = std::max(t_prev, t_next);
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double g = std::exp(eta_) * light_cone(t) - target;
        if (g == 0.0) break;
        if (g > 0) hi = t;
        else lo = t;
        const double deriv = std::exp(-accumulate_A(t));
        double next = t - g / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double dt = std::abs(next - t);
        t = next;
        if (dt < 1e-14 * std::max(1.0, std::abs(t)) || hi - lo < 1e-14 * std::max(1.0, std::abs(t))) break;
    }
    // a root whose slope is lost in rounding cannot be told apart from the horizon
    if (std::exp(-accumulate_A(t)) < 1e-12 * std::max(1.0, std::abs(target))) return std::nullopt;
    return t;
}

double Trajectory::instantaneous_frequency(double p0, double tau) const {
    if (!(p0 > 0)) throw InvalidInput("p0 must be positive");
    return p0 * std::exp(-rapidity(tau));
}

}  // namespace wigdet
