#include "wigdet/specfun.hpp"

#include "wigdet/quadrature.hpp"

#include <cmath>

namespace wigdet {

namespace {

// B_{2k} / (2k)!
constexpr double bern[] = {
    0.083333333333333329,   -0.0013888888888888889,  3.3068783068783071e-05,  -8.2671957671957675e-07,
    2.08767569878681e-08,   -5.2841901386874932e-10, 1.3382536530684679e-11,  -3.3896802963225827e-13,
    8.5860620562778452e-15, -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812522e-19,
    3.5347070396294673e-21, -8.9535174270375463e-23,
};

std::array<double, 4> g_series(double x) {
    std::array<double, 4> d{1.0 - 0.5 * x, -0.5, 0.0, 0.0};
    for (int k = 1; k <= int(std::size(bern)); ++k) {
        const int n = 2 * k;
        const double c = bern[k - 1];
        d[0] += c * std::pow(x, n);
        d[1] += c * n * std::pow(x, n - 1);
        d[2] += c * n * (n - 1) * std::pow(x, n - 2);
        if (n >= 3) d[3] += c * n * (n - 1) * (n - 2) * std::pow(x, n - 3);
    }
    return d;
}

// x >= 1
std::array<double, 4> g_direct(double x) {
    const double q = std::exp(-x);
    const double d = -std::expm1(-x);
    const double n0 = q / d;
    const double n1 = -q / (d * d);
    const double n2 = q * (1.0 + q) / (d * d * d);
    const double n3 = -q * (1.0 + 4.0 * q + q * q) / (d * d * d * d);
    return {x * n0, n0 + x * n1, 2.0 * n1 + x * n2, 3.0 * n2 + x * n3};
}

// int_a^b split into panels, tanh-sinh on each
double panel_tanh_sinh(const RealFn& f, double a, double b, int panels, double abs_tol) {
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + (b - a) * p / panels;
        const double hi = a + (b - a) * (p + 1) / panels;
        sum += integrate_tanh_sinh(f, lo, hi, abs_tol / panels).value;
    }
    return sum;
}

}  // namespace

double thermal_g(double x) { return thermal_g_derivatives(x)[0]; }

std::array<double, 4> thermal_g_derivatives(double x) {
    if (std::isnan(x)) return {x, x, x, x};
    if (std::abs(x) < 1.0) return g_series(x);
    if (x > 0) return g_direct(x);
    // g(x) = -x + g(-x) for x < 0
    auto r = g_direct(-x);
    return {-x + r[0], -1.0 - r[1], r[2], -r[3]};
}

namespace {

// real-axis integral; loses e^{-(x - sqrt(x^2 - mu^2) - mu asin(mu/x))} to cancellation, fine for mu <= 1
double K_real_axis(double mu, double x) {
    const double T = std::acosh(1.0 + 40.0 / x);
    const int panels = 1 + int(std::ceil(mu * T / pi));
    // e^{-x cosh t} = e^{-x} e^{-x (cosh t - 1)}: keep the common factor outside
    auto f = [&](double t) { return std::exp(-2.0 * x * std::sinh(0.5 * t) * std::sinh(0.5 * t)) * std::cos(mu * t); };
    return std::exp(-x) * panel_tanh_sinh(f, 0.0, T, panels, 1e-15);
}

// e^{mu pi/2} K_{i mu}(x) on the contour t -> t + i(pi/2 - delta), through the saddle
double K_scaled_contour(double mu, double x) {
    const double delta = mu < x ? std::max(1.0 / mu, std::acos(mu / x)) : 1.0 / mu;
    const double sd = std::sin(delta), cd = std::cos(delta);
    const double T = std::acosh(1.0 + 45.0 / (x * sd));
    auto f = [&](double t) {
        return std::exp(mu * delta - x * sd * std::cosh(t)) * std::cos(mu * t - x * cd * std::sinh(t));
    };
    const int panels = 1 + int(std::ceil((mu * T + x * cd * std::sinh(T)) / pi));
    const double peak = std::exp(mu * delta - x * sd);
    return integrate_gk(RealFn(f), 0.0, T, 1e-16 * std::max(peak, 1e-300), 1e-13, 20000, panels).value;
}

}  // namespace

double bessel_K_imag_order(double mu, double x) {
    if (!(x > 0)) throw DomainError("bessel_K_imag_order needs x > 0");
    mu = std::abs(mu);
    if (mu <= 1.0) return K_real_axis(mu, x);
    return std::exp(-0.5 * pi * mu) * K_scaled_contour(mu, x);
}

double bessel_K_imag_order_scaled(double mu, double x) {
    if (!(x > 0)) throw DomainError("bessel_K_imag_order needs x > 0");
    mu = std::abs(mu);
    if (mu <= 1.0) return std::exp(0.5 * pi * mu) * K_real_axis(mu, x);
    return K_scaled_contour(mu, x);
}

cdouble cosh_phase_half_integral(double y, double nu, double tol) {
    if (!(y > 0)) throw DomainError("cosh_phase_half_integral needs y > 0");
    const cdouble I(0.0, 1.0);
    const double T0 = nu >= 0 ? 0.0 : std::asinh(0.5 * pi * std::abs(nu) / y);
    cdouble total = 0.0;
    double err = 0.0;

    if (T0 > 0) {
        auto f = [&](double t) { return std::exp(I * (y * std::cosh(t) + nu * t)); };
        const int panels = 1 + int(std::ceil((y * (std::cosh(T0) - 1.0) + std::abs(nu) * T0) / pi));
        auto r = integrate_gk(ComplexFn(f), 0.0, T0, 1e-14, 1e-13, 20000, panels);
        total += r.value;
        err += r.error;
    }
    {
        const double ch = std::cosh(T0), sh = std::sinh(T0);
        auto f = [&](double phi) {
            return I * std::exp(cdouble(-y * sh * std::sin(phi) - nu * phi, y * ch * std::cos(phi) + nu * T0));
        };
        const int panels = 1 + int(std::ceil(y * ch / pi));
        auto r = integrate_gk(ComplexFn(f), 0.0, 0.5 * pi, 1e-14, 1e-13, 20000, panels);
        total += r.value;
        err += r.error;
    }
    {
        const double top = std::max(T0 + 1.0, std::asinh(std::max(1.0, 40.0 - 0.5 * pi * nu) / y));
        auto f = [&](double s) {
            const double t = T0 + s;
            return std::exp(cdouble(-0.5 * pi * nu - y * std::sinh(t), nu * t));
        };
        const int panels = 1 + int(std::ceil(std::abs(nu) * (top - T0) / pi));
        auto r = integrate_gk(ComplexFn(f), 0.0, top - T0, 1e-14, 1e-13, 20000, panels);
        total += r.value;
        err += r.error;
    }
    if (err > tol) throw AccuracyError("cosh-phase integral did not converge", err);
    return total;
}

cdouble bessel_K_imag_order_imag_arg(double mu, double y, ArgSign sign, double tol) {
    if (!(y > 0)) throw DomainError("bessel_K_imag_order_imag_arg needs y > 0");
    const cdouble v = 0.5 * (cosh_phase_half_integral(y, mu, tol) + cosh_phase_half_integral(y, -mu, tol));
    return sign == ArgSign::plus ? v : std::conj(v);
}

cdouble sinh_phase_integral_direct(double x, double w) {
    if (!(x > 0)) throw DomainError("sinh_phase_integral_direct needs x > 0");
    const cdouble I(0.0, 1.0);
    auto h = [&](double s) { return std::exp(I * w * std::asinh(s)) / std::sqrt(1.0 + s * s); };
    // h, h', h'' through phi = i w asinh s - log(1+s^2)/2
    auto derivs = [&](double s) {
        const double q = 1.0 + s * s, r = std::sqrt(q);
        const cdouble p1 = I * w / r - s / q;
        const cdouble p2 = -I * w * s / (q * r) - (1.0 - s * s) / (q * q);
        const cdouble h0 = h(s);
        return std::array<cdouble, 3>{h0, p1 * h0, (p2 + p1 * p1) * h0};
    };
    const double S = std::max(60.0, 1000.0 * std::cbrt(std::max(1.0, w * w)) / x);
    auto f = [&](double s) { return std::exp(I * x * s) * h(s); };
    const int panels = 1 + int(std::ceil((2.0 * x * S + 2.0 * std::abs(w) * std::asinh(S)) / pi));
    cdouble body = integrate_gk(ComplexFn(f), -S, S, 1e-12, 1e-12, 200000, panels).value;

    const cdouble ix = I * x;
    auto dr = derivs(S);
    auto dl = derivs(-S);
    const cdouble right = -std::exp(ix * S) / ix * (dr[0] - dr[1] / ix + dr[2] / (ix * ix));
    const cdouble left = std::exp(-ix * S) / ix * (dl[0] - dl[1] / ix + dl[2] / (ix * ix));
    return body + right + left;
}

}  // namespace wigdet
