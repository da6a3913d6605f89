#include "doctest.h"

#include "wigdet/specfun.hpp"

#include <cmath>

using namespace wigdet;

TEST_CASE("thermal distribution") {
    CHECK(thermal_g(0.0) == 1.0);
    CHECK(thermal_g(50.0) == doctest::Approx(50.0 / std::expm1(50.0)).epsilon(1e-12));
    CHECK(thermal_g(two_pi) == doctest::Approx(1.1766e-2).epsilon(1e-4));
    CHECK(thermal_g(two_pi) == doctest::Approx(two_pi / std::expm1(two_pi)).epsilon(1e-14));
    CHECK(thermal_g(1e-6) == doctest::Approx(1.0 - 0.5e-6 + 1e-12 / 12.0).epsilon(1e-15));
    CHECK(thermal_g(-1e-5) == doctest::Approx(1.0 + 0.5e-5 + 1e-10 / 12.0).epsilon(1e-15));
    for (double x = -20.0; x <= 20.0; x += 0.37) CHECK(thermal_g(-x) == doctest::Approx(thermal_g(x) * std::exp(x)).epsilon(1e-12));
}

TEST_CASE("thermal derivatives against finite differences") {
    for (double x : {-3.0, -0.2, 1e-3, 0.7, 4.0}) {
        const double h = 1e-3;
        const auto d = thermal_g_derivatives(x);
        auto fd = [&](int k) {
            const auto p = thermal_g_derivatives(x + h), m = thermal_g_derivatives(x - h);
            return (p[k] - m[k]) / (2 * h);
        };
        CHECK(d[1] == doctest::Approx(fd(0)).epsilon(1e-6));
        CHECK(d[2] == doctest::Approx(fd(1)).epsilon(1e-6));
        CHECK(d[3] == doctest::Approx(fd(2)).epsilon(1e-5));
    }
}

TEST_CASE("modified Bessel function of imaginary order, real argument") {
    CHECK(bessel_K_imag_order(0.0, 1.0) == doctest::Approx(0.421024438240708).epsilon(1e-12));
    CHECK(bessel_K_imag_order(1.0, 30.0) == doctest::Approx(std::sqrt(pi / 60.0) * std::exp(-30.0)).epsilon(0.01));
    for (double mu : {0.3, 2.0, 7.5}) CHECK(bessel_K_imag_order(mu, 1.3) == bessel_K_imag_order(-mu, 1.3));
    CHECK_THROWS_AS(bessel_K_imag_order(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_K_imag_order(1.0, -2.0), DomainError);
}

TEST_CASE("positive and decreasing where the argument exceeds the order") {
    for (int i = 0; i < 10; ++i) {
        const double mu = 0.2 * i;
        double prev = INFINITY;
        for (int j = 0; j < 10; ++j) {
            const double x = 2.2 + 1.1 * j;
            const double k = bessel_K_imag_order(mu, x);
            CHECK(k > 0.0);
            CHECK(k < prev);
            prev = k;
        }
    }
}

TEST_CASE("Bessel routes agree on a lattice") {
    for (int i = 0; i < 10; ++i) {
        const double mu = 0.5 * i;
        for (int j = 0; j < 10; ++j) {
            const double x = 0.3 + 0.63 * j;
            const double k = bessel_K_imag_order(mu, x);
            CHECK(std::abs(bessel_K_imag_order_scaled(mu, x) * std::exp(-mu * pi / 2) - k) < 1e-6);
            const cdouble d = sinh_phase_integral_direct(x, mu);
            CHECK(std::abs(d - 2.0 * std::exp(-mu * pi / 2) * k) < 1e-6);
        }
    }
}

TEST_CASE("imaginary argument") {
    for (double y : {0.5, 2.0, 7.0}) {
        const cdouble v = bessel_K_imag_order_imag_arg(0.0, y, ArgSign::plus);
        const cdouble ref = cdouble(0.0, pi / 2) * cdouble(std::cyl_bessel_j(0.0, y), std::cyl_neumann(0.0, y));
        CHECK(std::abs(v - ref) < 1e-8);
    }
    for (double mu : {0.0, 0.8, 3.0})
        for (double y : {0.4, 1.5, 5.0}) {
            const cdouble p = bessel_K_imag_order_imag_arg(mu, y, ArgSign::plus);
            const cdouble m = bessel_K_imag_order_imag_arg(mu, y, ArgSign::minus);
            CHECK(std::abs(m - std::conj(p)) < 1e-14);
            CHECK(std::abs(p - bessel_K_imag_order_imag_arg(-mu, y, ArgSign::plus)) < 1e-12);
        }
    CHECK_THROWS_AS(bessel_K_imag_order_imag_arg(1.0, 0.0, ArgSign::plus), DomainError);
}

TEST_CASE("imaginary argument satisfies the Bessel equation") {
    // w(y) = K_{i mu}(-i y) solves y^2 w'' + y w' + (y^2 + mu^2) w = 0
    for (double mu : {0.5, 2.0})
        for (double y : {1.0, 4.0}) {
            const double h = 1e-3;
            auto w = [&](double t) { return bessel_K_imag_order_imag_arg(mu, t, ArgSign::plus, 1e-12); };
            const cdouble w0 = w(y), wp = w(y + h), wm = w(y - h);
            const cdouble d1 = (wp - wm) / (2 * h), d2 = (wp - 2.0 * w0 + wm) / (h * h);
            const cdouble res = y * y * d2 + y * d1 + (y * y + mu * mu) * w0;
            CHECK(std::abs(res) < 1e-5 * (y * y + mu * mu) * std::abs(w0));
        }
}
