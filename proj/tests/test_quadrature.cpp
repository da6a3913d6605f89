#include "doctest.h"

#include "wigdet/quadrature.hpp"

#include <cmath>

using namespace wigdet;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {2, 5, 12, 40}) {
        const auto& r = gauss_legendre(n);
        REQUIRE(r.nodes.size() == size_t(n));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
}

TEST_CASE("adaptive gauss-kronrod") {
    auto r = integrate_gk(RealFn([](double x) { return std::exp(-x * x); }), -8.0, 8.0, 1e-14);
    CHECK(r.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(r.error < 1e-10);

    r = integrate_gk(RealFn([](double x) { return std::sqrt(x); }), 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));

    auto c = integrate_gk(ComplexFn([](double x) { return std::exp(cdouble(0.0, 5.0 * x)); }), 0.0, pi, 1e-13);
    CHECK(std::abs(c.value - (std::exp(cdouble(0.0, 5.0 * pi)) - 1.0) / cdouble(0.0, 5.0)) < 1e-12);

    auto s = integrate_split(RealFn([](double x) { return std::abs(x - 0.3); }), -1.0, 1.0, {0.3}, 1e-14);
    CHECK(s.value == doctest::Approx(0.5 * (1.3 * 1.3 + 0.7 * 0.7)).epsilon(1e-14));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
    auto r = integrate_tanh_sinh(RealFn([](double x) { return std::log(x); }), 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-11));
    r = integrate_tanh_sinh(RealFn([](double x) { return 1.0 / std::sqrt(x); }), 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("chirp transform agrees with direct summation") {
    for (int n : {7, 300, 1500}) {
        std::vector<cdouble> s(n);
        for (int j = 0; j < n; ++j) s[j] = cdouble(std::cos(0.01 * j * j), std::sin(0.3 * j)) / (1.0 + j);
        const double h = 0.013, w0 = -3.1, dw = 0.047;
        const auto a = chirp_transform(s, h, w0, dw, 131);
        const auto b = direct_transform(s, h, w0, dw, 131);
        double worst = 0.0, scale = 0.0;
        for (int k = 0; k < 131; ++k) {
            worst = std::max(worst, std::abs(a[k] - b[k]));
            scale = std::max(scale, std::abs(b[k]));
        }
        CHECK(worst <= 1e-12 * scale);
    }
}

TEST_CASE("raised cosine taper") {
    CHECK(raised_cosine(0.0, 10.0) == 1.0);
    CHECK(raised_cosine(8.0, 10.0) == 1.0);
    CHECK(raised_cosine(9.0, 10.0) == doctest::Approx(0.5));
    CHECK(raised_cosine(10.0, 10.0) == doctest::Approx(0.0));
    CHECK(raised_cosine(12.0, 10.0) == 0.0);
}
