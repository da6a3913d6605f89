#pragma once

#include "wigdet/core.hpp"

#include <array>

namespace wigdet {

// g(x) = x / (e^x - 1), g(0) = 1.
double thermal_g(double x);
// g, g', g'', g''' at x.
std::array<double, 4> thermal_g_derivatives(double x);

// K_{i mu}(x) for x > 0 by double-exponential quadrature of int_0^inf e^{-x cosh t} cos(mu t) dt.
double bessel_K_imag_order(double mu, double x);
// e^{|mu| pi/2} K_{i mu}(x), evaluated on a shifted contour so large |mu| keeps relative accuracy.
double bessel_K_imag_order_scaled(double mu, double x);

enum class ArgSign { plus, minus };

// sign plus: K_{i mu}(-i y); sign minus: K_{i mu}(+i y) (its conjugate). y > 0.
// Throws AccuracyError when the quadrature estimate exceeds tol.
cdouble bessel_K_imag_order_imag_arg(double mu, double y, ArgSign sign, double tol = 1e-8);

// int_0^inf exp(i (y cosh t + nu t)) dt via the contour real -> vertical -> horizontal.
cdouble cosh_phase_half_integral(double y, double nu, double tol = 1e-8);

// int_R exp(i x sinh t + i w t) dt straight on the real axis: body by adaptive quadrature
// in s = sinh t, tails by repeated integration by parts. Oracle for the shifted-contour route.
cdouble sinh_phase_integral_direct(double x, double w);

}  // namespace wigdet
