#pragma once

#include "wigdet/core.hpp"

#include <functional>
#include <span>

namespace wigdet {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule with n points (Newton iteration on P_n).
const GaussRule& gauss_legendre(int n);

template <typename T>
struct QuadResult {
    T value;
    double error;
    int evaluations;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cdouble(double)>;

// Adaptive Gauss-Kronrod (7/15) with an optional initial partition.
QuadResult<double> integrate_gk(const RealFn& f, double a, double b, double abs_tol, double rel_tol = 1e-12,
                                int max_intervals = 4000, int initial_panels = 1);
QuadResult<cdouble> integrate_gk(const ComplexFn& f, double a, double b, double abs_tol, double rel_tol = 1e-12,
                                 int max_intervals = 4000, int initial_panels = 1);

// Integral over [a, b] split at the given interior points.
QuadResult<double> integrate_split(const RealFn& f, double a, double b, const std::vector<double>& cuts,
                                   double abs_tol, double rel_tol = 1e-12);

// Tanh-sinh rule on [a, b]; refines the level until successive estimates agree to tol.
QuadResult<double> integrate_tanh_sinh(const RealFn& f, double a, double b, double abs_tol, int max_level = 12);
QuadResult<cdouble> integrate_tanh_sinh(const ComplexFn& f, double a, double b, double abs_tol,
                                        int max_level = 12);

// out[k] = sum_j s[j] exp(i (omega0 + k d_omega) j h), k = 0..n_omega-1.
// Uses a Bluestein chirp-z transform for large problems, direct summation otherwise.
std::vector<cdouble> chirp_transform(std::span<const cdouble> s, double h, double omega0, double d_omega,
                                     int n_omega);
std::vector<cdouble> direct_transform(std::span<const cdouble> s, double h, double omega0, double d_omega,
                                      int n_omega);

// Raised-cosine taper: 1 on [0, (1-frac) L], cosine roll-off to 0 at L.
double raised_cosine(double u, double L, double frac = 0.2);

}  // namespace wigdet
