#pragma once

#include "wigdet/core.hpp"

#include <array>

namespace wigdet {

// Running integrals of expm1(+-dA) and 4 sinh^2(dA/2) over an interval, with dA measured
// from a fixed reference proper time. Enough to rebuild f+ f- and the vacuum kernel
// without cancellation.
struct IntervalSums {
    double length = 0.0;
    double d_plus = 0.0;   // int expm1(+dA)
    double d_minus = 0.0;  // int expm1(-dA)
    double s = 0.0;        // int 4 sinh^2(dA/2)

    double f_plus() const { return length + d_plus; }
    double f_minus() const { return length + d_minus; }
    // f+ f- - L^2, computed as L s + d+ d-
    double excess() const { return length * s + d_plus * d_minus; }
    // 1/L^2 - 1/(f+ f-)
    double kernel() const;
};

struct WorldPoint {
    double t;
    double x;
};

class Trajectory {
public:
    // rapidity0 boosts the whole worldline: inertial motion at velocity v is
    // Trajectory(Constant{0}, atanh(v)).
    explicit Trajectory(AccelerationProfile profile, double rapidity0 = 0.0);

    const AccelerationProfile& profile() const { return profile_; }
    double tau_min() const { return lo_; }
    double tau_max() const { return hi_; }
    bool contains(double tau) const { return tau >= lo_ && tau <= hi_; }
    double rapidity0() const { return eta_; }
    std::string describe() const;

    double a(double tau) const { return accel(profile_, tau); }
    // int_0^tau a; the rapidity is rapidity0 + accumulate_A.
    double accumulate_A(double tau) const;
    double rapidity(double tau) const { return eta_ + accumulate_A(tau); }

    // Integral sums over [t0, t1] with dA = A(.) - A(ref).
    IntervalSums sums(double ref, double t0, double t1) const;
    void add_panel(IntervalSums& acc, double ref, double t0, double t1) const;

    std::pair<double, double> f_plus_minus(double tau, double upsilon) const;
    double interval_sq(double tau, double upsilon) const;
    // 1/dx^2(tau+u/2, tau-u/2) + 1/u^2, real and even in u; a_tau^2/12 at u = 0.
    double vacuum_kernel(double tau, double upsilon) const;
    // vacuum_kernel(tau, j h) for j = 0..n-1, accumulated panel by panel.
    std::vector<double> kernel_row(double tau, double h, int n) const;
    // Kernel at separation j h between tau and tau - j h, j = 0..n-1.
    std::vector<double> causal_kernel_row(double tau, double h, int n) const;

    WorldPoint position(double tau) const;
    // t - x along the worldline, zero at tau = 0.
    double light_cone(double tau) const;
    // Proper time at which the null ray t - x = -x0 meets the worldline.
    std::optional<double> reception_time(double x0) const;
    double instantaneous_frequency(double p0, double tau) const;

    // True when the small-offset series is used for (tau, upsilon).
    bool series_regime(double tau, double upsilon) const;

private:
    struct Knot {
        double A, u, t, x;
    };

    void check(double tau) const;
    double rate() const;
    std::array<double, 3> increments(double tau0, double r) const;  // u, t, x increments from tau0
    const Knot& nearest_knot(double tau, double& tau_k) const;

    AccelerationProfile profile_;
    double eta_ = 0.0;
    double lo_, hi_;
    std::vector<double> kinks_;
    double rate_;
    double knot_lo_ = 0.0, knot_step_ = 1.0 / 16;
    std::vector<Knot> knots_;
};

}  // namespace wigdet
