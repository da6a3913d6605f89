#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wigdet {

using cdouble = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// ---------------------------------------------------------------------------
// errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct HorizonError : Error {
    using Error::Error;
};
struct AiryRegimeError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    ConfigError(const std::string& what, int line = 0, std::string field = {})
        : Error(what), line(line), field(std::move(field)) {}
    int line;
    std::string field;
};
struct AccuracyError : Error {
    AccuracyError(const std::string& what, double estimate)
        : Error(what), estimate(estimate) {}
    double estimate;
};

// ---------------------------------------------------------------------------
// acceleration profiles

struct Constant {
    double a0 = 0.0;
};
struct Sinusoidal {
    double a0 = 0.0, a1 = 0.0, f = 0.0;
};
struct PiecewiseConstant {
    std::vector<double> breakpoints;  // ascending
    std::vector<double> values;       // breakpoints.size() + 1 segments
};
// Linear interpolation between samples.
struct Sampled {
    std::vector<double> taus;
    std::vector<double> accels;
};

using AccelerationProfile = std::variant<Constant, Sinusoidal, PiecewiseConstant, Sampled>;

void validate(const AccelerationProfile& profile);
std::string describe(const AccelerationProfile& profile);

double accel(const AccelerationProfile& profile, double tau);
double accel_rate(const AccelerationProfile& profile, double tau);       // da/dtau
double accel_curvature(const AccelerationProfile& profile, double tau);  // d2a/dtau2

// Exact integral of a over [tau, tau + r], written to avoid cancellation for small r.
double rapidity_increment(const AccelerationProfile& profile, double tau, double r);

// Points where a (or its derivative) is not smooth; quadrature panels are split there.
std::vector<double> kinks(const AccelerationProfile& profile);

// Natural proper-time support: Sampled profiles are only defined on their samples.
std::pair<double, double> natural_domain(const AccelerationProfile& profile);

// Piecewise profile with acceleration a on [-2,-1], -a on [-1,1], a on [1,2] (units of 1/a).
AccelerationProfile twin_profile(double a);

// ---------------------------------------------------------------------------
// field states

struct WavepacketSpec {
    double p0 = 1.0;
    double sigma_x = 1.0;
    double x0 = 0.0;

    double sigma_p() const { return 0.5 / sigma_x; }
    bool narrowband_warning() const { return p0 < 5.0 * sigma_p(); }
};
void validate(const WavepacketSpec& wp);

enum class Statistics { fock, coherent };

struct Vacuum {};
struct GaussianCoherent {
    WavepacketSpec wp;
};
struct GaussianFock {
    int n = 1;
    WavepacketSpec wp;
};
struct SuperpositionTerm {
    cdouble amplitude{1.0, 0.0};
    WavepacketSpec wp;
};
struct Superposition {
    std::vector<SuperpositionTerm> terms;
    Statistics statistics = Statistics::fock;
};
// Right-moving plane wave of momentum p.
struct MonochromaticCoherent {
    cdouble alpha{1.0, 0.0};
    double p = 1.0;
};
struct MonochromaticFock {
    int n = 1;
    double p = 1.0;
};

using FieldState = std::variant<Vacuum, GaussianCoherent, GaussianFock, Superposition,
                                MonochromaticCoherent, MonochromaticFock>;

void validate(const FieldState& state);
std::string describe(const FieldState& state);

// ---------------------------------------------------------------------------
// grids

enum class Component { vacuum_excess, excitation_excess, total, page };

std::string to_string(Component c);
Component parse_component(const std::string& label);

struct GridMeta {
    std::string trajectory;
    std::string state;
    Component component = Component::vacuum_excess;
    std::string regularization;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> notes;
};

template <typename Scalar>
struct GridT {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    Eigen::VectorXd taus;
    Eigen::VectorXd omegas;
    Matrix values;  // [tau][omega]
    GridMeta meta;

    GridT() = default;
    GridT(Eigen::VectorXd t, Eigen::VectorXd w)
        : taus(std::move(t)), omegas(std::move(w)), values(Matrix::Zero(taus.size(), omegas.size())) {}

    Eigen::Index n_tau() const { return taus.size(); }
    Eigen::Index n_omega() const { return omegas.size(); }
    bool empty() const { return taus.size() == 0 || omegas.size() == 0; }
    double d_tau() const { return taus.size() > 1 ? taus[1] - taus[0] : 0.0; }
    double d_omega() const { return omegas.size() > 1 ? omegas[1] - omegas[0] : 0.0; }
};

using TimeFrequencyGrid = GridT<double>;

Eigen::VectorXd uniform_axis(double lo, double hi, Eigen::Index n);

// Throws InvalidInput when axes are not uniform/ascending or values are not finite.
void check_grid(const TimeFrequencyGrid& grid);

Eigen::Index nearest_index(const Eigen::VectorXd& axis, double x);

template <typename Scalar>
struct KernelSliceT {
    double tau = 0.0;
    Eigen::VectorXd upsilons;
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> values;
};

using ComplexKernelSlice = KernelSliceT<double>;

// Largest |value(-u) - conj(value(u))| relative to max |value|; upsilons must be symmetric.
double hermitian_defect(const ComplexKernelSlice& slice);

// ---------------------------------------------------------------------------
// reductions

struct SpectralPoint {
    double omega;
    double value;
};

std::vector<SpectralPoint> marginal_spectral_density(const TimeFrequencyGrid& grid,
                                                     std::optional<double> period = std::nullopt);

struct PowerEstimate {
    double value;
    double error;  // Richardson estimate against the half-resolution trapezoid
    double tau;    // row actually used
};

PowerEstimate integrate_power(const TimeFrequencyGrid& grid, double tau);

struct EnergyEstimate {
    double value;
    bool truncated;
    std::vector<std::string> warnings;
};

EnergyEstimate average_energy(const TimeFrequencyGrid& grid);

// Trapezoid rule on a uniform axis.
double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& y, double h);

// ---------------------------------------------------------------------------
// serialization

void write_grid_csv(const TimeFrequencyGrid& grid, const std::string& path);
TimeFrequencyGrid read_grid_csv(const std::string& path);
void write_grid_json(const TimeFrequencyGrid& grid, const std::string& path);
std::string grid_meta_json(const TimeFrequencyGrid& grid);

}  // namespace wigdet
