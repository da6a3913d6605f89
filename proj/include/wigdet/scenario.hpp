#pragma once

#include "wigdet/core.hpp"

namespace wigdet {

struct GridSpec {
    double tau_lo = -1.0, tau_hi = 1.0;
    long n_tau = 64;
    double omega_lo = -4.0, omega_hi = 4.0;
    long n_omega = 64;
    std::optional<double> upsilon_max;
    std::optional<double> step;
    // vacuum-excess | total | page | excitation | excitation-main | excitation-interference
    std::string component = "vacuum-excess";
};

struct OutputSpec {
    std::string kind;  // grid | marginal | power | ridge | smooth | compare
    std::string path;
};

struct ScenarioConfig {
    std::string name;
    double a_ref = 1.0;
    AccelerationProfile trajectory = Constant{1.0};
    double rapidity0 = 0.0;
    FieldState state = Vacuum{};
    GridSpec grid;
    std::vector<OutputSpec> outputs;
    std::map<std::string, double> tolerances;
    double smooth_ratio = 0.05;
    double ridge_omega_min = 0.0;
    std::string base_dir = ".";  // compare references resolve against this
};

// Parses the INI-style scenario text. Errors carry the offending line and field.
ScenarioConfig parse_config(const std::string& text, const std::string& name = "scenario");
ScenarioConfig load_config(const std::string& path);

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    std::optional<double> tolerance;  // overrides every tolerance in the config
};

struct RunReport {
    std::string json;
    bool accuracy_ok = true;
};

// Computes the grid, writes the requested products and checks every tolerance.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options);

enum class Norm { max, l2 };

Norm parse_norm(const std::string& s);
// Difference normalized by the size of b; axes must agree.
double compare_grids(const TimeFrequencyGrid& a, const TimeFrequencyGrid& b, Norm norm);

struct ScenarioEntry {
    std::string file;
    std::string title;  // first comment line
};
std::vector<ScenarioEntry> list_scenarios(const std::string& dir);

struct SelftestCheck {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};
// Closed-form oracle battery.
std::vector<SelftestCheck> selftest(int threads = 1);

}  // namespace wigdet
