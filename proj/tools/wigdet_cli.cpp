#include "wigdet/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>

using json = nlohmann::ordered_json;

namespace {

constexpr int exit_config = 2;
constexpr int exit_accuracy = 3;

int config_failure(const wigdet::ConfigError& e) {
    json j = {{"status", "config-error"}, {"message", e.what()}, {"line", e.line}, {"field", e.field}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "config error";
    if (e.line > 0) std::cerr << " at line " << e.line;
    std::cerr << ": " << e.what() << "\n";
    return exit_config;
}

int input_failure(const std::exception& e) {
    json j = {{"status", "error"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
}

std::string scenario_dir() {
    if (const char* env = std::getenv("WIGDET_SCENARIO_DIR")) return env;
    return WIGDET_SCENARIO_DIR;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner and Page distributions for accelerated detectors"};
    app.require_subcommand(1);

    std::string config_path;
    wigdet::RunOptions opts;
    double tolerance = 0.0;
    auto* run = app.add_subcommand("run", "Run a scenario config");
    run->add_option("--config", config_path, "Scenario file")->required();
    run->add_option("--out-dir", opts.out_dir, "Directory for output products");
    run->add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1, 256));
    auto* tol_opt = run->add_option("--tolerance", tolerance, "Override every tolerance")->check(CLI::PositiveNumber);

    std::string path_a, path_b, norm = "max";
    auto* compare = app.add_subcommand("compare", "Normalized difference of two grid files");
    compare->add_option("a", path_a)->required();
    compare->add_option("b", path_b)->required();
    compare->add_option("--norm", norm)->check(CLI::IsMember({"max", "l2"}));

    auto* list = app.add_subcommand("list-scenarios", "List bundled scenario files");

    int self_threads = 1;
    auto* self = app.add_subcommand("selftest", "Closed-form oracle battery");
    self->add_option("--threads", self_threads)->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_config;
    }

    try {
        if (*run) {
            if (*tol_opt) opts.tolerance = tolerance;
            const auto config = wigdet::load_config(config_path);
            const auto report = wigdet::run_scenario(config, opts);
            std::cout << report.json << "\n";
            return report.accuracy_ok ? 0 : exit_accuracy;
        }
        if (*compare) {
            const auto a = wigdet::read_grid_csv(path_a);
            const auto b = wigdet::read_grid_csv(path_b);
            const double d = wigdet::compare_grids(a, b, wigdet::parse_norm(norm));
            std::cout << json{{"a", path_a}, {"b", path_b}, {"norm", norm}, {"difference", d}}.dump(2) << "\n";
            return 0;
        }
        if (*list) {
            json j = json::array();
            const std::string dir = scenario_dir();
            for (const auto& e : wigdet::list_scenarios(dir)) j.push_back({{"file", e.file}, {"title", e.title}});
            std::cout << json{{"directory", dir}, {"scenarios", j}}.dump(2) << "\n";
            return 0;
        }
        if (*self) {
            json j = json::array();
            bool ok = true;
            for (const auto& c : wigdet::selftest(self_threads)) {
                ok = ok && c.pass;
                j.push_back({{"check", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
            }
            std::cout << json{{"checks", j}, {"status", ok ? "ok" : "accuracy-failure"}}.dump(2) << "\n";
            return ok ? 0 : exit_accuracy;
        }
    } catch (const wigdet::ConfigError& e) {
        return config_failure(e);
    } catch (const wigdet::AccuracyError& e) {
        std::cout << json{{"status", "accuracy-failure"}, {"message", e.what()}, {"estimate", e.estimate}}.dump(2)
                  << "\n";
        return exit_accuracy;
    } catch (const std::exception& e) {
        return input_failure(e);
    }
    return 0;
}
