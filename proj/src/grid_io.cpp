#include "wigdet/core.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wigdet {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

struct AxisHeader {
    double lo, hi;
    long n;
};

AxisHeader parse_axis_header(const std::string& line, const std::string& path) {
    if (line.empty() || line[0] != '#') throw InvalidInput(path + ": missing axis header line");
    auto tok = split(line.substr(1), ',');
    if (tok.size() < 3) throw InvalidInput(path + ": malformed axis header '" + line + "'");
    const size_t m = tok.size();
    try {
        return {std::stod(tok[m - 3]), std::stod(tok[m - 2]), std::stol(tok[m - 1])};
    } catch (const std::exception&) {
        throw InvalidInput(path + ": malformed axis header '" + line + "'");
    }
}

}  // namespace

void write_grid_csv(const TimeFrequencyGrid& grid, const std::string& path) {
    check_grid(grid);
    std::ofstream os(path);
    if (!os) throw InvalidInput("cannot write " + path);
    const Eigen::Index nt = grid.n_tau(), nw = grid.n_omega();
    os << "# tau_min,tau_max,n_tau," << fmt(grid.taus[0]) << "," << fmt(grid.taus[nt - 1]) << "," << nt << "\n";
    os << "# omega_min,omega_max,n_omega," << fmt(grid.omegas[0]) << "," << fmt(grid.omegas[nw - 1]) << ","
       << nw << "\n";
    os << "# component," << to_string(grid.meta.component) << "\n";
    os << "tau,omega,value\n";
    for (Eigen::Index i = 0; i < nt; ++i)
        for (Eigen::Index k = 0; k < nw; ++k)
            os << fmt(grid.taus[i]) << "," << fmt(grid.omegas[k]) << "," << fmt(grid.values(i, k)) << "\n";
}

TimeFrequencyGrid read_grid_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidInput("cannot read " + path);
    std::string l1, l2, l3;
    std::getline(is, l1);
    std::getline(is, l2);
    std::getline(is, l3);
    const AxisHeader ta = parse_axis_header(l1, path);
    const AxisHeader wa = parse_axis_header(l2, path);
    auto ctok = split(l3.size() > 1 ? l3.substr(1) : "", ',');
    if (ctok.size() != 2 || trim(ctok[0]) != "component") throw InvalidInput(path + ": missing component line");
    if (ta.n < 1 || wa.n < 1) throw InvalidInput(path + ": empty axes");

    TimeFrequencyGrid grid(uniform_axis(ta.lo, ta.hi, ta.n), uniform_axis(wa.lo, wa.hi, wa.n));
    grid.meta.component = parse_component(trim(ctok[1]));

    std::string line;
    long count = 0;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line.rfind("tau", 0) == 0) continue;
        auto tok = split(line, ',');
        if (tok.size() != 3) throw InvalidInput(path + ": malformed row '" + line + "'");
        if (count >= ta.n * wa.n) throw InvalidInput(path + ": more rows than the header announces");
        grid.values(count / wa.n, count % wa.n) = std::stod(tok[2]);
        ++count;
    }
    if (count != ta.n * wa.n) throw InvalidInput(path + ": row count does not match the header");
    check_grid(grid);

    std::filesystem::path sidecar(path);
    sidecar.replace_extension(".json");
    if (std::filesystem::exists(sidecar)) {
        std::ifstream js(sidecar);
        auto j = nlohmann::json::parse(js, nullptr, false);
        if (!j.is_discarded()) {
            grid.meta.trajectory = j.value("trajectory", "");
            grid.meta.state = j.value("state", "");
            grid.meta.regularization = j.value("regularization", "");
            if (j.contains("warnings")) grid.meta.warnings = j["warnings"].get<std::vector<std::string>>();
            if (j.contains("notes")) grid.meta.notes = j["notes"].get<std::map<std::string, std::string>>();
        }
    }
    return grid;
}

std::string grid_meta_json(const TimeFrequencyGrid& grid) {
    nlohmann::json j;
    j["trajectory"] = grid.meta.trajectory;
    j["state"] = grid.meta.state;
    j["component"] = to_string(grid.meta.component);
    j["regularization"] = grid.meta.regularization;
    j["warnings"] = grid.meta.warnings;
    j["notes"] = grid.meta.notes;
    if (!grid.empty()) {
        j["tau"] = {{"min", grid.taus[0]}, {"max", grid.taus[grid.n_tau() - 1]}, {"n", grid.n_tau()}};
        j["omega"] = {{"min", grid.omegas[0]}, {"max", grid.omegas[grid.n_omega() - 1]}, {"n", grid.n_omega()}};
    }
    return j.dump(2);
}

void write_grid_json(const TimeFrequencyGrid& grid, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InvalidInput("cannot write " + path);
    os << grid_meta_json(grid) << "\n";
}

}  // namespace wigdet
