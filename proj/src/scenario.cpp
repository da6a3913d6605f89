#include "wigdet/scenario.hpp"

#include "wigdet/adiabatic.hpp"
#include "wigdet/analysis.hpp"
#include "wigdet/excitation.hpp"
#include "wigdet/vacuum.hpp"

#include "json.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace wigdet {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
    return s;
}

// Drops '#' and ';' comments outside quotes.
std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#' || c == ';') {
            return line.substr(0, i);
        }
    }
    return line;
}

class Reader {
public:
    Reader(const std::string& text) {
        std::istringstream is(text);
        std::string raw, section, clean;
        int n = 0;
        while (std::getline(is, raw)) {
            ++n;
            const std::string line = trim(strip_comment(raw));
            clean += line + "\n";
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError("malformed section header", n);
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty()) throw ConfigError("empty section name", n);
                section_lines_[section] = n;
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected 'key = value'", n);
            const std::string key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError("missing key before '='", n);
            lines_[field(section, key)] = n;
        }
        std::istringstream cs(clean);
        try {
            boost::property_tree::ini_parser::read_ini(cs, tree_);
        } catch (const boost::property_tree::ini_parser_error& e) {
            throw ConfigError(e.message(), static_cast<int>(e.line()));
        }
    }

    static std::string field(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

    int line(const std::string& f) const {
        auto it = lines_.find(f);
        if (it != lines_.end()) return it->second;
        auto s = section_lines_.find(f.substr(0, f.find('.')));
        return s == section_lines_.end() ? 0 : s->second;
    }

    [[noreturn]] void fail(const std::string& f, const std::string& what) const {
        throw ConfigError(f + ": " + what, line(f), f);
    }

    bool has(const std::string& section, const std::string& key) const {
        return raw(section, key).has_value();
    }

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        const boost::property_tree::ptree* node = &tree_;
        if (!section.empty()) {
            auto it = tree_.find(section);
            if (it == tree_.not_found()) return std::nullopt;
            node = &it->second;
        }
        auto it = node->find(key);
        if (it == node->not_found() || !it->second.empty()) return std::nullopt;
        used_.insert(field(section, key));
        return unquote(it->second.data());
    }

    std::string text(const std::string& section, const std::string& key, std::optional<std::string> dflt = {}) const {
        auto v = raw(section, key);
        if (v) return *v;
        if (dflt) return *dflt;
        fail(field(section, key), "missing");
    }

    double number(const std::string& section, const std::string& key, std::optional<double> dflt = {}) const {
        auto v = raw(section, key);
        if (!v) {
            if (dflt) return *dflt;
            fail(field(section, key), "missing");
        }
        return parse_number(*v, field(section, key));
    }

    std::optional<double> maybe_number(const std::string& section, const std::string& key) const {
        auto v = raw(section, key);
        if (!v) return std::nullopt;
        return parse_number(*v, field(section, key));
    }

    std::vector<double> numbers(const std::string& section, const std::string& key) const {
        const std::string f = field(section, key);
        std::vector<double> out;
        for (const auto& item : items(text(section, key))) out.push_back(parse_number(item, f));
        return out;
    }

    // "a, b" or "[a, b]"
    static std::vector<std::string> items(std::string s) {
        s = trim(s);
        if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
        std::vector<std::string> out;
        std::string item;
        std::istringstream is(s);
        while (std::getline(is, item, ',')) {
            item = unquote(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    // plain number or a ratio "p/q"
    double parse_number(const std::string& s, const std::string& f) const {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const double q = parse_number(trim(s.substr(slash + 1)), f);
            if (q == 0) fail(f, "division by zero in '" + s + "'");
            return parse_number(trim(s.substr(0, slash)), f) / q;
        }
        const std::string t = trim(s);
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size()) fail(f, "not a number: '" + s + "'");
        if (!std::isfinite(v)) fail(f, "must be finite");
        return v;
    }

    std::vector<std::pair<std::string, std::string>> entries(const std::string& section) const {
        std::vector<std::pair<std::string, std::string>> out;
        auto it = tree_.find(section);
        if (it == tree_.not_found()) return out;
        for (const auto& kv : it->second) {
            used_.insert(field(section, kv.first));
            out.emplace_back(kv.first, unquote(kv.second.data()));
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& [f, n] : lines_)
            if (!used_.count(f)) throw ConfigError("unknown key " + f, n, f);
        for (const auto& [s, n] : section_lines_) {
            static const std::set<std::string> known = {"trajectory", "state", "grid", "outputs", "tolerances", "analysis"};
            if (!known.count(s)) throw ConfigError("unknown section [" + s + "]", n, s);
        }
    }

private:
    boost::property_tree::ptree tree_;
    std::map<std::string, int> lines_;
    std::map<std::string, int> section_lines_;
    mutable std::set<std::string> used_;
};

AccelerationProfile parse_trajectory(const Reader& r, double& rapidity0) {
    const std::string kind = r.text("trajectory", "kind");
    AccelerationProfile p;
    if (kind == "constant") {
        p = Constant{r.number("trajectory", "a")};
    } else if (kind == "sinusoidal") {
        Sinusoidal s{r.number("trajectory", "a0"), r.number("trajectory", "a1"), 0.0};
        auto f = r.maybe_number("trajectory", "f");
        auto w = r.maybe_number("trajectory", "angular_frequency");
        if (f && w) r.fail("trajectory.f", "give either f or angular_frequency");
        if (!f && !w) r.fail("trajectory.f", "missing");
        s.f = f ? *f : *w / two_pi;
        p = s;
    } else if (kind == "piecewise") {
        p = PiecewiseConstant{r.numbers("trajectory", "breakpoints"), r.numbers("trajectory", "values")};
    } else if (kind == "sampled") {
        p = Sampled{r.numbers("trajectory", "taus"), r.numbers("trajectory", "accels")};
    } else if (kind == "twin") {
        const double a = r.number("trajectory", "a");
        if (!(a > 0)) r.fail("trajectory.a", "twin acceleration must be positive");
        p = twin_profile(a);
    } else if (kind == "inertial") {
        p = Constant{0.0};
    } else {
        r.fail("trajectory.kind", "unknown trajectory kind '" + kind + "'");
    }
    try {
        validate(p);
    } catch (const Error& e) {
        r.fail("trajectory.kind", e.what());
    }
    auto v = r.maybe_number("trajectory", "velocity");
    auto eta = r.maybe_number("trajectory", "rapidity0");
    if (v && eta) r.fail("trajectory.velocity", "give either velocity or rapidity0");
    rapidity0 = 0.0;
    if (v) {
        if (!(std::abs(*v) < 1)) r.fail("trajectory.velocity", "|velocity| must be below 1");
        rapidity0 = std::atanh(*v);
    }
    if (eta) rapidity0 = *eta;
    if (!(std::abs(rapidity0) <= 50)) r.fail("trajectory.rapidity0", "|rapidity0| must be at most 50");
    return p;
}

WavepacketSpec packet(const Reader& r) {
    return {r.number("state", "p0"), r.number("state", "sigma"), r.number("state", "x0", 0.0)};
}

FieldState parse_state(const Reader& r) {
    const std::string kind = r.text("state", "kind", std::string("vacuum"));
    FieldState s;
    if (kind == "vacuum") {
        s = Vacuum{};
    } else if (kind == "gaussian-fock") {
        s = GaussianFock{static_cast<int>(r.number("state", "n", 1.0)), packet(r)};
    } else if (kind == "gaussian-coherent") {
        s = GaussianCoherent{packet(r)};
    } else if (kind == "superposition") {
        const std::string stats = r.text("state", "statistics", std::string("fock"));
        Superposition sup;
        if (stats == "fock") sup.statistics = Statistics::fock;
        else if (stats == "coherent") sup.statistics = Statistics::coherent;
        else r.fail("state.statistics", "expected fock or coherent");
        const auto x0 = r.numbers("state", "x0");
        const size_t n = x0.size();
        auto broadcast = [&](const std::string& key, double dflt, bool required) {
            std::vector<double> v;
            if (r.has("state", key)) v = r.numbers("state", key);
            else if (required) r.fail("state." + key, "missing");
            else v = {dflt};
            if (v.size() == 1) v.assign(n, v[0]);
            if (v.size() != n) r.fail("state." + key, "needs 1 or " + std::to_string(n) + " entries");
            return v;
        };
        const auto p0 = broadcast("p0", 0.0, true);
        const auto sigma = broadcast("sigma", 0.0, true);
        const auto re = broadcast("amplitude", 1.0, false);
        const auto im = broadcast("amplitude_im", 0.0, false);
        for (size_t i = 0; i < n; ++i) sup.terms.push_back({{re[i], im[i]}, {p0[i], sigma[i], x0[i]}});
        s = sup;
    } else if (kind == "monochromatic-fock") {
        s = MonochromaticFock{static_cast<int>(r.number("state", "n", 1.0)), r.number("state", "p")};
    } else if (kind == "monochromatic-coherent") {
        s = MonochromaticCoherent{{r.number("state", "alpha", 1.0), r.number("state", "alpha_im", 0.0)},
                                  r.number("state", "p")};
    } else {
        r.fail("state.kind", "unknown state kind '" + kind + "'");
    }
    try {
        validate(s);
    } catch (const Error& e) {
        r.fail("state.kind", e.what());
    }
    return s;
}

const std::set<std::string> components = {"vacuum-excess", "total",          "page",
                                          "excitation",    "excitation-main", "excitation-interference"};
const std::set<std::string> output_kinds = {"grid", "marginal", "power", "ridge", "smooth", "compare"};

bool is_excitation(const std::string& c) { return c.rfind("excitation", 0) == 0; }

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& name) {
    const Reader r(text);
    ScenarioConfig c;
    c.name = name;
    c.a_ref = r.number("", "a_ref", 1.0);
    if (!(c.a_ref > 0)) r.fail("a_ref", "must be positive");

    c.trajectory = parse_trajectory(r, c.rapidity0);
    c.state = parse_state(r);

    GridSpec& g = c.grid;
    auto range = [&](const std::string& key, double& lo, double& hi) {
        const auto v = r.numbers("grid", key);
        if (v.size() != 2) r.fail("grid." + key, "expected 'lo, hi'");
        if (!(v[1] > v[0])) r.fail("grid." + key, "range must be ascending");
        lo = v[0];
        hi = v[1];
    };
    auto count = [&](const std::string& key) {
        const double n = r.number("grid", key);
        if (n != std::floor(n) || n < 16 || n > 1e6) r.fail("grid." + key, "count must be an integer in [16, 1e6]");
        return static_cast<long>(n);
    };
    range("tau", g.tau_lo, g.tau_hi);
    range("omega", g.omega_lo, g.omega_hi);
    g.n_tau = count("n_tau");
    g.n_omega = count("n_omega");
    g.upsilon_max = r.maybe_number("grid", "upsilon_max");
    g.step = r.maybe_number("grid", "step");
    if (g.upsilon_max && !(*g.upsilon_max > 0)) r.fail("grid.upsilon_max", "must be positive");
    if (g.step && !(*g.step > 0)) r.fail("grid.step", "must be positive");
    g.component = r.text("grid", "component", std::string("vacuum-excess"));
    if (!components.count(g.component)) r.fail("grid.component", "unknown component '" + g.component + "'");
    const bool vacuum_state = std::holds_alternative<Vacuum>(c.state);
    if (is_excitation(g.component) && vacuum_state) r.fail("grid.component", "excitation component needs an excited state");
    if (is_excitation(g.component) &&
        (std::holds_alternative<MonochromaticFock>(c.state) || std::holds_alternative<MonochromaticCoherent>(c.state)) &&
        !(g.upsilon_max && g.step))
        r.fail("grid.component", "plane-wave states need grid.upsilon_max and grid.step");

    for (const auto& [kind, value] : r.entries("outputs")) {
        const std::string f = "outputs." + kind;
        if (!output_kinds.count(kind)) r.fail(f, "unknown output kind");
        const auto paths = Reader::items(value);
        if (paths.empty()) r.fail(f, "empty path");
        for (const auto& p : paths) c.outputs.push_back({kind, p});
        if (kind == "power" && g.component == "total") r.fail(f, "power needs a regularized component, not total");
    }
    for (const auto& [key, value] : r.entries("tolerances")) {
        const double v = r.parse_number(value, "tolerances." + key);
        if (!(v > 0)) r.fail("tolerances." + key, "must be positive");
        c.tolerances[key] = v;
    }
    c.smooth_ratio = r.number("analysis", "smooth_ratio", 0.05);
    if (!(c.smooth_ratio > 0 && c.smooth_ratio < 1)) r.fail("analysis.smooth_ratio", "must lie in (0, 1)");
    c.ridge_omega_min = r.number("analysis", "ridge_omega_min", 0.0);
    r.reject_unknown();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    ScenarioConfig c = parse_config(ss.str(), fs::path(path).stem().string());
    c.base_dir = fs::path(path).parent_path().string();
    return c;
}

Norm parse_norm(const std::string& s) {
    if (s == "max") return Norm::max;
    if (s == "l2") return Norm::l2;
    throw InvalidInput("unknown norm '" + s + "' (max or l2)");
}

double compare_grids(const TimeFrequencyGrid& a, const TimeFrequencyGrid& b, Norm norm) {
    auto same = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        if (x.size() != y.size()) return false;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - y[i]) > 1e-9 * (1.0 + std::abs(y[i]))) return false;
        return true;
    };
    if (!same(a.taus, b.taus) || !same(a.omegas, b.omegas)) throw InvalidInput("grids do not share axes");
    const Eigen::MatrixXd d = a.values - b.values;
    double num, den;
    if (norm == Norm::max) {
        num = d.cwiseAbs().maxCoeff();
        den = b.values.cwiseAbs().maxCoeff();
    } else {
        num = d.norm();
        den = b.values.norm();
    }
    return den > 0 ? num / den : num;
}

namespace {

struct Oracle {
    std::string name;
    TimeFrequencyGrid grid;
};

// Closed form for the scenario when one exists.
std::optional<Oracle> closed_form(const ScenarioConfig& c, const TimeFrequencyGrid& grid) {
    const auto* cst = std::get_if<Constant>(&c.trajectory);
    if (!cst) return std::nullopt;
    const double a = cst->a0;
    TimeFrequencyGrid ref(grid.taus, grid.omegas);
    const std::string& comp = c.grid.component;

    if ((comp == "vacuum-excess" || comp == "total") && a > 0) {
        for (Eigen::Index i = 0; i < ref.n_tau(); ++i)
            for (Eigen::Index k = 0; k < ref.n_omega(); ++k)
                ref.values(i, k) = comp == "total" ? thermal_wigner(a, ref.omegas[k]) : thermal_excess(a, ref.omegas[k]);
        return Oracle{"thermal", ref};
    }
    if (!is_excitation(comp)) return std::nullopt;

    if (a == 0) {
        const WavepacketSpec* wp = nullptr;
        Statistics stats = Statistics::fock;
        int n = 1;
        if (auto* s = std::get_if<GaussianFock>(&c.state)) {
            wp = &s->wp;
            n = s->n;
        } else if (auto* s = std::get_if<GaussianCoherent>(&c.state)) {
            wp = &s->wp;
            stats = Statistics::coherent;
        }
        if (!wp) return std::nullopt;
        for (Eigen::Index i = 0; i < ref.n_tau(); ++i)
            for (Eigen::Index k = 0; k < ref.n_omega(); ++k) {
                const auto p = gaussian_inertial_wigner(*wp, c.rapidity0, ref.taus[i], ref.omegas[k], stats, n);
                ref.values(i, k) = comp == "excitation-main"          ? p.main
                                   : comp == "excitation-interference" ? p.interference
                                                                       : p.main + p.interference;
            }
        return Oracle{"inertial-gaussian", ref};
    }
    const bool plane = std::holds_alternative<MonochromaticFock>(c.state) ||
                       std::holds_alternative<MonochromaticCoherent>(c.state);
    if (plane && a > 0 && c.rapidity0 == 0 && comp == "excitation") {
        ref = monochromatic_accel_wigner(c.state, a, grid.taus, grid.omegas);
        return Oracle{"bessel", ref};
    }
    return std::nullopt;
}

TimeFrequencyGrid compute(const ScenarioConfig& c, int threads) {
    const Trajectory traj(c.trajectory, c.rapidity0);
    const Eigen::VectorXd taus = uniform_axis(c.grid.tau_lo, c.grid.tau_hi, c.grid.n_tau);
    const Eigen::VectorXd omegas = uniform_axis(c.grid.omega_lo, c.grid.omega_hi, c.grid.n_omega);
    const std::string& comp = c.grid.component;
    if (!is_excitation(comp)) {
        VacuumJob job(traj, taus, omegas);
        if (c.grid.upsilon_max) job.upsilon_max = *c.grid.upsilon_max;
        if (c.grid.step) job.step = *c.grid.step;
        job.threads = threads;
        if (comp == "total") return vacuum_total_wigner(job);
        if (comp == "page") return page_distribution(job);
        return vacuum_excess_wigner(job);
    }
    ExcitationJob job(c.state, traj, taus, omegas);
    job.upsilon_max = c.grid.upsilon_max;
    job.step = c.grid.step;
    job.threads = threads;
    auto parts = excess_wigner_parts(job);
    if (comp == "excitation-main") return parts.main;
    if (comp == "excitation-interference") return parts.interference;
    return parts.total;
}

// Natural units -> units of a_ref: times 1/a_ref, frequencies and values a_ref.
TimeFrequencyGrid redimension(TimeFrequencyGrid g, double a_ref) {
    if (a_ref == 1.0) return g;
    g.taus /= a_ref;
    g.omegas *= a_ref;
    g.values *= a_ref;
    return g;
}

void write_grid_file(const TimeFrequencyGrid& g, const std::string& path) {
    if (fs::path(path).extension() == ".json") write_grid_json(g, path);
    else write_grid_csv(g, path);
}

double tolerance(const ScenarioConfig& c, const RunOptions& o, const std::string& key, double dflt) {
    if (o.tolerance) return *o.tolerance;
    auto it = c.tolerances.find(key);
    return it == c.tolerances.end() ? dflt : it->second;
}

std::string resolve(const std::string& dir, const std::string& path) {
    fs::path p(path);
    return p.is_absolute() ? path : (fs::path(dir) / p).string();
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& c, const RunOptions& o) {
    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };

    json report;
    report["scenario"] = c.name;
    report["trajectory"] = describe(c.trajectory);
    report["state"] = describe(c.state);
    report["component"] = c.grid.component;
    report["a_ref"] = c.a_ref;
    json products = json::array();
    json checks = json::array();
    bool ok = true;

    auto check = [&](const std::string& product, const std::string& name, double value, double tol) {
        const bool pass = value <= tol;
        ok = ok && pass;
        checks.push_back({{"product", product}, {"check", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
    };

    if (c.outputs.empty()) {
        report["products"] = products;
        report["checks"] = checks;
        report["status"] = "ok";
        return {report.dump(2), true};
    }

    fs::create_directories(o.out_dir);
    const auto t0 = clock::now();
    const TimeFrequencyGrid natural = compute(c, o.threads);
    const double t_grid = seconds(t0);
    TimeFrequencyGrid grid = redimension(natural, c.a_ref);
    grid.meta.notes["a_ref"] = fmt(c.a_ref);

    json grid_info = {{"kind", "compute"}, {"seconds", t_grid}, {"warnings", grid.meta.warnings}};
    if (auto it = grid.meta.notes.find("tail_remainder"); it != grid.meta.notes.end())
        grid_info["error_estimate"] = std::stod(it->second);
    if (auto oracle = closed_form(c, natural)) {
        const double err = compare_grids(natural, oracle->grid, Norm::max);
        grid_info["oracle"] = oracle->name;
        grid_info["error_estimate"] = err;
        check("grid", "oracle:" + oracle->name, err, tolerance(c, o, "oracle", 1e-3));
    }
    products.push_back(grid_info);

    std::optional<TimeFrequencyGrid> smoothed;
    for (const auto& out : c.outputs) {
        const auto t1 = clock::now();
        const std::string path = resolve(o.out_dir, out.path);
        json p = {{"kind", out.kind}, {"path", path}};
        if (out.kind == "grid") {
            write_grid_file(grid, path);
        } else if (out.kind == "marginal") {
            std::optional<double> period;
            if (auto* s = std::get_if<Sinusoidal>(&c.trajectory); s && s->f > 0 &&
                                                                   c.grid.tau_hi - c.grid.tau_lo >= 1.0 / s->f)
                period = 1.0 / (s->f * c.a_ref);
            std::ofstream f(path);
            if (!f) throw InvalidInput("cannot write " + path);
            f.precision(17);
            f << "omega,value\n";
            for (const auto& sp : marginal_spectral_density(grid, period)) f << sp.omega << ',' << sp.value << '\n';
            if (period) p["period"] = *period;
        } else if (out.kind == "power") {
            std::ofstream f(path);
            if (!f) throw InvalidInput("cannot write " + path);
            f.precision(17);
            f << "tau,power,error\n";
            double worst = 0.0;
            for (Eigen::Index i = 0; i < grid.n_tau(); ++i) {
                const auto e = integrate_power(grid, grid.taus[i]);
                f << e.tau << ',' << e.value << ',' << e.error << '\n';
                worst = std::max(worst, std::abs(e.error) / std::max(std::abs(e.value), 1e-300));
            }
            p["error_estimate"] = worst;
            check("power", "richardson", worst, tolerance(c, o, "power", 1e-2));
        } else if (out.kind == "ridge") {
            const auto ridge = extract_ridge(grid, c.ridge_omega_min * c.a_ref);
            write_ridge_csv(ridge, path);
            p["points"] = ridge.size();
        } else if (out.kind == "smooth") {
            if (!smoothed) smoothed = redimension(stationary_smooth(natural, c.trajectory, c.smooth_ratio), c.a_ref);
            write_grid_file(*smoothed, path);
            const double m0 = grid_mass(grid), m1 = grid_mass(*smoothed);
            const double drift = std::abs(m1 - m0) / std::max(std::abs(m0), 1e-300);
            p["error_estimate"] = drift;
            p["warnings"] = smoothed->meta.warnings;
            check("smooth", "mass", drift, tolerance(c, o, "smooth", 1e-6));
        } else if (out.kind == "compare") {
            const std::string ref_path = resolve(c.base_dir, out.path);
            const double d = compare_grids(grid, read_grid_csv(ref_path), Norm::max);
            p["path"] = ref_path;
            p["difference"] = d;
            check("compare", ref_path, d, tolerance(c, o, "compare", 1e-3));
        }
        p["seconds"] = seconds(t1);
        products.push_back(p);
    }

    report["products"] = products;
    report["checks"] = checks;
    report["status"] = ok ? "ok" : "accuracy-failure";
    return {report.dump(2), ok};
}

std::vector<ScenarioEntry> list_scenarios(const std::string& dir) {
    std::vector<ScenarioEntry> out;
    if (!fs::is_directory(dir)) throw InvalidInput("no scenario directory " + dir);
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".cfg") continue;
        std::ifstream f(e.path());
        std::string line, title;
        while (std::getline(f, line)) {
            line = trim(line);
            if (line.empty()) continue;
            if (line[0] == '#') title = trim(line.substr(1));
            break;
        }
        out.push_back({e.path().filename().string(), title});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.file < y.file; });
    return out;
}

std::vector<SelftestCheck> selftest(int threads) {
    std::vector<SelftestCheck> out;
    auto add = [&](const std::string& name, double v, double tol) { out.push_back({name, v, tol, v <= tol}); };

    {
        VacuumJob job(Trajectory(Constant{1.0}), Eigen::VectorXd::Zero(1), uniform_axis(-4.0, 4.0, 64));
        job.threads = threads;
        const auto g = vacuum_excess_wigner(job);
        double worst = 0.0;
        for (Eigen::Index k = 0; k < g.n_omega(); ++k) {
            const double ref = thermal_excess(1.0, g.omegas[k]);
            worst = std::max(worst, std::abs(g.values(0, k) - ref) / ref);
        }
        add("thermal law, relative", worst, 1e-3);

        VacuumJob wide(Trajectory(Constant{1.0}), Eigen::VectorXd::Zero(1), uniform_axis(-8.0, 8.0, 1601));
        wide.step = 0.05;
        wide.threads = threads;
        const auto e = integrate_power(vacuum_excess_wigner(wide), 0.0);
        add("power identity, relative", std::abs(e.value / (1.0 / (48.0 * pi * pi)) - 1.0), 1e-3);
    }
    {
        const WavepacketSpec wp{4.0, 0.5, 0.3};
        const double eta = 0.4;
        ExcitationJob job(GaussianFock{1, wp}, Trajectory(Constant{0.0}, eta), uniform_axis(-1.0, 1.0, 16),
                          uniform_axis(0.0, 6.0, 32));
        job.threads = threads;
        const auto g = excess_wigner(job);
        TimeFrequencyGrid ref(g.taus, g.omegas);
        for (Eigen::Index i = 0; i < ref.n_tau(); ++i)
            for (Eigen::Index k = 0; k < ref.n_omega(); ++k) {
                const auto p = gaussian_inertial_wigner(wp, eta, ref.taus[i], ref.omegas[k], Statistics::fock);
                ref.values(i, k) = p.main + p.interference;
            }
        add("inertial gaussian packet, of peak", compare_grids(g, ref, Norm::max), 1e-6);
    }
    {
        const FieldState st = MonochromaticFock{1, 2.0};
        ExcitationJob job(st, Trajectory(Constant{1.0}), uniform_axis(-1.0, 1.0, 4), uniform_axis(0.5, 4.0, 16));
        job.upsilon_max = 14.0;
        job.step = 1e-3;
        job.threads = threads;
        const auto g = excess_wigner(job);
        add("plane wave vs Bessel form, of peak",
            compare_grids(g, monochromatic_accel_wigner(st, 1.0, g.taus, g.omegas), Norm::max), 1e-3);
    }
    {
        const double a0 = 1.0, a1 = 1e-6, f = 1e-3 / two_pi, tau = 0.2 / f;
        const double add_ = -a1 * std::pow(two_pi * f, 2) * std::sin(two_pi * f * tau);
        double worst = 0.0;
        for (double w : {0.05, 0.1, 0.2, 0.4}) {
            const double full = first_order_sinusoidal(a0, a1, f, tau, w);
            const double lim = correction_W12(a0, add_, w);
            worst = std::max(worst, std::abs(full / lim - 1.0));
        }
        add("first order, slow-drive limit", worst, 1e-2);
    }
    return out;
}

}  // namespace wigdet
