#include "tgs/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "tgs/snapshot.hpp"

namespace tgs {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') fail(line, "expected a number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') fail(line, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(line, "expected true or false, got '" + v + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Parser {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string section;

    void mark(const std::string& key, int line) {
        if (!seen.insert(section + "." + key).second)
            fail(line, "duplicate key '" + key + "' in section [" + section + "]");
    }

    void handle(const std::string& key, const std::string& value, int line) {
        if (section == "grid")
            handle_grid(key, value, line);
        else if (section == "model")
            handle_model(key, value, line);
        else if (section == "scheme")
            handle_scheme(key, value, line);
        else if (section == "initial")
            handle_initial(key, value, line);
        else if (section == "output")
            handle_output(key, value, line);
        else
            fail(line, "key '" + key + "' appears before any section header");
    }

    void handle_grid(const std::string& key, const std::string& v, int line) {
        if (key == "dim")
            cfg.dim = parse_int(v, line);
        else if (key == "cells_per_axis")
            cfg.cells_per_axis = parse_int(v, line);
        else if (key == "L_box")
            cfg.half_width = parse_double(v, line);
        else
            fail(line, "unknown key '" + key + "' in section [grid]");
    }

    void handle_model(const std::string& key, const std::string& v, int line) {
        ReactionModel& m = cfg.model;
        if (key == "gamma")
            m.gamma = parse_double(v, line);
        else if (key == "P_H")
            m.P_H = parse_double(v, line);
        else if (key == "family") {
            if (v == "linear_shared")
                m.family = RateFamily::LinearShared;
            else if (v == "linear_split")
                m.family = RateFamily::LinearSplit;
            else if (v == "custom")
                m.family = RateFamily::Custom;
            else
                fail(line, "unknown rate family '" + v + "'");
        } else if (key == "r")
            m.r = parse_double(v, line);
        else if (key == "theta")
            m.theta = parse_double(v, line);
        else if (key == "eta")
            m.eta = parse_double(v, line);
        else if (key == "kappa")
            m.kappa = parse_double(v, line);
        else if (key == "f1_const")
            m.f1[0] = parse_double(v, line);
        else if (key == "f1_slope")
            m.f1[1] = parse_double(v, line);
        else if (key == "f2_const")
            m.f2[0] = parse_double(v, line);
        else if (key == "f2_slope")
            m.f2[1] = parse_double(v, line);
        else if (key == "g1_const")
            m.g1[0] = parse_double(v, line);
        else if (key == "g1_slope")
            m.g1[1] = parse_double(v, line);
        else if (key == "g2_const")
            m.g2[0] = parse_double(v, line);
        else if (key == "g2_slope")
            m.g2[1] = parse_double(v, line);
        else
            fail(line, "unknown key '" + key + "' in section [model]");
    }

    void handle_scheme(const std::string& key, const std::string& v, int line) {
        SchemeParams& s = cfg.scheme;
        if (key == "epsilon")
            s.epsilon = parse_double(v, line);
        else if (key == "delta")
            s.delta = parse_double(v, line);
        else if (key == "cfl_safety")
            s.cfl_safety = parse_double(v, line);
        else if (key == "t_end")
            s.t_end = parse_double(v, line);
        else if (key == "diag_every")
            s.diag_every = parse_int(v, line);
        else if (key == "boundary") {
            if (v == "neumann")
                s.boundary = BoundaryKind::Neumann;
            else if (v == "dirichlet")
                s.boundary = BoundaryKind::Dirichlet;
            else
                fail(line, "unknown boundary '" + v + "' (neumann or dirichlet)");
        } else if (key == "bulk_localizer_radius")
            s.bulk_localizer_radius = parse_double(v, line);
        else if (key == "lap_localizer_radius")
            s.lap_localizer_radius = parse_double(v, line);
        else
            fail(line, "unknown key '" + key + "' in section [scheme]");
    }

    void handle_initial(const std::string& key, const std::string& v, int line) {
        InitialConfig& ic = cfg.initial;
        if (key == "preset") {
            if (v == "barenblatt")
                ic.preset = InitialPreset::Barenblatt;
            else if (v == "gaussian_bumps")
                ic.preset = InitialPreset::GaussianBumps;
            else if (v == "two_bumps_segregated")
                ic.preset = InitialPreset::TwoBumpsSegregated;
            else if (v == "homeostatic_plateau")
                ic.preset = InitialPreset::HomeostaticPlateau;
            else if (v == "from_snapshot")
                ic.preset = InitialPreset::FromSnapshot;
            else
                fail(line, "unknown preset '" + v + "'");
        } else if (key == "mass")
            ic.mass = parse_double(v, line);
        else if (key == "t0")
            ic.t0 = parse_double(v, line);
        else if (key == "amp1")
            ic.amp1 = parse_double(v, line);
        else if (key == "amp2")
            ic.amp2 = parse_double(v, line);
        else if (key == "sigma1")
            ic.sigma1 = parse_double(v, line);
        else if (key == "sigma2")
            ic.sigma2 = parse_double(v, line);
        else if (key == "center1")
            ic.center1 = parse_double(v, line);
        else if (key == "center2")
            ic.center2 = parse_double(v, line);
        else if (key == "bump_amp")
            ic.bump_amp = parse_double(v, line);
        else if (key == "bump_width")
            ic.bump_width = parse_double(v, line);
        else if (key == "bump_separation")
            ic.bump_separation = parse_double(v, line);
        else if (key == "plateau_c1")
            ic.plateau_c1 = parse_double(v, line);
        else if (key == "snapshot")
            ic.snapshot_path = v;
        else
            fail(line, "unknown key '" + key + "' in section [initial]");
    }

    void handle_output(const std::string& key, const std::string& v, int line) {
        OutputConfig& o = cfg.output;
        if (key == "directory")
            o.directory = v;
        else if (key == "snapshot_every")
            o.snapshot_every = parse_int(v, line);
        else if (key == "emit_plots")
            o.emit_plots = parse_bool(v, line);
        else
            fail(line, "unknown key '" + key + "' in section [output]");
    }
};

void validate(const RunConfig& cfg) {
    auto reject = [](const std::string& msg) { throw ConfigError("invalid config: " + msg); };

    if (cfg.dim != 1 && cfg.dim != 2) reject("grid.dim must be 1 or 2");
    if (cfg.cells_per_axis < 8) reject("grid.cells_per_axis must be at least 8");
    if (!(cfg.half_width > 0.0)) reject("grid.L_box must be positive");

    const ReactionModel& m = cfg.model;
    if (!(m.gamma > 1.0)) reject("model.gamma must be > 1 (pressure law exponent)");
    if (!(m.P_H > 0.0)) reject("model.P_H must be positive");
    if (!(m.r >= 0.0)) reject("model.r must be >= 0");
    if (m.theta < 0.0 || m.theta > 1.0) reject("model.theta must lie in [0, 1]");
    if (m.eta < 0.0 || m.eta > 1.0) reject("model.eta must lie in [0, 1]");
    if (!(m.kappa >= 0.0)) reject("model.kappa must be >= 0");

    const SchemeParams& s = cfg.scheme;
    if (!(s.epsilon >= 0.0)) reject("scheme.epsilon must be >= 0");
    if (!(s.delta >= 0.0)) reject("scheme.delta must be >= 0");
    if (!(s.cfl_safety > 0.0 && s.cfl_safety <= 1.0)) reject("scheme.cfl_safety must lie in (0, 1]");
    if (!(s.t_end >= s.start_time)) reject("scheme.t_end must be >= the run's start time");
    if (s.diag_every < 1) reject("scheme.diag_every must be >= 1");
    for (double radius : {s.bulk_localizer_radius, s.lap_localizer_radius}) {
        if (radius < 0.0) continue;  // auto-sized from the box
        if (!(radius > 0.0)) reject("localizer radius must be positive (or -1 for auto)");
        if (radius + 1.0 > cfg.half_width + 1e-12)
            throw LocalizerExceedsBox("localizer radius " + fmt(radius) +
                                      " needs L_box >= " + fmt(radius + 1.0) + ", have " +
                                      fmt(cfg.half_width));
    }

    const InitialConfig& ic = cfg.initial;
    switch (ic.preset) {
        case InitialPreset::Barenblatt: {
            if (!(ic.mass > 0.0)) reject("initial.mass must be positive");
            if (!(ic.t0 > 0.0)) reject("initial.t0 must be positive");
            if (!(s.t_end >= ic.t0)) reject("scheme.t_end must be >= initial.t0");
            SimilarityProfile prof(cfg.dim, m.gamma, ic.mass);
            const double reach = prof.support_radius(s.t_end);
            if (reach > cfg.half_width)
                reject("self-similar support radius " + fmt(reach) + " at t_end exceeds L_box " +
                       fmt(cfg.half_width));
            break;
        }
        case InitialPreset::GaussianBumps: {
            if (ic.amp1 < 0.0 || ic.amp2 < 0.0) reject("initial amplitudes must be >= 0");
            if (!(ic.sigma1 > 0.0) || !(ic.sigma2 > 0.0)) reject("initial sigmas must be positive");
            if (std::abs(ic.center1) > cfg.half_width || std::abs(ic.center2) > cfg.half_width)
                reject("initial centers must lie inside the box");
            break;
        }
        case InitialPreset::TwoBumpsSegregated: {
            if (ic.bump_amp < 0.0) reject("initial.bump_amp must be >= 0");
            if (!(ic.bump_width > 0.0)) reject("initial.bump_width must be positive");
            if (ic.bump_separation < 0.0) reject("initial.bump_separation must be >= 0");
            if (0.5 * ic.bump_separation + ic.bump_width > cfg.half_width)
                reject("bumps extend past the box: separation/2 + width must be <= L_box");
            break;
        }
        case InitialPreset::HomeostaticPlateau: {
            if (ic.plateau_c1 < 0.0 || ic.plateau_c1 > 1.0)
                reject("initial.plateau_c1 must lie in [0, 1]");
            break;
        }
        case InitialPreset::FromSnapshot: {
            if (ic.snapshot_path.empty()) reject("initial.snapshot must name a state file");
            break;
        }
    }

    if (cfg.output.snapshot_every < 0) reject("output.snapshot_every must be >= 0");
    if (cfg.output.directory.empty()) reject("output.directory must not be empty");
}

void echo_defaults(RunConfig& cfg, const std::set<std::string>& seen) {
    using Entry = std::pair<std::string, std::function<std::string()>>;
    const ReactionModel& m = cfg.model;
    const SchemeParams& s = cfg.scheme;
    const InitialConfig& ic = cfg.initial;
    const OutputConfig& o = cfg.output;

    std::vector<Entry> entries = {
        {"grid.dim", [&] { return std::to_string(cfg.dim); }},
        {"grid.cells_per_axis", [&] { return std::to_string(cfg.cells_per_axis); }},
        {"grid.L_box", [&] { return fmt(cfg.half_width); }},
        {"model.gamma", [&] { return fmt(m.gamma); }},
        {"model.P_H", [&] { return fmt(m.P_H); }},
        {"model.family",
         [&] {
             switch (m.family) {
                 case RateFamily::LinearShared: return std::string("linear_shared");
                 case RateFamily::LinearSplit: return std::string("linear_split");
                 default: return std::string("custom");
             }
         }},
        {"scheme.epsilon", [&] { return fmt(s.epsilon); }},
        {"scheme.delta", [&] { return fmt(s.delta); }},
        {"scheme.cfl_safety", [&] { return fmt(s.cfl_safety); }},
        {"scheme.t_end", [&] { return fmt(s.t_end); }},
        {"scheme.diag_every", [&] { return std::to_string(s.diag_every); }},
        {"scheme.boundary",
         [&] {
             return std::string(s.boundary == BoundaryKind::Neumann ? "neumann" : "dirichlet");
         }},
        {"scheme.bulk_localizer_radius", [&] { return fmt(s.bulk_localizer_radius); }},
        {"scheme.lap_localizer_radius", [&] { return fmt(s.lap_localizer_radius); }},
        {"output.directory", [&] { return o.directory; }},
        {"output.snapshot_every", [&] { return std::to_string(o.snapshot_every); }},
        {"output.emit_plots", [&] { return std::string(o.emit_plots ? "true" : "false"); }},
    };

    if (m.family != RateFamily::Custom) entries.push_back({"model.r", [&] { return fmt(m.r); }});
    if (m.family == RateFamily::LinearShared) {
        entries.push_back({"model.theta", [&] { return fmt(m.theta); }});
        entries.push_back({"model.eta", [&] { return fmt(m.eta); }});
    }
    if (m.family == RateFamily::LinearSplit)
        entries.push_back({"model.kappa", [&] { return fmt(m.kappa); }});
    if (m.family == RateFamily::Custom) {
        entries.push_back({"model.f1_const", [&] { return fmt(m.f1[0]); }});
        entries.push_back({"model.f1_slope", [&] { return fmt(m.f1[1]); }});
        entries.push_back({"model.f2_const", [&] { return fmt(m.f2[0]); }});
        entries.push_back({"model.f2_slope", [&] { return fmt(m.f2[1]); }});
        entries.push_back({"model.g1_const", [&] { return fmt(m.g1[0]); }});
        entries.push_back({"model.g1_slope", [&] { return fmt(m.g1[1]); }});
        entries.push_back({"model.g2_const", [&] { return fmt(m.g2[0]); }});
        entries.push_back({"model.g2_slope", [&] { return fmt(m.g2[1]); }});
    }

    entries.push_back({"initial.preset", [&] {
                           switch (ic.preset) {
                               case InitialPreset::Barenblatt: return std::string("barenblatt");
                               case InitialPreset::GaussianBumps:
                                   return std::string("gaussian_bumps");
                               case InitialPreset::TwoBumpsSegregated:
                                   return std::string("two_bumps_segregated");
                               case InitialPreset::HomeostaticPlateau:
                                   return std::string("homeostatic_plateau");
                               default: return std::string("from_snapshot");
                           }
                       }});
    switch (ic.preset) {
        case InitialPreset::Barenblatt:
            entries.push_back({"initial.mass", [&] { return fmt(ic.mass); }});
            entries.push_back({"initial.t0", [&] { return fmt(ic.t0); }});
            break;
        case InitialPreset::GaussianBumps:
            entries.push_back({"initial.amp1", [&] { return fmt(ic.amp1); }});
            entries.push_back({"initial.amp2", [&] { return fmt(ic.amp2); }});
            entries.push_back({"initial.sigma1", [&] { return fmt(ic.sigma1); }});
            entries.push_back({"initial.sigma2", [&] { return fmt(ic.sigma2); }});
            entries.push_back({"initial.center1", [&] { return fmt(ic.center1); }});
            entries.push_back({"initial.center2", [&] { return fmt(ic.center2); }});
            break;
        case InitialPreset::TwoBumpsSegregated:
            entries.push_back({"initial.bump_amp", [&] { return fmt(ic.bump_amp); }});
            entries.push_back({"initial.bump_width", [&] { return fmt(ic.bump_width); }});
            entries.push_back({"initial.bump_separation", [&] { return fmt(ic.bump_separation); }});
            break;
        case InitialPreset::HomeostaticPlateau:
            entries.push_back({"initial.plateau_c1", [&] { return fmt(ic.plateau_c1); }});
            break;
        case InitialPreset::FromSnapshot:
            entries.push_back({"initial.snapshot", [&] { return ic.snapshot_path; }});
            break;
    }

    for (const auto& [key, render] : entries)
        if (!seen.count(key)) cfg.defaults_applied.push_back(key + " = " + render());
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Parser p;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (name != "grid" && name != "model" && name != "scheme" && name != "initial" &&
                name != "output")
                fail(line, "unknown section [" + name + "]");
            p.section = name;
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");
        p.mark(key, line);
        p.handle(key, value, line);
    }

    if (p.cfg.initial.preset == InitialPreset::Barenblatt)
        p.cfg.scheme.start_time = p.cfg.initial.t0;

    validate(p.cfg);
    echo_defaults(p.cfg, p.seen);
    return p.cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

InitialData RunConfig::build_initial(const Grid& grid) const {
    InitialData data;
    data.n1_0 = Field(grid);
    data.n2_0 = Field(grid);
    const std::int64_t count = grid.total_cells();

    switch (initial.preset) {
        case InitialPreset::Barenblatt: {
            data.n1_0 = barenblatt(grid, model.gamma, initial.t0, initial.mass);
            break;
        }
        case InitialPreset::GaussianBumps: {
            for (std::int64_t i = 0; i < count; ++i) {
                const auto c = grid.center(i);
                const double dx1 = c[0] - initial.center1;
                const double dx2 = c[0] - initial.center2;
                const double d1 = dx1 * dx1 + c[1] * c[1];
                const double d2 = dx2 * dx2 + c[1] * c[1];
                data.n1_0[i] = initial.amp1 * std::exp(-d1 / (2.0 * initial.sigma1 * initial.sigma1));
                data.n2_0[i] = initial.amp2 * std::exp(-d2 / (2.0 * initial.sigma2 * initial.sigma2));
            }
            break;
        }
        case InitialPreset::TwoBumpsSegregated: {
            const double half_sep = 0.5 * initial.bump_separation;
            auto bump = [&](double x, double y, double cx) {
                const double dxx = x - cx;
                const double s2 = (dxx * dxx + y * y) / (initial.bump_width * initial.bump_width);
                if (s2 >= 1.0) return 0.0;
                return initial.bump_amp * std::exp(1.0 - 1.0 / (1.0 - s2));
            };
            for (std::int64_t i = 0; i < count; ++i) {
                const auto c = grid.center(i);
                data.n1_0[i] = bump(c[0], c[1], -half_sep);
                data.n2_0[i] = bump(c[0], c[1], half_sep);
            }
            break;
        }
        case InitialPreset::HomeostaticPlateau: {
            const double n_star = std::pow(model.P_H, 1.0 / model.gamma);
            for (std::int64_t i = 0; i < count; ++i) {
                data.n1_0[i] = initial.plateau_c1 * n_star;
                data.n2_0[i] = (1.0 - initial.plateau_c1) * n_star;
            }
            break;
        }
        case InitialPreset::FromSnapshot: {
            const Snapshot snap = read_snapshot(initial.snapshot_path);
            check_snapshot_matches(snap, grid, model);
            return split_snapshot(snap);
        }
    }

    double n_max = 0.0;
    for (std::int64_t i = 0; i < count; ++i)
        n_max = std::max(n_max, data.n1_0[i] + data.n2_0[i]);
    if (std::pow(n_max, model.gamma) > model.P_H * (1.0 + 1e-6))
        throw ConfigError("initial pressure " + std::to_string(std::pow(n_max, model.gamma)) +
                          " exceeds the homeostatic ceiling P_H = " + std::to_string(model.P_H));
    return data;
}

void check_snapshot_matches(const Snapshot& snap, const Grid& grid, const ReactionModel& model) {
    const Grid& sg = snap.state.n.grid;
    if (sg.dim != grid.dim)
        throw DimensionMismatch("snapshot is " + std::to_string(sg.dim) + "D but the config grid is " +
                                std::to_string(grid.dim) + "D");
    if (sg.cells_per_axis != grid.cells_per_axis || sg.half_width != grid.half_width)
        throw ConfigError("snapshot grid (" + std::to_string(sg.cells_per_axis) + " cells, L_box " +
                          std::to_string(sg.half_width) + ") does not match the config grid");
    if (std::abs(snap.gamma - model.gamma) > 1e-12)
        throw ConfigError("snapshot was produced with gamma = " + std::to_string(snap.gamma) +
                          " but the config sets gamma = " + std::to_string(model.gamma));
}

InitialData split_snapshot(const Snapshot& snap) {
    const Grid& grid = snap.state.n.grid;
    InitialData data;
    data.n1_0 = Field(grid);
    data.n2_0 = Field(grid);
    for (std::int64_t i = 0; i < grid.total_cells(); ++i) {
        data.n1_0[i] = snap.state.c1[i] * snap.state.n[i];
        data.n2_0[i] = (1.0 - snap.state.c1[i]) * snap.state.n[i];
    }
    return data;
}

}  // namespace tgs
