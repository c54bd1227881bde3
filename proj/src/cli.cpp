#include "tgs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tgs/config.hpp"
#include "tgs/convergence.hpp"
#include "tgs/io.hpp"
#include "tgs/scheme.hpp"
#include "tgs/snapshot.hpp"
#include "tgs/svg_plot.hpp"

namespace tgs {

namespace {

const char* kUsage =
    "usage: tgs <command> [options]\n"
    "\n"
    "commands:\n"
    "  run <config>                integrate one scenario, write diagnostics, audit\n"
    "  converge <config> --axis A --levels N\n"
    "                              refinement study, A in {dx, epsilon, delta}, N >= 3\n"
    "  validate <config>           print the model assumption report\n"
    "  barenblatt --gamma G --dim D --t T [--mass M] [--cells N] [--box L]\n"
    "                              print exact self-similar profile stats\n"
    "\n"
    "global options:\n"
    "  --output-dir DIR            override the [output] directory\n"
    "  --emit-plots                write SVG plots next to the CSV outputs\n"
    "  --seed N                    reserved; the solver is deterministic (accepted, unused)\n"
    "  --override-assumptions      run even if the assumption checks fail (run only);\n"
    "                              disables the pressure-ceiling step guard so the\n"
    "                              violation lands in the audit report instead\n"
    "\n"
    "exit codes: 0 ok; 2 usage/config; 3 assumptions failed; 4 diverged;\n"
    "            5 audit failed; 6 I/O error\n";

struct CliOptions {
    std::string command;
    std::string config_path;
    std::string output_dir;
    bool have_output_dir = false;
    bool emit_plots = false;
    bool override_assumptions = false;
    std::optional<long> seed;

    std::string axis;
    int levels = 0;

    double gamma = 2.0, t = 1.0, mass = 1.0, box = 6.0;
    int dim = 1, cells = 256;
    bool have_gamma = false, have_dim = false, have_t = false;
};

[[noreturn]] void fail_usage(const std::string& msg) { throw ConfigError(msg); }

double arg_double(const std::string& flag, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') fail_usage(flag + " expects a number, got '" + v + "'");
    return x;
}

long arg_long(const std::string& flag, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') fail_usage(flag + " expects an integer, got '" + v + "'");
    return x;
}

CliOptions parse_args(int argc, const char* const* argv) {
    CliOptions opt;
    opt.command = argv[1];
    int i = 2;
    auto next = [&](const std::string& flag) -> std::string {
        if (i + 1 >= argc) fail_usage(flag + " needs a value");
        return argv[++i];
    };
    for (; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--output-dir") {
            opt.output_dir = next(a);
            opt.have_output_dir = true;
        } else if (a == "--emit-plots") {
            opt.emit_plots = true;
        } else if (a == "--seed") {
            opt.seed = arg_long(a, next(a));
        } else if (a == "--override-assumptions") {
            opt.override_assumptions = true;
        } else if (a == "--axis") {
            opt.axis = next(a);
        } else if (a == "--levels") {
            opt.levels = static_cast<int>(arg_long(a, next(a)));
        } else if (a == "--gamma") {
            opt.gamma = arg_double(a, next(a));
            opt.have_gamma = true;
        } else if (a == "--dim") {
            opt.dim = static_cast<int>(arg_long(a, next(a)));
            opt.have_dim = true;
        } else if (a == "--t") {
            opt.t = arg_double(a, next(a));
            opt.have_t = true;
        } else if (a == "--mass") {
            opt.mass = arg_double(a, next(a));
        } else if (a == "--cells") {
            opt.cells = static_cast<int>(arg_long(a, next(a)));
        } else if (a == "--box") {
            opt.box = arg_double(a, next(a));
        } else if (a.rfind("--", 0) == 0) {
            fail_usage("unknown option " + a);
        } else if (opt.config_path.empty()) {
            opt.config_path = a;
        } else {
            fail_usage("unexpected argument '" + a + "'");
        }
    }
    return opt;
}

std::string path_join(const std::string& dir, const std::string& name) {
    return dir + "/" + name;
}

void make_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

RunConfig load_with_overrides(const CliOptions& opt) {
    if (opt.config_path.empty()) fail_usage(opt.command + " needs a config file path");
    RunConfig cfg = load_config_file(opt.config_path);
    if (opt.have_output_dir) cfg.output.directory = opt.output_dir;
    if (opt.emit_plots) cfg.output.emit_plots = true;
    return cfg;
}

void note_seed(const CliOptions& opt) {
    if (opt.seed)
        std::printf("seed %ld accepted and unused: the solver has no randomness\n", *opt.seed);
}

int cmd_run(const CliOptions& opt) {
    RunConfig cfg = load_with_overrides(opt);
    note_seed(opt);

    std::string log;
    for (const std::string& d : cfg.defaults_applied) log += "default: " + d + "\n";

    const AssumptionReport assumptions = validate_assumptions(cfg.model, cfg.dim);
    log += to_text(assumptions);
    SchemeParams params = cfg.scheme;
    if (!assumptions.all_pass()) {
        if (!opt.override_assumptions) {
            std::fputs(to_text(assumptions).c_str(), stderr);
            std::fputs("model failed the assumption checks; use --override-assumptions to run "
                       "anyway\n",
                       stderr);
            return kExitAssumptions;
        }
        params.enforce_max_principle = false;
        const char* warning =
            "warning: assumption checks failed; proceeding on user override with the "
            "pressure-ceiling step guard disabled\n";
        log += warning;
        std::fputs(warning, stderr);
    }

    const Grid grid = cfg.make_grid();
    InitialData initial;
    if (cfg.initial.preset == InitialPreset::FromSnapshot) {
        const Snapshot snap = read_snapshot(cfg.initial.snapshot_path);
        check_snapshot_matches(snap, grid, cfg.model);
        params.start_time = snap.state.t;
        if (params.t_end < params.start_time)
            throw ConfigError("scheme.t_end precedes the snapshot time " +
                              std::to_string(snap.state.t));
        initial = split_snapshot(snap);
    } else {
        initial = cfg.build_initial(grid);
    }

    const std::string& dir = cfg.output.directory;
    make_output_dir(dir);

    int record_idx = 0;
    RecordHook hook = [&](const State& s, const DiagnosticsRecord&) {
        if (cfg.output.snapshot_every > 0 && record_idx % cfg.output.snapshot_every == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "state_%06d.tgs", record_idx);
            write_snapshot(s, cfg.model.gamma, path_join(dir, name));
        }
        ++record_idx;
    };

    const RunResult result = run(initial, params, cfg.model, hook);

    write_diagnostics_csv(result.series, path_join(dir, "diagnostics.csv"));
    write_snapshot(result.final_state, cfg.model.gamma, path_join(dir, "final.tgs"));
    const AuditReport report = audit(result.series, cfg.model);
    const std::string report_text = to_text(report);
    write_text_file(path_join(dir, "audit_report.txt"), report_text);
    for (const std::string& w : result.warnings) log += "warning: " + w + "\n";
    log += report_text;
    write_text_file(path_join(dir, "run.log"), log);
    if (cfg.output.emit_plots) write_diagnostics_svg(result.series, path_join(dir, "diagnostics.svg"));

    std::printf("%zu records, final t = %.17g, outputs in %s\n", result.series.records.size(),
                result.final_state.t, dir.c_str());
    std::fputs(report_text.c_str(), stdout);
    return report.all_pass() ? kExitOk : kExitAuditFailed;
}

int cmd_converge(const CliOptions& opt) {
    RunConfig cfg = load_with_overrides(opt);
    note_seed(opt);

    ConvergeAxis axis;
    if (opt.axis == "dx")
        axis = ConvergeAxis::Dx;
    else if (opt.axis == "epsilon")
        axis = ConvergeAxis::Epsilon;
    else if (opt.axis == "delta")
        axis = ConvergeAxis::Delta;
    else
        fail_usage("--axis must be dx, epsilon, or delta");
    if (opt.levels < 3) fail_usage("--levels must be at least 3");

    const AssumptionReport assumptions = validate_assumptions(cfg.model, cfg.dim);
    if (!assumptions.all_pass()) {
        std::fputs(to_text(assumptions).c_str(), stderr);
        return kExitAssumptions;
    }

    const ConvergenceStudy study = converge_study(cfg, axis, opt.levels);

    const std::string& dir = cfg.output.directory;
    make_output_dir(dir);
    write_convergence_csv(study.table, path_join(dir, "convergence.csv"));
    for (std::size_t lvl = 0; lvl < study.levels.size(); ++lvl)
        for (std::size_t j = 0; j < study.levels[lvl].at.size(); ++j) {
            char name[64];
            std::snprintf(name, sizeof name, "level_%zu_sample_%02zu.tgs", lvl, j);
            write_snapshot(study.levels[lvl].at[j], cfg.model.gamma, path_join(dir, name));
        }
    if (cfg.output.emit_plots) write_convergence_svg(study.table, path_join(dir, "convergence.svg"));

    std::fputs(to_text(study.table).c_str(), stdout);
    std::printf("outputs in %s\n", dir.c_str());
    return kExitOk;
}

int cmd_validate(const CliOptions& opt) {
    if (opt.config_path.empty()) fail_usage("validate needs a config file path");
    const RunConfig cfg = load_config_file(opt.config_path);
    const AssumptionReport assumptions = validate_assumptions(cfg.model, cfg.dim);
    std::fputs(to_text(assumptions).c_str(), stdout);
    return assumptions.all_pass() ? kExitOk : kExitAssumptions;
}

int cmd_barenblatt(const CliOptions& opt) {
    if (!opt.have_gamma || !opt.have_dim || !opt.have_t)
        fail_usage("barenblatt needs --gamma, --dim, and --t");
    if (!(opt.gamma > 1.0)) fail_usage("--gamma must be > 1");
    if (opt.dim != 1 && opt.dim != 2) fail_usage("--dim must be 1 or 2");
    if (!(opt.t > 0.0)) fail_usage("--t must be positive");
    if (!(opt.mass > 0.0)) fail_usage("--mass must be positive");
    if (opt.cells < 8) fail_usage("--cells must be at least 8");
    if (!(opt.box > 0.0)) fail_usage("--box must be positive");

    const SimilarityProfile prof(opt.dim, opt.gamma, opt.mass);
    const Grid grid{opt.dim, opt.cells, opt.box};
    const Field n = barenblatt(grid, opt.gamma, opt.t, opt.mass);

    const double vol = grid.cell_volume();
    double discrete_mass = 0.0, moment = 0.0, n_max = 0.0;
    for (std::int64_t i = 0; i < n.size(); ++i) {
        discrete_mass += n[i] * vol;
        moment += grid.radius2(i) * n[i] * vol;
        n_max = std::max(n_max, n[i]);
    }

    std::printf("self-similar profile stats\n");
    std::printf("  gamma = %g, dim = %d, t = %.17g, mass = %.17g\n", opt.gamma, opt.dim, opt.t,
                opt.mass);
    std::printf("  support_radius = %.17g\n", prof.support_radius(opt.t));
    std::printf("  max_density    = %.17g\n", prof.max_density(opt.t));
    std::printf("  max_pressure   = %.17g\n", std::pow(prof.max_density(opt.t), opt.gamma));
    std::printf("  grid_max       = %.17g  (%d cells per axis, box half-width %g)\n", n_max,
                opt.cells, opt.box);
    std::printf("  discrete_mass  = %.17g\n", discrete_mass);
    std::printf("  second_moment  = %.17g\n", moment);
    if (prof.support_radius(opt.t) > opt.box)
        std::printf("  note: support extends past the box; discrete mass is truncated\n");
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return kExitUsage;
    }
    const std::string first = argv[1];
    if (first == "--help" || first == "-h" || first == "help") {
        std::fputs(kUsage, stdout);
        return kExitOk;
    }

    try {
        const CliOptions opt = parse_args(argc, argv);
        if (opt.command == "run") return cmd_run(opt);
        if (opt.command == "converge") return cmd_converge(opt);
        if (opt.command == "validate") return cmd_validate(opt);
        if (opt.command == "barenblatt") return cmd_barenblatt(opt);
        std::fputs(kUsage, stderr);
        return kExitUsage;
    } catch (const Diverged& e) {
        std::fprintf(stderr, "diverged: %s\n", e.what());
        return kExitDiverged;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const SnapshotError& e) {
        std::fprintf(stderr, "snapshot error: %s\n", e.what());
        return kExitIo;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitUsage;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return kExitIo;
    }
}

}  // namespace tgs
