#include "tgs/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tgs/model_data.hpp"
#include "tgs/stencils.hpp"

namespace tgs {

namespace {

constexpr int kSampleCount = 8;

// L1 distance of total densities on a shared grid.
double l1_diff(const Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "l1_diff");
    const double vol = a.grid.cell_volume();
    double sum = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]) * vol;
    return sum;
}

// Squared L2 distance of the pressure gradients on a shared grid.
double grad_p_sq_diff(const State& a, const State& b, double gamma) {
    require_same_grid(a.n.grid, b.n.grid, "grad_p_sq_diff");
    const VectorField ga = gradient(pressure(a.n, gamma));
    const VectorField gb = gradient(pressure(b.n, gamma));
    const double vol = a.n.grid.cell_volume();
    double sum = 0.0;
    for (int axis = 0; axis < a.n.grid.dim; ++axis)
        for (std::int64_t i = 0; i < ga[axis].size(); ++i) {
            const double d = ga[axis][i] - gb[axis][i];
            sum += d * d * vol;
        }
    return sum;
}

// Exact pressure gradient of the similarity profile along one axis: the
// pressure is tau^(-gamma*alpha) (C - kappa |x|^2 tau^(-2 beta))_+, linear in
// |x|^2, so its gradient is -2 kappa tau^(-gamma*alpha - 2 beta) x on the
// support and 0 outside.
double profile_grad_p_axis(const SimilarityProfile& prof, double t, double r2, double x_axis) {
    const double tau = prof.rescaled_time(t);
    const double arg = prof.C() - prof.kappa() * r2 * std::pow(tau, -2.0 * prof.beta());
    if (arg <= 0.0) return 0.0;
    return -2.0 * prof.kappa() *
           std::pow(tau, -prof.gamma * prof.alpha() - 2.0 * prof.beta()) * x_axis;
}

// L1 distance between the piecewise-constant numerical density and the exact
// profile as functions on the box: per-cell midpoint quadrature of
// |n_i - n_exact(x)|.  This is the full L1 error, representation error
// included, which is what makes the scheme's first-order character visible.
double l1_error_vs_profile(const Field& n_h, const SimilarityProfile& prof, double t) {
    const Grid& grid = n_h.grid;
    const double h = grid.dx();
    const int q = 64;
    double sum = 0.0;
    if (grid.dim == 1) {
        for (std::int64_t i = 0; i < n_h.size(); ++i) {
            const double a = grid.axis_center(static_cast<int>(i)) - 0.5 * h;
            double cell = 0.0;
            for (int s = 0; s < q; ++s) {
                const double x = a + (s + 0.5) * h / q;
                cell += std::abs(n_h[i] - prof.density(t, x * x));
            }
            sum += cell * h / q;
        }
        return sum;
    }
    const int q2 = 12;
    for (std::int64_t i = 0; i < n_h.size(); ++i) {
        const auto c = grid.center(i);
        double cell = 0.0;
        for (int sy = 0; sy < q2; ++sy)
            for (int sx = 0; sx < q2; ++sx) {
                const double x = c[0] + ((sx + 0.5) / q2 - 0.5) * h;
                const double y = c[1] + ((sy + 0.5) / q2 - 0.5) * h;
                cell += std::abs(n_h[i] - prof.density(t, x * x + y * y));
            }
        sum += cell * h * h / (q2 * q2);
    }
    return sum;
}

// L2 distance between the cell-constant numerical pressure gradient and the
// exact profile's pressure gradient, by the same per-cell quadrature.
double l2_grad_p_error_vs_profile(const Field& n_h, double gamma, const SimilarityProfile& prof,
                                  double t) {
    const Grid& grid = n_h.grid;
    const VectorField g_h = gradient(pressure(n_h, gamma));
    const double h = grid.dx();
    const int q = grid.dim == 1 ? 64 : 12;
    double sum = 0.0;
    for (std::int64_t i = 0; i < n_h.size(); ++i) {
        const auto c = grid.center(i);
        double cell = 0.0;
        if (grid.dim == 1) {
            for (int s = 0; s < q; ++s) {
                const double x = c[0] + ((s + 0.5) / q - 0.5) * h;
                const double d = g_h[0][i] - profile_grad_p_axis(prof, t, x * x, x);
                cell += d * d;
            }
            sum += cell * h / q;
        } else {
            for (int sy = 0; sy < q; ++sy)
                for (int sx = 0; sx < q; ++sx) {
                    const double x = c[0] + ((sx + 0.5) / q - 0.5) * h;
                    const double y = c[1] + ((sy + 0.5) / q - 0.5) * h;
                    const double r2 = x * x + y * y;
                    const double dx_err = g_h[0][i] - profile_grad_p_axis(prof, t, r2, x);
                    const double dy_err = g_h[1][i] - profile_grad_p_axis(prof, t, r2, y);
                    cell += dx_err * dx_err + dy_err * dy_err;
                }
            sum += cell * h * h / (q * q);
        }
    }
    return std::sqrt(sum);
}

void fill_orders(ConvergenceTable& table) {
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        ConvergenceRow& row = table.rows[i];
        const ConvergenceRow& prev = table.rows[i - 1];
        if (row.l1_n > 0.0 && prev.l1_n > 0.0 && row.param > 0.0 && prev.param > 0.0) {
            row.order = std::log(prev.l1_n / row.l1_n) / std::log(prev.param / row.param);
            row.has_order = true;
        }
    }
}

std::vector<double> shared_sample_times(const SchemeParams& s) {
    std::vector<double> times;
    const double span = s.t_end - s.start_time;
    for (int j = 1; j <= kSampleCount; ++j)
        times.push_back(s.start_time + span * j / kSampleCount);
    return times;
}

ConvergenceStudy study_dx(const RunConfig& cfg, int levels) {
    if (cfg.initial.preset != InitialPreset::Barenblatt)
        throw ConfigError("dx-axis study needs the self-similar preset as its exact reference");
    if (R_inf_norm(cfg.model) != 0.0)
        throw ConfigError("dx-axis study needs reactions off (r = 0): the exact reference "
                          "solves the reaction-free equation");
    if (cfg.scheme.epsilon != 0.0 || cfg.scheme.delta != 0.0)
        throw ConfigError("dx-axis study needs epsilon = 0 and delta = 0");

    ConvergenceStudy study;
    study.table.axis = ConvergeAxis::Dx;
    for (int k = 0; k < levels; ++k) {
        const int cells = cfg.cells_per_axis << k;
        const Grid grid{cfg.dim, cells, cfg.half_width};
        RunConfig level_cfg = cfg;
        level_cfg.cells_per_axis = cells;
        const InitialData initial = level_cfg.build_initial(grid);
        const RunResult result = run(initial, cfg.scheme, cfg.model);

        const SimilarityProfile prof(cfg.dim, cfg.model.gamma, cfg.initial.mass);

        ConvergenceRow row;
        row.param = grid.dx();
        row.l1_n = l1_error_vs_profile(result.final_state.n, prof, cfg.scheme.t_end);
        row.l2_grad_p = l2_grad_p_error_vs_profile(result.final_state.n, cfg.model.gamma, prof,
                                                   cfg.scheme.t_end);
        study.table.rows.push_back(row);

        LevelStates ls;
        ls.param = grid.dx();
        ls.at.push_back(result.final_state);
        study.levels.push_back(std::move(ls));
    }
    fill_orders(study.table);
    return study;
}

ConvergenceStudy study_ladder(const RunConfig& cfg, ConvergeAxis axis, int levels) {
    const double base = axis == ConvergeAxis::Epsilon ? 1e-1 : 1e-2;
    const Grid grid = cfg.make_grid();
    const std::vector<double> times = shared_sample_times(cfg.scheme);

    ConvergenceStudy study;
    study.table.axis = axis;
    for (int k = 0; k < levels; ++k) {
        const double value = base * std::pow(10.0, -k);
        SchemeParams params = cfg.scheme;
        params.sample_times = times;
        if (axis == ConvergeAxis::Epsilon)
            params.epsilon = value;
        else
            params.delta = value;
        const InitialData initial = cfg.build_initial(grid);
        RunResult result = run(initial, params, cfg.model);
        if (result.samples.size() != times.size())
            throw SolverError("convergence study: a level missed a sample time");
        LevelStates ls;
        ls.param = value;
        ls.at = std::move(result.samples);
        study.levels.push_back(std::move(ls));
    }

    const LevelStates& finest = study.levels.back();
    const double weight = (cfg.scheme.t_end - cfg.scheme.start_time) / kSampleCount;
    for (int k = 0; k + 1 < levels; ++k) {
        const LevelStates& level = study.levels[static_cast<std::size_t>(k)];
        ConvergenceRow row;
        row.param = level.param;
        double l1 = 0.0, l2sq = 0.0;
        for (std::size_t j = 0; j < level.at.size(); ++j) {
            l1 += weight * l1_diff(level.at[j].n, finest.at[j].n);
            l2sq += weight * grad_p_sq_diff(level.at[j], finest.at[j], cfg.model.gamma);
        }
        row.l1_n = l1;
        row.l2_grad_p = std::sqrt(l2sq);
        study.table.rows.push_back(row);
    }
    fill_orders(study.table);
    return study;
}

const char* axis_name(ConvergeAxis axis) {
    switch (axis) {
        case ConvergeAxis::Dx: return "dx";
        case ConvergeAxis::Epsilon: return "epsilon";
        default: return "delta";
    }
}

}  // namespace

ConvergenceStudy converge_study(const RunConfig& cfg, ConvergeAxis axis, int levels) {
    if (levels < 3) throw ConfigError("convergence study needs at least 3 levels");
    if (axis == ConvergeAxis::Dx) return study_dx(cfg, levels);
    return study_ladder(cfg, axis, levels);
}

std::string to_text(const ConvergenceTable& table) {
    std::ostringstream out;
    out << "axis: " << axis_name(table.axis) << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%14s %16s %16s %10s\n", axis_name(table.axis), "L1(n)",
                  "L2(grad p)", "order");
    out << buf;
    for (const ConvergenceRow& row : table.rows) {
        if (row.has_order)
            std::snprintf(buf, sizeof buf, "%14.6g %16.8e %16.8e %10.3f\n", row.param, row.l1_n,
                          row.l2_grad_p, row.order);
        else
            std::snprintf(buf, sizeof buf, "%14.6g %16.8e %16.8e %10s\n", row.param, row.l1_n,
                          row.l2_grad_p, "-");
        out << buf;
    }
    return out.str();
}

void write_convergence_csv(const ConvergenceTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << axis_name(table.axis) << ",l1_n,l2_grad_p,order\n";
    char buf[160];
    for (const ConvergenceRow& row : table.rows) {
        if (row.has_order)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", row.param, row.l1_n,
                          row.l2_grad_p, row.order);
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,\n", row.param, row.l1_n,
                          row.l2_grad_p);
        out << buf;
    }
    if (!out) throw IoError("short write: " + path);
}

}  // namespace tgs
