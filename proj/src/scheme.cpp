#include "tgs/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tgs/parallel.hpp"
#include "tgs/stencils.hpp"

namespace tgs {

Field State::n1() const {
    Field out(n.grid);
    const std::int64_t total = n.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) out[i] = c1[i] * n[i];
    return out;
}

Field State::n2() const {
    Field out(n.grid);
    const std::int64_t total = n.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) out[i] = (1.0 - c1[i]) * n[i];
    return out;
}

namespace {

constexpr double kTiny = 1e-300;        // guards all-zero states in cfl_dt
constexpr double kMaxPrincipleTol = 1e-6;

double cfl_dt_cached(const State& state, const SchemeParams& params,
                     const ReactionModel& model, double R_inf) {
    const Grid& g = state.n.grid;
    const double dx = g.dx();
    const double dx2 = dx * dx;
    const int d = g.dim;
    const std::int64_t total = g.total_cells();

    const Field p = pressure(state.n, model.gamma);
    const double p_max = deterministic_max(total, [&](std::int64_t i) { return p[i]; });
    const VectorField grad_p = gradient(p);
    double grad_max = 0.0;
    for (int a = 0; a < d; ++a)
        grad_max = std::max(grad_max, deterministic_max(total, [&](std::int64_t i) {
                                return std::abs(grad_p[a][i]);
                            }));

    const double diffusion = dx2 / (2.0 * d * model.gamma * p_max + kTiny);
    const double advection = dx / (grad_max + kTiny);
    const double eps_diffusion = dx2 / (2.0 * d * params.epsilon * p_max + kTiny);
    const double reaction = 1.0 / (R_inf + kTiny);

    double dt = params.cfl_safety *
                std::min(std::min(diffusion, advection), std::min(eps_diffusion, reaction));
    const double remaining = params.t_end - state.t;
    if (remaining > 0.0) dt = std::min(dt, remaining);
    return dt;
}

}  // namespace

double cfl_dt(const State& state, const SchemeParams& params, const ReactionModel& model) {
    return cfl_dt_cached(state, params, model, R_inf_norm(model));
}

State step(const State& state, double dt, const SchemeParams& params,
           const ReactionModel& model, double* clamp_accum) {
    const Grid& g = state.n.grid;
    require_same_grid(g, state.c1.grid, "step");
    const std::int64_t total = g.total_cells();
    const double vol = g.cell_volume();

    const Field p = pressure(state.n, model.gamma);
    const VectorField grad_p = gradient(p);
    const Field div_n = div_density_flux(state.n, p, params.boundary);

    VectorField minus_grad(g);
    for (int a = 0; a < g.dim; ++a) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) minus_grad[a][i] = -grad_p[a][i];
    }
    const Field advect = upwind_advect(state.c1, minus_grad);
    const bool with_eps = params.epsilon > 0.0;
    const Field eps_flux = with_eps ? div_density_flux(p, state.c1, params.boundary) : Field();

    State next;
    next.n = Field(g);
    next.c1 = Field(g);
    next.t = state.t + dt;

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const Rates rt = rates(model, p[i]);
        const double c1 = state.c1[i];
        const double R = c1 * rt.F + (1.0 - c1) * rt.G;
        next.n[i] = state.n[i] + dt * (div_n[i] + state.n[i] * R);
        double dc = advect[i] + c1 * rt.F1 + (1.0 - c1) * rt.G1 - c1 * R;
        if (with_eps) dc += params.epsilon * eps_flux[i];
        next.c1[i] = c1 + dt * dc;
    }

    // Positivity / range clamps, with the moved mass accounted rather than
    // silently discarded.
    const double clamp_n = vol * deterministic_sum(total, [&](std::int64_t i) {
        return next.n[i] < 0.0 ? -next.n[i] : 0.0;
    });
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i)
        if (next.n[i] < 0.0) next.n[i] = 0.0;

    const double clamp_c = vol * deterministic_sum(total, [&](std::int64_t i) {
        const double c = next.c1[i];
        const double excess = c < 0.0 ? -c : (c > 1.0 ? c - 1.0 : 0.0);
        return excess * next.n[i];
    });
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i)
        next.c1[i] = std::clamp(next.c1[i], 0.0, 1.0);

    const double n_max = deterministic_max(total, [&](std::int64_t i) { return next.n[i]; });
    if (!std::isfinite(n_max))
        throw StepRejected("step: non-finite density after update (dt too large)");
    if (params.enforce_max_principle &&
        std::pow(n_max, model.gamma) > model.P_H * (1.0 + kMaxPrincipleTol))
        throw StepRejected("step: pressure " + std::to_string(std::pow(n_max, model.gamma)) +
                           " exceeds ceiling " + std::to_string(model.P_H) +
                           " (dt too large)");

    if (clamp_accum) *clamp_accum += clamp_n + clamp_c;
    return next;
}

namespace {

double resolve_localizer_radius(const Grid& g, double requested, double factor) {
    if (requested >= 0.0) return requested;
    const double r = std::min(factor * g.half_width, g.half_width - 1.0);
    if (r <= 0.0)
        throw SolverError("localizer radius: box half-width " +
                          std::to_string(g.half_width) +
                          " leaves no room for the default localizer (need > 1)");
    return r;
}

}  // namespace

RunResult run(const InitialData& initial, const SchemeParams& params,
              const ReactionModel& model, const RecordHook& on_record) {
    require_same_grid(initial.n1_0.grid, initial.n2_0.grid, "run");
    const Grid& g = initial.n1_0.grid;
    const std::int64_t total = g.total_cells();

    const InitialData floored = gaussian_floor(initial, params.delta, model);

    // The fraction at exact-vacuum cells (possible only with delta = 0) is
    // undefined by n1/n; use the global mass fraction so that a single-species
    // run starts at the c1 = 1 fixed point everywhere, vacuum included.
    const double m1_init =
        deterministic_sum(total, [&](std::int64_t i) { return floored.n1_0[i]; });
    const double m2_init =
        deterministic_sum(total, [&](std::int64_t i) { return floored.n2_0[i]; });
    const double vacuum_fraction =
        (m1_init + m2_init) > 0.0 ? m1_init / (m1_init + m2_init) : 0.5;

    State state;
    state.n = Field(g);
    state.c1 = Field(g);
    state.t = params.start_time;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const double n1 = floored.n1_0[i];
        const double n2 = floored.n2_0[i];
        state.n[i] = n1 + n2;
        state.c1[i] = (n1 + n2) > 0.0 ? n1 / (n1 + n2) : vacuum_fraction;
    }

    for (std::int64_t i = 0; i < total; ++i)
        if (state.n[i] < 0.0)
            throw NegativeDensity("run: negative initial density at cell " +
                                  std::to_string(i));
    if (params.enforce_max_principle) {
        const double n_max =
            deterministic_max(total, [&](std::int64_t i) { return state.n[i]; });
        if (std::pow(n_max, model.gamma) > model.P_H * (1.0 + kMaxPrincipleTol))
            throw SolverError("run: initial pressure exceeds the homeostatic ceiling");
    }

    const Field bulk_weight =
        localizer(g, resolve_localizer_radius(g, params.bulk_localizer_radius, 0.8));
    const Field lap_weight =
        localizer(g, resolve_localizer_radius(g, params.lap_localizer_radius, 0.6));

    const double R_inf = R_inf_norm(model);
    const double mass0 =
        g.cell_volume() * deterministic_sum(total, [&](std::int64_t i) { return state.n[i]; });

    std::vector<double> samples_left = params.sample_times;
    std::sort(samples_left.begin(), samples_left.end());
    samples_left.erase(std::remove_if(samples_left.begin(), samples_left.end(),
                                      [&](double s) {
                                          return s < state.t - 1e-12 ||
                                                 s > params.t_end + 1e-12;
                                      }),
                       samples_left.end());
    std::size_t next_sample = 0;

    RunResult result;
    DiagnosticsAccumulators acc;
    const double time_scale = std::max(std::abs(params.t_end), 1.0);
    bool shell_warned = false;

    auto emit_record = [&](const State& s) {
        DiagnosticsRecord rec = make_record(s, model, bulk_weight, lap_weight, mass0, R_inf,
                                            params.start_time, acc);
        result.series.records.push_back(rec);
        if (!shell_warned && boundary_mass_fraction(s) > 1e-6) {
            result.warnings.push_back(
                "mass in the outer 10% shell exceeds 1e-6 of total at t = " +
                std::to_string(s.t) + "; the box may be too small");
            shell_warned = true;
        }
        if (on_record) on_record(s, rec);
    };

    auto take_samples = [&](const State& s) {
        while (next_sample < samples_left.size() &&
               s.t >= samples_left[next_sample] - 1e-9 * time_scale) {
            result.samples.push_back(s);
            ++next_sample;
        }
    };

    emit_record(state);
    take_samples(state);

    long steps = 0;
    while (state.t < params.t_end - 1e-15 * time_scale) {
        double dt = cfl_dt_cached(state, params, model, R_inf);
        if (next_sample < samples_left.size())
            dt = std::min(dt, samples_left[next_sample] - state.t);
        const DissipationRates rates_now =
            dissipation_rates(state, model, bulk_weight, lap_weight);

        State next;
        for (;;) {
            try {
                double clamp = 0.0;
                next = step(state, dt, params, model, &clamp);
                acc.clamp_total += clamp;
                break;
            } catch (const StepRejected&) {
                dt *= 0.5;
                if (dt < 1e-14 * time_scale)
                    throw Diverged("run: dt shrank below 1e-14 * t_end after repeated "
                                   "step rejections at t = " +
                                   std::to_string(state.t));
            }
        }

        acc.entropy_diss_cum += rates_now.entropy_rate * dt;
        acc.w_minus_L3_cum += rates_now.w_minus_L3_rate * dt;
        acc.energy_diss_cum += rates_now.energy_rate * dt;

        state = std::move(next);
        if (params.t_end - state.t < 1e-12 * time_scale) state.t = params.t_end;
        ++steps;

        take_samples(state);
        if (params.diag_every > 0 && steps % params.diag_every == 0) emit_record(state);
    }

    if (result.series.records.empty() ||
        result.series.records.back().t != state.t)
        emit_record(state);

    result.final_state = std::move(state);
    return result;
}

std::pair<bool, double> check_floor(const State& state, double delta, double c_rate) {
    const Grid& g = state.n.grid;
    const std::int64_t total = g.total_cells();
    const double decay = std::exp(-c_rate * state.t);

    // Worst signed margin min(n - floor); the floor's steepest slope is
    // delta * e^(-1/2) * decay (attained at |x| = 1), setting the one-cell
    // grid tolerance.
    const double worst = -deterministic_max(total, [&](std::int64_t i) {
        const double floor_i = delta * std::exp(-0.5 * g.radius2(i)) * decay;
        return floor_i - state.n[i];
    });
    const double tol_grid = g.dx() * delta * std::exp(-0.5) * decay;
    return {worst >= -tol_grid, worst};
}

}  // namespace tgs
