#pragma once

#include <functional>
#include <vector>

#include "tgs/diagnostics.hpp"
#include "tgs/field.hpp"
#include "tgs/model_data.hpp"
#include "tgs/reactions.hpp"
#include "tgs/state.hpp"

namespace tgs {

struct SchemeParams {
    double epsilon = 0.0;     // strength of the parabolic fraction flux
    double delta = 0.0;       // Gaussian floor height
    double cfl_safety = 0.4;  // fraction of the stability limit, in (0,1]
    double t_end = 1.0;
    int diag_every = 10;  // steps between diagnostics records

    double start_time = 0.0;  // initial t (nonzero when resuming or tracking
                              // an exact profile started mid-flow)
    BoundaryKind boundary = BoundaryKind::Neumann;

    // Localizer radii for the diagnostics weights; negative means the
    // default min(factor * half_width, half_width - 1) with factor 0.8 for
    // the bulk weight (moments, entropy) and 0.6 for the Laplacian weight.
    double bulk_localizer_radius = -1.0;
    double lap_localizer_radius = -1.0;

    // Step rejection keeps the discrete pressure under P_H (valid only under
    // the contact-inhibition assumption).  Disabled when the user overrides a
    // failed assumption check, so that the violation shows up in the audit
    // rather than as a spurious divergence.
    bool enforce_max_principle = true;

    // Times at which run() stores a copy of the state (clipping dt to hit
    // them exactly); used by the convergence studies.
    std::vector<double> sample_times;
};

// Largest stable time step for the explicit update: diffusion, advection,
// epsilon-diffusion, and reaction limits, scaled by cfl_safety and capped by
// the remaining time to t_end.
double cfl_dt(const State& state, const SchemeParams& params, const ReactionModel& model);

// One forward-Euler step of size dt.  Throws StepRejected if the updated
// pressure exceeds P_H * (1 + 1e-6) while enforcement is on; the caller
// halves dt and retries.  clamp_accum (when non-null) accrues the mass moved
// by the positivity/range clamps.
State step(const State& state, double dt, const SchemeParams& params,
           const ReactionModel& model, double* clamp_accum = nullptr);

struct RunResult {
    State final_state;
    DiagnosticsSeries series;
    std::vector<State> samples;         // states at params.sample_times
    std::vector<std::string> warnings;  // e.g. boundary mass accumulation
};

// Observer invoked at every diagnostics record (after the record is stored).
using RecordHook = std::function<void(const State&, const DiagnosticsRecord&)>;

// Full integration driver: floors the initial data, initializes the fraction
// field, loops step() with CFL control and halve-and-retry on rejection,
// collects a diagnostics record every diag_every steps plus the final state.
// Throws Diverged when retries push dt below 1e-14 * t_end.
RunResult run(const InitialData& initial, const SchemeParams& params,
              const ReactionModel& model, const RecordHook& on_record = nullptr);

// Verifies the moving-floor lower bound n >= delta*exp(-|x|^2/2 - c_rate*t)
// up to the grid tolerance dx * max|grad floor|.  Returns the pass flag and
// the worst signed margin min(n - floor).
std::pair<bool, double> check_floor(const State& state, double delta, double c_rate);

}  // namespace tgs
