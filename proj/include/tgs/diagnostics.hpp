#pragma once

#include <string>
#include <vector>

#include "tgs/reactions.hpp"
#include "tgs/state.hpp"

namespace tgs {

// One time slice of every monitored quantity.  Mirrors the diagnostics CSV
// column for column.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;        // integral of n
    double mass_bound = 0.0;  // mass(0) * exp(elapsed * ||R||_inf)
    double p_max = 0.0;
    double second_moment = 0.0;      // integral of |x|^2 n, bulk-localized
    double entropy = 0.0;            // integral of n (ln n - 1), bulk-localized
    double entropy_diss_cum = 0.0;   // time integral of the entropy dissipation rate
    double w_minus_L2 = 0.0;         // integral of (w_-)^2, Laplacian-localized
    double w_minus_L3_cum = 0.0;     // time integral of the (w_-)^3 integral
    double lap_L1 = 0.0;             // integral of |Lap p|, Laplacian-localized
    double energy = 0.0;             // weighted Dirichlet energy of p
    double energy_diss_cum = 0.0;    // time integral of the energy dissipation rate
    double clamp_total = 0.0;        // cumulative mass moved by positivity clamps
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRecord> records;
};

// --- Instantaneous evaluators ------------------------------------------------
// All evaluators are pure reductions over the state and are safe at exact
// vacuum: powers of p replace any division by p (see energy_diagnostics), and
// n ln n uses the 0 * ln 0 = 0 convention.

// Localized entropy integral of n (ln n - 1) and the dissipation rate
// (1/s^2) * integral of |grad p^s|^2, s = (1 + 1/gamma)/2 — identical to the
// integral of |grad p|^2 / p^(1-1/gamma) wherever p > 0.
std::pair<double, double> entropy_and_dissipation(const State& state,
                                                  const ReactionModel& model,
                                                  const Field& bulk_weight);

struct WDiagnostics {
    double w_minus_L2 = 0.0;
    double w_minus_L3_rate = 0.0;  // to be time-integrated by the caller
    double lap_L1 = 0.0;
};

// Diagnostics of w = Lap p + R: the negative part's localized L2 / L3
// integrals and the localized L1 norm of Lap p.
WDiagnostics w_diagnostics(const State& state, const ReactionModel& model,
                           const Field& lap_weight);

// Localized second moment, integral of |x|^2 n.
double second_moment(const State& state, const Field& bulk_weight);

// Weighted Dirichlet energy integral of p^a |grad p|^2 / 2 with a = 2/gamma,
// and its dissipation rate: the squared integral of
//   A = div(p^((a+1)/2) grad p) - p^((a+1)/2) |grad p|^2 / (2p),
// evaluated through the vacuum-safe identities
//   p^((a+1)/2) grad p = (2/(a+3)) grad(p^((a+3)/2))
//   p^((a+1)/2) |grad p|^2 / (2p) = |grad(p^((a+3)/4))|^2 / (2 ((a+3)/4)^2).
std::pair<double, double> energy_diagnostics(const State& state, const ReactionModel& model);

// --- Record assembly ---------------------------------------------------------

// Dissipation rates accumulated between records (left-endpoint rule).
struct DissipationRates {
    double entropy_rate = 0.0;
    double w_minus_L3_rate = 0.0;
    double energy_rate = 0.0;
};

DissipationRates dissipation_rates(const State& state, const ReactionModel& model,
                                   const Field& bulk_weight, const Field& lap_weight);

// Running totals owned by the integration loop.
struct DiagnosticsAccumulators {
    double entropy_diss_cum = 0.0;
    double w_minus_L3_cum = 0.0;
    double energy_diss_cum = 0.0;
    double clamp_total = 0.0;
};

DiagnosticsRecord make_record(const State& state, const ReactionModel& model,
                              const Field& bulk_weight, const Field& lap_weight,
                              double mass0, double R_inf, double start_time,
                              const DiagnosticsAccumulators& acc);

// Fraction of total mass sitting in the outer shell (any coordinate beyond
// 90% of the half-width); the box-truncation health check.
double boundary_mass_fraction(const State& state);

// --- Audit -------------------------------------------------------------------

enum class BoundType { PointwiseBound, UniformInTime, CumulativeFinite };

struct AuditEntry {
    std::string quantity;
    BoundType bound_type;
    double observed_max = 0.0;
    double limit_used = 0.0;
    bool pass = false;
    std::string note;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool all_pass() const;
};

// Knobs of the audit operationalization.  The underlying bounds promise
// existence of constants, not values, so the audit tests boundedness against
// scale-free references: an early-run transient window for uniform-in-time
// quantities and the coarsest run of a refinement family for cumulative ones.
struct AuditParams {
    double transient_fraction = 0.1;  // share of records forming the transient
    int transient_min_records = 2;
    double uniform_factor = 2.0;  // allowed growth over the transient max
    double refine_factor = 2.0;   // allowed growth over the coarsest level
    double zero_floor = 1e-12;    // absolute floor for exactly-zero references
};

// Single-run audit: pressure ceiling, mass growth bound, clamp accounting,
// finiteness of cumulative quantities, uniform-in-time boundedness.
AuditReport audit(const DiagnosticsSeries& series, const ReactionModel& model,
                  const AuditParams& params = {});

// Refinement-family audit: final cumulative and instantaneous quantities of
// each refined run stay within refine_factor of the coarsest run's.
AuditReport audit_refinement(const std::vector<DiagnosticsSeries>& family,
                             const AuditParams& params = {});

// Human-readable report, one line per entry.
std::string to_text(const AuditReport& report);

}  // namespace tgs
