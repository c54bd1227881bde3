#include "tgs/diagnostics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "tgs/parallel.hpp"
#include "tgs/stencils.hpp"

namespace tgs {

namespace {

// Pointwise power of a field, pow(max(f,0), e); negative dust from upstream
// clamps cannot reach here, but the guard keeps powers of p total.
Field field_pow(const Field& f, double e) {
    Field out(f.grid);
    const std::int64_t total = f.size();
    const double* src = f.values.data();
    double* dst = out.values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i)
        dst[i] = src[i] > 0.0 ? std::pow(src[i], e) : 0.0;
    return out;
}

double weighted_grad_sq(const VectorField& g, const Field& w) {
    const std::int64_t total = w.size();
    const Field* comps = g.comp.data();
    const int dim = g.grid.dim;
    return deterministic_sum(total, [&](std::int64_t i) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double v = comps[a][i];
            s += v * v;
        }
        return s * w[i];
    });
}

}  // namespace

std::pair<double, double> entropy_and_dissipation(const State& state,
                                                  const ReactionModel& model,
                                                  const Field& bulk_weight) {
    const Grid& g = state.n.grid;
    const double vol = g.cell_volume();
    const std::int64_t total = g.total_cells();

    const double entropy = vol * deterministic_sum(total, [&](std::int64_t i) {
        const double n = state.n[i];
        if (n < 1e-300) return 0.0;  // 0 * ln 0 convention
        return n * (std::log(n) - 1.0) * bulk_weight[i];
    });

    const double s = 0.5 * (1.0 + 1.0 / model.gamma);
    const Field p = pressure(state.n, model.gamma);
    const VectorField grad_ps = gradient(field_pow(p, s));
    const double rate = weighted_grad_sq(grad_ps, bulk_weight) * vol / (s * s);
    return {entropy, rate};
}

WDiagnostics w_diagnostics(const State& state, const ReactionModel& model,
                           const Field& lap_weight) {
    const Grid& g = state.n.grid;
    const double vol = g.cell_volume();
    const std::int64_t total = g.total_cells();

    const Field p = pressure(state.n, model.gamma);
    const Field lap = laplacian(p);

    WDiagnostics out;
    out.w_minus_L2 = vol * deterministic_sum(total, [&](std::int64_t i) {
        const double w = lap[i] + R_total(model, state.c1[i], p[i]);
        const double wm = w < 0.0 ? -w : 0.0;
        return wm * wm * lap_weight[i];
    });
    out.w_minus_L3_rate = vol * deterministic_sum(total, [&](std::int64_t i) {
        const double w = lap[i] + R_total(model, state.c1[i], p[i]);
        const double wm = w < 0.0 ? -w : 0.0;
        return wm * wm * wm * lap_weight[i];
    });
    out.lap_L1 = vol * deterministic_sum(total, [&](std::int64_t i) {
        return std::abs(lap[i]) * lap_weight[i];
    });
    return out;
}

double second_moment(const State& state, const Field& bulk_weight) {
    const Grid& g = state.n.grid;
    return g.cell_volume() * deterministic_sum(g.total_cells(), [&](std::int64_t i) {
        return g.radius2(i) * state.n[i] * bulk_weight[i];
    });
}

std::pair<double, double> energy_diagnostics(const State& state, const ReactionModel& model) {
    const Grid& g = state.n.grid;
    const double vol = g.cell_volume();
    const std::int64_t total = g.total_cells();
    const double a = 2.0 / model.gamma;

    const Field p = pressure(state.n, model.gamma);
    const Field pa = field_pow(p, a);
    const VectorField grad_p = gradient(p);
    const double energy = 0.5 * vol * weighted_grad_sq(grad_p, pa);

    // A = (2/(a+3)) Lap(p^((a+3)/2)) - |grad(p^((a+3)/4))|^2 / (2 ((a+3)/4)^2)
    const double e_hi = 0.5 * (a + 3.0);
    const double e_lo = 0.25 * (a + 3.0);
    const Field lap_hi = laplacian(field_pow(p, e_hi));
    const VectorField grad_lo = gradient(field_pow(p, e_lo));
    const double c_hi = 2.0 / (a + 3.0);
    const double c_lo = 1.0 / (2.0 * e_lo * e_lo);
    const int dim = g.dim;
    const double rate = vol * deterministic_sum(total, [&](std::int64_t i) {
        double gsq = 0.0;
        for (int ax = 0; ax < dim; ++ax) {
            const double v = grad_lo[ax][i];
            gsq += v * v;
        }
        const double A = c_hi * lap_hi[i] - c_lo * gsq;
        return A * A;
    });
    return {energy, rate};
}

DissipationRates dissipation_rates(const State& state, const ReactionModel& model,
                                   const Field& bulk_weight, const Field& lap_weight) {
    DissipationRates out;
    out.entropy_rate = entropy_and_dissipation(state, model, bulk_weight).second;
    out.w_minus_L3_rate = w_diagnostics(state, model, lap_weight).w_minus_L3_rate;
    out.energy_rate = energy_diagnostics(state, model).second;
    return out;
}

DiagnosticsRecord make_record(const State& state, const ReactionModel& model,
                              const Field& bulk_weight, const Field& lap_weight,
                              double mass0, double R_inf, double start_time,
                              const DiagnosticsAccumulators& acc) {
    const Grid& g = state.n.grid;
    const double vol = g.cell_volume();
    const std::int64_t total = g.total_cells();

    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.mass = vol * deterministic_sum(total, [&](std::int64_t i) { return state.n[i]; });
    rec.mass_bound = mass0 * std::exp((state.t - start_time) * R_inf);
    const Field p = pressure(state.n, model.gamma);
    rec.p_max = deterministic_max(total, [&](std::int64_t i) { return p[i]; });

    const auto [entropy, entropy_rate] = entropy_and_dissipation(state, model, bulk_weight);
    (void)entropy_rate;
    rec.entropy = entropy;
    rec.second_moment = second_moment(state, bulk_weight);

    const WDiagnostics wd = w_diagnostics(state, model, lap_weight);
    rec.w_minus_L2 = wd.w_minus_L2;
    rec.lap_L1 = wd.lap_L1;

    rec.energy = energy_diagnostics(state, model).first;

    rec.entropy_diss_cum = acc.entropy_diss_cum;
    rec.w_minus_L3_cum = acc.w_minus_L3_cum;
    rec.energy_diss_cum = acc.energy_diss_cum;
    rec.clamp_total = acc.clamp_total;
    return rec;
}

double boundary_mass_fraction(const State& state) {
    const Grid& g = state.n.grid;
    const double edge = 0.9 * g.half_width;
    const std::int64_t total = g.total_cells();
    const double mass = deterministic_sum(total, [&](std::int64_t i) { return state.n[i]; });
    if (mass <= 0.0) return 0.0;
    const double shell = deterministic_sum(total, [&](std::int64_t i) {
        const auto c = g.center(i);
        const double linf = std::max(std::abs(c[0]), std::abs(c[1]));
        return linf > edge ? state.n[i] : 0.0;
    });
    return shell / mass;
}

bool AuditReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

namespace {

void push_entry(AuditReport& report, std::string quantity, BoundType type, double observed,
                double limit, std::string note = {}) {
    AuditEntry e;
    e.quantity = std::move(quantity);
    e.bound_type = type;
    e.observed_max = observed;
    e.limit_used = limit;
    e.pass = observed <= limit;  // NaN observed fails
    e.note = std::move(note);
    report.entries.push_back(std::move(e));
}

double transient_max(const std::vector<DiagnosticsRecord>& recs, int window,
                     double DiagnosticsRecord::*field) {
    double m = 0.0;
    for (int i = 0; i < window && i < static_cast<int>(recs.size()); ++i)
        m = std::max(m, recs[static_cast<std::size_t>(i)].*field);
    return m;
}

double series_max(const std::vector<DiagnosticsRecord>& recs,
                  double DiagnosticsRecord::*field) {
    double m = -DBL_MAX;
    for (const auto& r : recs) m = std::max(m, r.*field);
    return m;
}

}  // namespace

AuditReport audit(const DiagnosticsSeries& series, const ReactionModel& model,
                  const AuditParams& params) {
    AuditReport report;
    const auto& recs = series.records;
    if (recs.empty()) {
        push_entry(report, "series", BoundType::PointwiseBound, 1.0, 0.0, "empty series");
        return report;
    }

    push_entry(report, "p_max", BoundType::PointwiseBound,
               series_max(recs, &DiagnosticsRecord::p_max), model.P_H * (1.0 + 1e-6),
               "pressure stays under the homeostatic ceiling");

    double worst_ratio = 0.0;
    for (const auto& r : recs) {
        const double ratio = r.mass_bound > 0.0 ? r.mass / r.mass_bound
                                                : (r.mass > 0.0 ? DBL_MAX : 0.0);
        worst_ratio = std::max(worst_ratio, ratio);
    }
    push_entry(report, "mass_gronwall", BoundType::PointwiseBound, worst_ratio, 1.0 + 1e-3,
               "mass / (mass(0) * exp(elapsed * ||R||_inf))");

    push_entry(report, "clamp_total", BoundType::PointwiseBound, recs.back().clamp_total,
               1e-8 * recs.front().mass, "cumulative clamped mass vs initial mass");

    for (auto [name, field] :
         {std::pair{"entropy_diss_cum", &DiagnosticsRecord::entropy_diss_cum},
          std::pair{"w_minus_L3_cum", &DiagnosticsRecord::w_minus_L3_cum},
          std::pair{"energy_diss_cum", &DiagnosticsRecord::energy_diss_cum}})
        push_entry(report, name, BoundType::CumulativeFinite, recs.back().*field, DBL_MAX,
                   "cumulative integral stays finite");

    const int window = std::max(params.transient_min_records,
                                static_cast<int>(params.transient_fraction * recs.size()));
    for (auto [name, field] : {std::pair{"w_minus_L2", &DiagnosticsRecord::w_minus_L2},
                               std::pair{"lap_L1", &DiagnosticsRecord::lap_L1},
                               std::pair{"energy", &DiagnosticsRecord::energy}}) {
        const double limit =
            params.uniform_factor *
            std::max(transient_max(recs, window, field), params.zero_floor);
        push_entry(report, name, BoundType::UniformInTime, series_max(recs, field), limit,
                   "bounded by " + std::to_string(params.uniform_factor) +
                       "x the initial-transient max (operationalization of a "
                       "uniform-in-time constant)");
    }
    return report;
}

AuditReport audit_refinement(const std::vector<DiagnosticsSeries>& family,
                             const AuditParams& params) {
    AuditReport report;
    if (family.size() < 2) {
        push_entry(report, "family", BoundType::PointwiseBound, 1.0, 0.0,
                   "need at least two refinement levels");
        return report;
    }
    for (auto [name, field] :
         {std::pair{"entropy_diss_cum", &DiagnosticsRecord::entropy_diss_cum},
          std::pair{"w_minus_L3_cum", &DiagnosticsRecord::w_minus_L3_cum},
          std::pair{"energy_diss_cum", &DiagnosticsRecord::energy_diss_cum},
          std::pair{"w_minus_L2", &DiagnosticsRecord::w_minus_L2},
          std::pair{"lap_L1", &DiagnosticsRecord::lap_L1},
          std::pair{"energy", &DiagnosticsRecord::energy}}) {
        const double coarse = family.front().records.back().*field;
        const double limit = params.refine_factor * std::max(coarse, params.zero_floor);
        double observed = 0.0;
        for (std::size_t k = 1; k < family.size(); ++k)
            observed = std::max(observed, family[k].records.back().*field);
        push_entry(report, name, BoundType::CumulativeFinite, observed, limit,
                   "final value across refinements vs coarsest level");
    }
    return report;
}

std::string to_text(const AuditReport& report) {
    std::ostringstream os;
    os << "audit report\n";
    for (const auto& e : report.entries) {
        const char* type = e.bound_type == BoundType::PointwiseBound    ? "pointwise"
                           : e.bound_type == BoundType::UniformInTime   ? "uniform-in-time"
                                                                        : "cumulative";
        char buf[160];
        std::snprintf(buf, sizeof buf, "  [%s] %-18s observed %.6e  limit %.6e  %s", type,
                      e.quantity.c_str(), e.observed_max, e.limit_used,
                      e.pass ? "PASS" : "FAIL");
        os << buf;
        if (!e.note.empty()) os << "  (" << e.note << ")";
        os << "\n";
    }
    os << (report.all_pass() ? "audit: all bounds hold\n" : "audit: BOUND VIOLATION\n");
    return os.str();
}

}  // namespace tgs
