#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tgs/diagnostics.hpp"
#include "tgs/model_data.hpp"
#include "tgs/stencils.hpp"

using namespace tgs;

namespace {

State uniform_state(const Grid& g, double n_value, double c1_value = 1.0) {
    State s;
    s.n = Field(g, n_value);
    s.c1 = Field(g, c1_value);
    s.t = 0.0;
    return s;
}

double weight_sum(const Field& w) {
    double s = 0.0;
    for (double v : w.values) s += v;
    return s;
}

// A synthetic diagnostics series with benign values everywhere; individual
// tests then perturb single fields to exercise one audit entry at a time.
DiagnosticsSeries benign_series(int count = 20) {
    DiagnosticsSeries series;
    for (int k = 0; k < count; ++k) {
        DiagnosticsRecord r;
        r.t = 0.05 * k;
        r.mass = 1.0;
        r.mass_bound = 1.0;
        r.p_max = 0.9;
        r.second_moment = 1.0;
        r.entropy = -1.0;
        r.entropy_diss_cum = 0.01 * k;
        r.w_minus_L2 = 1.0;
        r.w_minus_L3_cum = 0.01 * k;
        r.lap_L1 = 1.0;
        r.energy = 1.0;
        r.energy_diss_cum = 0.01 * k;
        r.clamp_total = 0.0;
        series.records.push_back(r);
    }
    return series;
}

const AuditEntry& entry_named(const AuditReport& report, const std::string& name) {
    for (const auto& e : report.entries)
        if (e.quantity == name) return e;
    ADD_FAILURE() << "no audit entry named " << name;
    static AuditEntry missing;
    return missing;
}

ReactionModel plain_diffusion(double gamma) {
    return ReactionModel::linear_shared(gamma, 1.0, 0.0, 0.5, 0.5);
}

}  // namespace

TEST(Entropy, UniformDensityOneGivesMinusWeightVolume) {
    Grid g{1, 128, 6.0};
    const Field w = localizer(g, 4.0);
    const auto [entropy, rate] =
        entropy_and_dissipation(uniform_state(g, 1.0), plain_diffusion(2.0), w);
    // n (ln n - 1) = -1 at n = 1, so the entropy is minus the weight integral.
    EXPECT_NEAR(entropy, -weight_sum(w) * g.dx(), 1e-12);
    EXPECT_EQ(rate, 0.0);  // constant pressure has an exactly zero gradient
}

TEST(Entropy, VacuumCellsContributeExactlyZero) {
    Grid g{1, 64, 4.0};
    State s = uniform_state(g, 0.0);
    s.n[10] = 1.0;  // single occupied cell; its neighbors are exact vacuum
    const Field w = localizer(g, 2.0);
    const auto [entropy, rate] = entropy_and_dissipation(s, plain_diffusion(2.0), w);
    EXPECT_TRUE(std::isfinite(entropy));
    EXPECT_TRUE(std::isfinite(rate));
    EXPECT_NEAR(entropy, -1.0 * w[10] * g.dx(), 1e-15);
    EXPECT_GT(rate, 0.0);  // the isolated spike has a genuine pressure gradient
}

TEST(Entropy, DissipationRateIsNonNegative) {
    Grid g{1, 96, 6.0};
    State s = uniform_state(g, 0.0);
    for (std::int64_t i = 0; i < s.n.size(); ++i)
        s.n[i] = 0.5 * std::exp(-0.5 * g.radius2(i));
    const Field w = localizer(g, 4.0);
    for (double gamma : {1.5, 2.0, 3.0}) {
        const auto [entropy, rate] =
            entropy_and_dissipation(s, plain_diffusion(gamma), w);
        (void)entropy;
        EXPECT_GT(rate, 0.0);
    }
}

TEST(WDiagnostics, QuadraticPressureHasConstantLaplacian) {
    // n = sqrt(36 - x^2) with gamma = 2, so p = n^2 = 36 - x^2 up to a few
    // ulp: Lap p = -2 on every cell the localizer sees, R == 0, hence w = -2
    // there:
    //   w_minus_L2 = 4 * sum(phi) * dx,  rate = 8 * ...,  lap_L1 = 2 * ...
    Grid g{1, 96, 6.0};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 1.0);
    for (std::int64_t i = 0; i < s.n.size(); ++i) {
        const double x = g.axis_center(i);
        s.n[i] = std::sqrt(36.0 - x * x);
    }
    const Field w = localizer(g, 3.0);
    const double wsum_dx = weight_sum(w) * g.dx();
    const WDiagnostics wd = w_diagnostics(s, plain_diffusion(2.0), w);
    EXPECT_NEAR(wd.w_minus_L2, 4.0 * wsum_dx, 1e-9 * wsum_dx);
    EXPECT_NEAR(wd.w_minus_L3_rate, 8.0 * wsum_dx, 1e-9 * wsum_dx);
    EXPECT_NEAR(wd.lap_L1, 2.0 * wsum_dx, 1e-9 * wsum_dx);
}

TEST(WDiagnostics, ReactionShiftsWBeforeTheNegativePart) {
    // Same quadratic pressure but with a vacuum growth rate r = 3 at p blown
    // far below P_H: R(p) = 3(1 - p/P_H) is strongly negative for p >> P_H,
    // making w more negative than Lap p alone; lap_L1 is unaffected.
    Grid g{1, 96, 6.0};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 1.0);
    for (std::int64_t i = 0; i < s.n.size(); ++i) {
        const double x = g.axis_center(i);
        s.n[i] = std::sqrt(36.0 - x * x);
    }
    const Field w = localizer(g, 3.0);
    const ReactionModel with_decay = ReactionModel::linear_shared(2.0, 1.0, 3.0, 0.5, 0.5);
    const WDiagnostics base = w_diagnostics(s, plain_diffusion(2.0), w);
    const WDiagnostics shifted = w_diagnostics(s, with_decay, w);
    EXPECT_GT(shifted.w_minus_L2, base.w_minus_L2);
    EXPECT_NEAR(shifted.lap_L1, base.lap_L1, 1e-15);
}

TEST(WDiagnostics, AllOutputsNonNegative) {
    Grid g{2, 48, 5.0};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 0.5);
    for (std::int64_t i = 0; i < s.n.size(); ++i)
        s.n[i] = 0.4 * std::exp(-0.7 * g.radius2(i));
    const Field w = localizer(g, 2.5);
    const WDiagnostics wd =
        w_diagnostics(s, ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5), w);
    EXPECT_GE(wd.w_minus_L2, 0.0);
    EXPECT_GE(wd.w_minus_L3_rate, 0.0);
    EXPECT_GE(wd.lap_L1, 0.0);
}

TEST(SecondMoment, GaussianFloorMatchesClosedForm) {
    // integral of x^2 * 0.3 e^(-x^2/2) over the line = 0.3 sqrt(2 pi); the
    // wide box and the default-size localizer leave only ~1e-8 of the tails.
    Grid g{1, 512, 8.0};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 0.5);
    for (std::int64_t i = 0; i < s.n.size(); ++i)
        s.n[i] = 0.3 * std::exp(-0.5 * g.radius2(i));
    const double sm = second_moment(s, localizer(g, 6.4));
    EXPECT_NEAR(sm, 0.75198848238930005, 1e-7);
}

TEST(SecondMoment, VacuumIsExactlyZero) {
    Grid g{2, 32, 4.0};
    EXPECT_EQ(second_moment(uniform_state(g, 0.0), localizer(g, 2.0)), 0.0);
}

TEST(Energy, LinearPressureRampHandValue) {
    // gamma = 2 so the weight exponent a = 2/gamma = 1; with p = x + 1/2 on
    // the unit box, energy = 1/2 * integral of p = 1/4.  The one-sided edge
    // differences reproduce the unit slope exactly, and the midpoint rule is
    // exact for linear integrands.
    Grid g{1, 64, 0.5};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 1.0);
    for (std::int64_t i = 0; i < s.n.size(); ++i)
        s.n[i] = std::sqrt(g.axis_center(i) + 0.5);
    const auto [energy, rate] = energy_diagnostics(s, plain_diffusion(2.0));
    EXPECT_NEAR(energy, 0.25, 1e-13);
    EXPECT_TRUE(std::isfinite(rate));
    EXPECT_GE(rate, 0.0);
}

TEST(Energy, VacuumStateIsExactlyZero) {
    Grid g{1, 64, 4.0};
    const auto [energy, rate] = energy_diagnostics(uniform_state(g, 0.0),
                                                   plain_diffusion(2.0));
    EXPECT_EQ(energy, 0.0);
    EXPECT_EQ(rate, 0.0);
}

TEST(Energy, UniformStateHasZeroEnergyAndRate) {
    // Constant pressure: gradients vanish identically and the two halves of
    // the dissipation integrand cancel cell by cell.
    Grid g{2, 32, 3.0};
    const auto [energy, rate] = energy_diagnostics(uniform_state(g, 0.8),
                                                   plain_diffusion(2.0));
    EXPECT_EQ(energy, 0.0);
    EXPECT_EQ(rate, 0.0);
}

TEST(MakeRecord, FieldsMatchTheirDefinitions) {
    Grid g{1, 64, 4.0};
    State s;
    s.n = Field(g);
    s.c1 = Field(g, 1.0);
    for (std::int64_t i = 0; i < s.n.size(); ++i)
        s.n[i] = 0.5 * std::exp(-0.5 * g.radius2(i));
    s.t = 0.75;
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 0.7, 0.5, 0.5);
    const Field bulk = localizer(g, 2.5);
    const Field lap = localizer(g, 2.0);
    DiagnosticsAccumulators acc;
    acc.entropy_diss_cum = 1.25;
    acc.clamp_total = 3e-9;
    const DiagnosticsRecord rec = make_record(s, model, bulk, lap, 2.0, 0.7, 0.25, acc);

    EXPECT_EQ(rec.t, 0.75);
    double mass = 0.0;
    for (double v : s.n.values) mass += v;
    mass *= g.dx();
    EXPECT_NEAR(rec.mass, mass, 1e-14);
    EXPECT_NEAR(rec.mass_bound, 2.0 * std::exp(0.5 * 0.7), 1e-14);
    EXPECT_NEAR(rec.p_max, std::pow(s.n.max_value(), 2.0), 1e-14);
    EXPECT_EQ(rec.entropy_diss_cum, 1.25);
    EXPECT_EQ(rec.clamp_total, 3e-9);
    EXPECT_GT(rec.second_moment, 0.0);
    EXPECT_GT(rec.energy, 0.0);
}

TEST(BoundaryMass, OuterShellFraction) {
    // 16 cells on [-2,2]: only the outermost cell on each side sits beyond
    // 0.9 * half_width = 1.8, so a uniform field puts 2/16 of its mass there.
    Grid g{1, 16, 2.0};
    EXPECT_NEAR(boundary_mass_fraction(uniform_state(g, 1.0)), 0.125, 1e-15);
    EXPECT_EQ(boundary_mass_fraction(uniform_state(g, 0.0)), 0.0);
}

TEST(Audit, BenignSeriesPassesEverything) {
    const AuditReport report =
        audit(benign_series(), ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5));
    EXPECT_TRUE(report.all_pass());
    const std::vector<std::string> expected = {
        "p_max",          "mass_gronwall",   "clamp_total",
        "entropy_diss_cum", "w_minus_L3_cum", "energy_diss_cum",
        "w_minus_L2",     "lap_L1",          "energy"};
    ASSERT_EQ(report.entries.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k)
        EXPECT_EQ(report.entries[k].quantity, expected[k]);
}

TEST(Audit, PressureCeilingEntry) {
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries ok = benign_series();
    ok.records[7].p_max = 1.0000005;  // inside the 1e-6 relative allowance
    EXPECT_TRUE(entry_named(audit(ok, model), "p_max").pass);

    DiagnosticsSeries bad = benign_series();
    bad.records[7].p_max = 1.1;
    const AuditReport report = audit(bad, model);
    EXPECT_FALSE(entry_named(report, "p_max").pass);
    EXPECT_FALSE(report.all_pass());
}

TEST(Audit, MassGronwallEntry) {
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries ok = benign_series();
    ok.records[5].mass = 1.0005;  // ratio 1.0005 <= 1 + 1e-3
    EXPECT_TRUE(entry_named(audit(ok, model), "mass_gronwall").pass);

    DiagnosticsSeries bad = benign_series();
    bad.records[5].mass = 1.002;
    EXPECT_FALSE(entry_named(audit(bad, model), "mass_gronwall").pass);
}

TEST(Audit, ClampBudgetEntry) {
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries ok = benign_series();
    ok.records.back().clamp_total = 5e-9;  // below 1e-8 * initial mass
    EXPECT_TRUE(entry_named(audit(ok, model), "clamp_total").pass);

    DiagnosticsSeries bad = benign_series();
    bad.records.back().clamp_total = 2e-8;
    EXPECT_FALSE(entry_named(audit(bad, model), "clamp_total").pass);
}

TEST(Audit, CumulativeEntriesFailOnNonFinite) {
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries inf_series = benign_series();
    inf_series.records.back().entropy_diss_cum = std::numeric_limits<double>::infinity();
    EXPECT_FALSE(entry_named(audit(inf_series, model), "entropy_diss_cum").pass);

    DiagnosticsSeries nan_series = benign_series();
    nan_series.records.back().w_minus_L3_cum =
        std::numeric_limits<double>::quiet_NaN();
    EXPECT_FALSE(entry_named(audit(nan_series, model), "w_minus_L3_cum").pass);
}

TEST(Audit, UniformInTimeUsesTransientWindow) {
    // 20 records: the transient window is max(2, 2) = 2 records; a late value
    // above twice the transient max fails, below it passes.
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries ok = benign_series();
    ok.records[15].w_minus_L2 = 1.9;
    EXPECT_TRUE(entry_named(audit(ok, model), "w_minus_L2").pass);

    DiagnosticsSeries bad = benign_series();
    bad.records[15].w_minus_L2 = 2.5;
    EXPECT_FALSE(entry_named(audit(bad, model), "w_minus_L2").pass);
}

TEST(Audit, ZeroReferenceUsesAbsoluteFloor) {
    // All-zero transient: the limit falls back to 2 * zero_floor = 2e-12.
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries ok = benign_series();
    for (auto& r : ok.records) r.energy = 0.0;
    ok.records[12].energy = 1e-13;
    EXPECT_TRUE(entry_named(audit(ok, model), "energy").pass);

    DiagnosticsSeries bad = benign_series();
    for (auto& r : bad.records) r.energy = 0.0;
    bad.records[12].energy = 5e-12;
    EXPECT_FALSE(entry_named(audit(bad, model), "energy").pass);
}

TEST(Audit, EmptySeriesFails) {
    const AuditReport report =
        audit(DiagnosticsSeries{}, ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5));
    EXPECT_FALSE(report.all_pass());
}

TEST(AuditRefinement, FinalValuesComparedToCoarsestLevel) {
    DiagnosticsSeries coarse = benign_series();
    DiagnosticsSeries fine = benign_series();
    EXPECT_TRUE(audit_refinement({coarse, fine}).all_pass());

    DiagnosticsSeries blown = benign_series();
    blown.records.back().energy_diss_cum =
        3.0 * coarse.records.back().energy_diss_cum;
    const AuditReport report = audit_refinement({coarse, blown});
    EXPECT_FALSE(entry_named(report, "energy_diss_cum").pass);
    EXPECT_TRUE(entry_named(report, "w_minus_L3_cum").pass);
}

TEST(AuditRefinement, SingleLevelFamilyFails) {
    EXPECT_FALSE(audit_refinement({benign_series()}).all_pass());
}

TEST(AuditText, ReportsOneLinePerEntryWithVerdicts) {
    const ReactionModel model = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    DiagnosticsSeries mixed = benign_series();
    mixed.records[7].p_max = 1.1;
    const AuditReport report = audit(mixed, model);
    const std::string text = to_text(report);
    for (const auto& e : report.entries)
        EXPECT_NE(text.find(e.quantity), std::string::npos) << e.quantity;
    EXPECT_NE(text.find("FAIL"), std::string::npos);
    EXPECT_NE(text.find("PASS"), std::string::npos);
    EXPECT_NE(text.find("BOUND VIOLATION"), std::string::npos);
}
