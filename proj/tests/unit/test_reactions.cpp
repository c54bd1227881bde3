#include <cmath>

#include "gtest/gtest.h"
#include "tgs/errors.hpp"
#include "tgs/reactions.hpp"

using namespace tgs;

TEST(Pressure, PowerLawPointwise) {
    Grid g{1, 16, 1.0};
    EXPECT_EQ(pressure(Field(g, 0.0), 2.0).max_value(), 0.0);
    for (double gamma : {1.5, 2.0, 3.0}) {
        const Field p = pressure(Field(g, 1.0), gamma);
        for (std::int64_t i = 0; i < p.size(); ++i) EXPECT_EQ(p[i], 1.0);
    }
    const Field p = pressure(Field(g, 3.0), 2.0);
    for (std::int64_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], 9.0, 1e-14);
}

TEST(Pressure, RejectsNegativeDensity) {
    Grid g{1, 16, 1.0};
    Field n(g, 0.5);
    n[3] = -1e-9;
    EXPECT_THROW(pressure(n, 2.0), NegativeDensity);
}

TEST(Pressure, MonotoneInDensity) {
    Grid g{1, 32, 1.0};
    Field a(g), b(g);
    for (std::int64_t i = 0; i < a.size(); ++i) {
        a[i] = 0.1 + 0.01 * static_cast<double>(i);
        b[i] = a[i] + 0.3;
    }
    const Field pa = pressure(a, 1.7);
    const Field pb = pressure(b, 1.7);
    for (std::int64_t i = 0; i < pa.size(); ++i) EXPECT_LE(pa[i], pb[i]);
}

TEST(Rates, SharedFamilyHomeostasisAndVacuum) {
    const ReactionModel m = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    const Rates at_ph = rates(m, m.P_H);
    EXPECT_EQ(at_ph.F, 0.0);
    EXPECT_EQ(at_ph.G, 0.0);
    const Rates at_zero = rates(m, 0.0);
    EXPECT_NEAR(at_zero.F, 1.0, 1e-15);
    EXPECT_NEAR(at_zero.G, 1.0, 1e-15);
    EXPECT_NEAR(at_zero.F1 + at_zero.F2, at_zero.F, 1e-15);
    EXPECT_NEAR(at_zero.G1 + at_zero.G2, at_zero.G, 1e-15);
}

TEST(Rates, SharedFamilySplitsByThetaEta) {
    const ReactionModel m = ReactionModel::linear_shared(2.0, 1.0, 2.0, 0.25, 0.7);
    const Rates rt = rates(m, 0.5);
    const double total = 2.0 * (1.0 - 0.5);
    EXPECT_NEAR(rt.F1, 0.25 * total, 1e-15);
    EXPECT_NEAR(rt.F2, 0.75 * total, 1e-15);
    EXPECT_NEAR(rt.G1, 0.3 * total, 1e-15);
    EXPECT_NEAR(rt.G2, 0.7 * total, 1e-15);
}

TEST(RTotal, ConvexCombinationEndpoints) {
    const ReactionModel m = ReactionModel::linear_split(2.0, 1.0, 1.0, 0.7);
    for (double p : {0.0, 0.3, 0.9}) {
        const Rates rt = rates(m, p);
        EXPECT_EQ(R_total(m, 1.0, p), rt.F);
        EXPECT_EQ(R_total(m, 0.0, p), rt.G);
    }
}

TEST(RTotal, SharedFamilyIsFractionIndependent) {
    const ReactionModel m = ReactionModel::linear_shared(2.0, 1.0, 1.3, 0.2, 0.8);
    for (double p : {0.0, 0.25, 0.5, 0.999, 1.0}) {
        const double base = R_total(m, 0.5, p);
        for (double c1 : {0.0, 0.1, 0.7, 1.0})
            EXPECT_NEAR(R_total(m, c1, p), base, 1e-15);
    }
}

TEST(RInfNorm, LinearFamilyPeaksAtVacuum) {
    const ReactionModel m = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    EXPECT_NEAR(R_inf_norm(m), 1.0, 1e-12);  // r * P_H at p = 0
    const ReactionModel m2 = ReactionModel::linear_shared(2.0, 2.0, 0.5, 0.5, 0.5);
    EXPECT_NEAR(R_inf_norm(m2), 1.0, 1e-12);
    ReactionModel quiet = m;
    quiet.r = 0.0;
    EXPECT_EQ(R_inf_norm(quiet), 0.0);
}

TEST(ValidateAssumptions, ExponentRangePerDimension) {
    const ReactionModel m = ReactionModel::linear_shared(1.5, 1.0, 1.0, 0.5, 0.5);
    EXPECT_TRUE(validate_assumptions(m, 1).passes_7_gamma);  // 2 - 4/1 = -2
    EXPECT_TRUE(validate_assumptions(m, 2).passes_7_gamma);  // 2 - 4/2 = 0 < 1.5
}

TEST(ValidateAssumptions, SharedFamilyAllPassWithZeroGap) {
    for (double gamma : {1.2, 2.0, 3.5}) {
        const ReactionModel m = ReactionModel::linear_shared(gamma, 1.0, 1.0, 0.3, 0.6);
        for (int dim : {1, 2}) {
            const AssumptionReport rep = validate_assumptions(m, dim);
            EXPECT_TRUE(rep.all_pass());
            EXPECT_EQ(rep.estimated_C_H, 0.0);
            EXPECT_NEAR(rep.R_inf_norm, 1.0, 1e-12);
        }
    }
}

TEST(ValidateAssumptions, SplitFamilyGapQuotientMatchesKappaSquared) {
    // |F - G|^2 / p^(1/gamma) = kappa^2 (1 - p/P_H)^2, whose sampled sup on
    // p = P_H j / 40000 is kappa^2 (1 - 1/40000)^2 = 0.48997550030625 for
    // kappa = 0.7.
    const ReactionModel m = ReactionModel::linear_split(2.0, 1.0, 1.0, 0.7);
    const AssumptionReport rep = validate_assumptions(m, 1);
    EXPECT_TRUE(rep.passes_3);
    EXPECT_TRUE(rep.passes_7_cancellation);
    EXPECT_NEAR(rep.estimated_C_H, 0.48997550030625, 1e-9);
    EXPECT_LE(rep.estimated_C_H, 0.49);
}

TEST(ValidateAssumptions, FlagsGrowthGainAbovePH) {
    // F = +1 at every pressure: growth never stops, violating contact
    // inhibition.
    const ReactionModel m =
        ReactionModel::custom(2.0, 1.0, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    const AssumptionReport rep = validate_assumptions(m, 1);
    EXPECT_FALSE(rep.passes_3);
    EXPECT_FALSE(rep.all_pass());
}

TEST(ValidateAssumptions, FlagsDivergentGapQuotient) {
    // F = 1 - p, G = 0: the gap |F - G| tends to 1 at vacuum, so the quotient
    // |F - G|^2 / sqrt(p) diverges and refinement must flag it.
    const ReactionModel m =
        ReactionModel::custom(2.0, 1.0, {1.0, -1.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    const AssumptionReport rep = validate_assumptions(m, 1);
    EXPECT_TRUE(rep.passes_3);
    EXPECT_FALSE(rep.passes_7_cancellation);
    EXPECT_FALSE(rep.all_pass());
}

TEST(ValidateAssumptions, ReportTextNamesEveryCheck) {
    const ReactionModel m = ReactionModel::linear_shared(2.0, 1.0, 1.0, 0.5, 0.5);
    const std::string text = to_text(validate_assumptions(m, 1));
    EXPECT_NE(text.find("contact_inhibition_signs"), std::string::npos);
    EXPECT_NE(text.find("exponent_range"), std::string::npos);
    EXPECT_NE(text.find("rate_gap_bounded"), std::string::npos);
    EXPECT_NE(text.find("overall: PASS"), std::string::npos);
}
