#pragma once

#include <array>

#include "tgs/field.hpp"

namespace tgs {

// Pointwise pressure law p = n^gamma.  Rejects negative densities, which can
// only reach here through an unstable or buggy update upstream.
Field pressure(const Field& n, double gamma);

enum class RateFamily { LinearShared, LinearSplit, Custom };

// The four proliferation rates F1, F2, G1, G2 as functions of pressure,
// together with the pressure law exponent and the homeostatic pressure P_H.
// F = F1 + F2 is the total rate of tissue born from species 1, G = G1 + G2
// from species 2; both must be <= 0 once p >= P_H (contact inhibition).
//
// Families:
//   LinearShared — F1 = theta*r*(P_H - p),   F2 = (1-theta)*r*(P_H - p),
//                  G1 = (1-eta)*r*(P_H - p), G2 = eta*r*(P_H - p).
//                  F == G == r*(P_H - p): the rate difference cancels exactly.
//   LinearSplit  — F = r*(P_H - p) split evenly into F1 = F2 = F/2;
//                  G = F - kappa * p^(1/(2 gamma)) * (P_H - p)/P_H, split
//                  evenly.  |F - G|^2 / p^(1/gamma) stays <= kappa^2 on
//                  (0, P_H]: a family with a nontrivial but bounded
//                  rate-difference quotient.
//   Custom       — each rate is affine in p: X(p) = X[0] + X[1]*p.  The hook
//                  for hand-built rate tables; validate_assumptions gates it.
struct ReactionModel {
    double gamma = 2.0;
    double P_H = 1.0;
    RateFamily family = RateFamily::LinearShared;

    // LinearShared / LinearSplit parameters.
    double r = 1.0;
    double theta = 0.5;
    double eta = 0.5;
    double kappa = 0.0;

    // Custom affine coefficients {constant, slope} per rate.
    std::array<double, 2> f1{0.0, 0.0};
    std::array<double, 2> f2{0.0, 0.0};
    std::array<double, 2> g1{0.0, 0.0};
    std::array<double, 2> g2{0.0, 0.0};

    static ReactionModel linear_shared(double gamma, double P_H, double r, double theta,
                                       double eta);
    static ReactionModel linear_split(double gamma, double P_H, double r, double kappa);
    static ReactionModel custom(double gamma, double P_H, std::array<double, 2> f1,
                                std::array<double, 2> f2, std::array<double, 2> g1,
                                std::array<double, 2> g2);
};

struct Rates {
    double F1, F2, G1, G2;
    double F, G;  // totals per species; equal to F1 + F2 / G1 + G2 up to
                  // roundoff, but computed from each family's closed form so
                  // structural identities (shared family: F == G) hold bitwise
};

Rates rates(const ReactionModel& model, double p);

// Total growth rate R = c1*F(p) + (1-c1)*G(p).
double R_total(const ReactionModel& model, double c1, double p);

// sup over c1 in [0,1], p in [0, P_H] of |R|.  R is affine in c1, so the
// supremum sits at c1 = 0 or 1; p is sampled densely.
double R_inf_norm(const ReactionModel& model);

// Machine check of the standing assumptions on a ReactionModel:
//   passes_3            — F <= 0 and G <= 0 for all sampled p >= P_H
//   passes_7_gamma      — gamma > 2 - 4/dim
//   passes_7_cancellation — sup over p in (0, P_H] of |F - G|^2 / p^(1/gamma)
//                           stays bounded under sample refinement
struct AssumptionReport {
    bool passes_3 = false;
    bool passes_7_gamma = false;
    bool passes_7_cancellation = false;
    double estimated_C_H = 0.0;
    double R_inf_norm = 0.0;

    bool all_pass() const { return passes_3 && passes_7_gamma && passes_7_cancellation; }
};

AssumptionReport validate_assumptions(const ReactionModel& model, int dim);

// Human-readable assumption report, one PASS/FAIL line per check.
std::string to_text(const AssumptionReport& report);

}  // namespace tgs
