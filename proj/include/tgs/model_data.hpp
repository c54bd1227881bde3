#pragma once

#include "tgs/field.hpp"
#include "tgs/reactions.hpp"

namespace tgs {

// Initial densities of the two species.  Total density is n1_0 + n2_0 and
// must keep the initial pressure at or below P_H; run() validates this.
struct InitialData {
    Field n1_0;
    Field n2_0;
};

// Closed-form self-similar source solution of the reaction-free total-density
// equation  d/dt n = div(n grad n^gamma) = (gamma/(gamma+1)) Lap(n^(gamma+1)),
// i.e. the compactly supported similarity profile of d/dtau u = Lap(u^m) with
// m = gamma + 1 in the rescaled time tau = (gamma/(gamma+1)) t:
//
//   u(tau, x)  = tau^(-a) (C - k |x|^2 tau^(-2b))_+^(1/gamma),
//   a = d/(d gamma + 2),  b = a/d,  k = gamma / (2 (gamma+1)(d gamma + 2)),
//
// with C fixed by the total mass M via the beta-integral of the profile.
struct SimilarityProfile {
    int dim;
    double gamma;
    double mass;

    SimilarityProfile(int dim_, double gamma_, double mass_);

    double alpha() const;
    double beta() const;
    double kappa() const;
    double C() const;                       // profile height constant
    double rescaled_time(double t) const;   // tau = gamma/(gamma+1) * t
    double support_radius(double t) const;  // free-boundary radius at time t
    double max_density(double t) const;
    // Density at squared distance r2 from the origin.
    double density(double t, double r2) const;
};

// The profile realized as exact cell averages on the grid (the finite-volume
// representation of the solution), so the discrete mass matches M up to
// quadrature error.  t must be positive.
Field barenblatt(const Grid& grid, double gamma, double t, double M);

// Lifts the total density by delta * exp(-|x|^2 / 2), keeping the solution
// away from vacuum.  The lift is shared between the species proportionally to
// their local fractions, and 50/50 where both vanish.  Errors with
// FloorBreaksHomeostatic if the lifted pressure would exceed P_H.
InitialData gaussian_floor(const InitialData& data, double delta, const ReactionModel& model);

// Decay rate c for the moving floor delta * exp(-|x|^2/2 - c t): the smallest
// candidate on a coarse search grid for which the floor is a certified
// subsolution of the total-density equation, verified pointwise on a sampling
// of |x| in [0, 10].  The sufficient closed form c = gamma * delta^gamma +
// ||R||_inf guarantees the search terminates.
double subsolution_rate(const ReactionModel& model, double delta);

}  // namespace tgs
