#include "tgs/model_data.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tgs/errors.hpp"

namespace tgs {

SimilarityProfile::SimilarityProfile(int dim_, double gamma_, double mass_)
    : dim(dim_), gamma(gamma_), mass(mass_) {
    if (dim != 1 && dim != 2) throw SolverError("SimilarityProfile: dim must be 1 or 2");
    if (!(gamma > 1.0)) throw SolverError("SimilarityProfile: gamma must exceed 1");
    if (!(mass > 0.0)) throw SolverError("SimilarityProfile: mass must be positive");
}

double SimilarityProfile::alpha() const { return dim / (dim * gamma + 2.0); }

double SimilarityProfile::beta() const { return 1.0 / (dim * gamma + 2.0); }

double SimilarityProfile::kappa() const {
    return gamma / (2.0 * (gamma + 1.0) * (dim * gamma + 2.0));
}

double SimilarityProfile::C() const {
    // Mass of the similarity profile:  M = C^(1/gamma + d/2) k^(-d/2) I_d,
    // I_d = pi^(d/2) Gamma(q+1) / Gamma(q+1+d/2) with q = 1/gamma
    // (the beta integral of (1 - |z|^2)_+^q over the unit ball).
    const double q = 1.0 / gamma;
    const double I_d = std::pow(M_PI, 0.5 * dim) * std::tgamma(q + 1.0) /
                       std::tgamma(q + 1.0 + 0.5 * dim);
    return std::pow(mass * std::pow(kappa(), 0.5 * dim) / I_d, 1.0 / (q + 0.5 * dim));
}

double SimilarityProfile::rescaled_time(double t) const {
    return gamma / (gamma + 1.0) * t;
}

double SimilarityProfile::support_radius(double t) const {
    const double tau = rescaled_time(t);
    return std::sqrt(C() / kappa()) * std::pow(tau, beta());
}

double SimilarityProfile::max_density(double t) const { return density(t, 0.0); }

double SimilarityProfile::density(double t, double r2) const {
    if (!(t > 0.0)) throw SolverError("SimilarityProfile: t must be positive");
    const double tau = rescaled_time(t);
    const double arg = C() - kappa() * r2 * std::pow(tau, -2.0 * beta());
    if (arg <= 0.0) return 0.0;
    return std::pow(tau, -alpha()) * std::pow(arg, 1.0 / gamma);
}

namespace {

// Composite-Simpson panels per cell segment.  The integrands below are smooth
// on their segments (front singularities are removed by substitution first).
constexpr int kCellPanels = 64;
// Extra panels on the substituted front pieces: they cost almost nothing (two
// per cell at most) and push the edge error well below the bulk error.
constexpr int kEdgePanels = 128;

template <typename F>
double simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int j = 1; j < panels; ++j) sum += (j % 2 ? 4.0 : 2.0) * f(a + j * h);
    return sum * h / 3.0;
}

// Density evaluation with the time-dependent factors hoisted out, so the
// quadrature loops pay one pow per sample instead of re-deriving the
// similarity constants each time.
struct FrontEval {
    double Cv;         // self-similar amplitude
    double karg;       // kappa * tau^(-2 beta): coefficient of r^2 in the argument
    double taua;       // tau^(-alpha): overall amplitude factor
    double inv_gamma;  // profile exponent
    double gamma;
    double rs;         // support radius at the evaluation time

    double dens_r2(double r2) const {
        const double arg = Cv - karg * r2;
        if (arg <= 0.0) return 0.0;
        return taua * std::pow(arg, inv_gamma);
    }
};

FrontEval make_front_eval(const SimilarityProfile& prof, double t) {
    const double tau = prof.rescaled_time(t);
    FrontEval ev;
    ev.Cv = prof.C();
    ev.karg = prof.kappa() * std::pow(tau, -2.0 * prof.beta());
    ev.taua = std::pow(tau, -prof.alpha());
    ev.inv_gamma = 1.0 / prof.gamma;
    ev.gamma = prof.gamma;
    ev.rs = prof.support_radius(t);
    return ev;
}

// Integral of x -> dens(x^2 + r2_off) over [a, b], clamped to the slice
// support |x| <= sqrt(rs^2 - r2_off).  Each half-axis piece is integrated in
// the variable u = (rs -/+ x)^(1/p) with p = 5 gamma / (gamma + 1), which
// turns the (rs - |x|)^(1/gamma) front factor into exactly u^4 times an
// analytic function.  Using the substituted variable unconditionally keeps
// composite Simpson at full order on every cell for every gamma > 1 --
// including cells whose interior ends a hair short of the front, where the
// untransformed integrand has unbounded derivatives.
double slice_integral(const FrontEval& ev, double r2_off, double a, double b) {
    const double rs2 = ev.rs * ev.rs - r2_off;
    if (rs2 <= 0.0) return 0.0;
    const double rs = std::sqrt(rs2);
    a = std::max(a, -rs);
    b = std::min(b, rs);
    if (!(a < b)) return 0.0;
    auto dens = [&](double x) { return ev.dens_r2(x * x + r2_off); };
    const double p = 5.0 * ev.gamma / (ev.gamma + 1.0);

    double total = 0.0;
    if (b > 0.0) {
        // Right piece [max(a, 0), b] via x = rs - u^p, dx = -p u^(p-1) du.
        const double x0 = std::max(a, 0.0);
        const double u_lo = std::pow(rs - b, 1.0 / p);
        const double u_hi = std::pow(rs - x0, 1.0 / p);
        if (u_lo < u_hi)
            total += simpson(
                [&](double u) {
                    const double up = std::pow(u, p);
                    return dens(rs - up) * p * std::pow(u, p - 1.0);
                },
                u_lo, u_hi, kEdgePanels);
    }
    if (a < 0.0) {
        // Left piece [a, min(b, 0)] via x = -rs + v^p, dx = p v^(p-1) dv.
        const double x1 = std::min(b, 0.0);
        const double v_lo = std::pow(rs + a, 1.0 / p);
        const double v_hi = std::pow(rs + x1, 1.0 / p);
        if (v_lo < v_hi)
            total += simpson(
                [&](double v) {
                    const double vp = std::pow(v, p);
                    return dens(-rs + vp) * p * std::pow(v, p - 1.0);
                },
                v_lo, v_hi, kEdgePanels);
    }
    return total;
}

// Cell average over a 2D cell: Simpson in y of the front-substituted slice
// integral in x.  The inner integral clamps each slice at the support circle,
// so the square-root front never meets the quadrature nodes head on.
double profile_cell_average_2d(const FrontEval& ev, double x0, double y0, double h) {
    // Distance from the origin to the cell square; quick reject outside.
    const double cx = std::max({x0, -(x0 + h), 0.0});
    const double cy = std::max({y0, -(y0 + h), 0.0});
    if (cx * cx + cy * cy >= ev.rs * ev.rs) return 0.0;
    const double ya = std::max(y0, -ev.rs);
    const double yb = std::min(y0 + h, ev.rs);
    if (!(ya < yb)) return 0.0;
    const double val = simpson(
        [&](double y) { return slice_integral(ev, y * y, x0, x0 + h); }, ya, yb, kCellPanels);
    return val / (h * h);
}

}  // namespace

Field barenblatt(const Grid& grid, double gamma, double t, double M) {
    if (!(t > 0.0)) throw SolverError("barenblatt: t must be positive");
    const SimilarityProfile prof(grid.dim, gamma, M);
    Field out(grid);
    const std::int64_t total = grid.total_cells();
    const double h = grid.dx();
    // Cell averages, not point samples: the scheme evolves cell averages, and
    // averaging keeps the discrete mass at M to quadrature accuracy, so
    // refinement errors measure the scheme rather than the sampling of the
    // sharp front.
    const FrontEval ev = make_front_eval(prof, t);
    if (grid.dim == 1) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            const double a = grid.axis_center(static_cast<int>(i)) - 0.5 * h;
            out[i] = slice_integral(ev, 0.0, a, a + h) / h;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            const auto c = grid.center(i);
            out[i] = profile_cell_average_2d(ev, c[0] - 0.5 * h, c[1] - 0.5 * h, h);
        }
    }
    return out;
}

InitialData gaussian_floor(const InitialData& data, double delta, const ReactionModel& model) {
    require_same_grid(data.n1_0.grid, data.n2_0.grid, "gaussian_floor");
    if (delta < 0.0) throw SolverError("gaussian_floor: delta must be >= 0");
    if (delta == 0.0) return data;

    const Grid& g = data.n1_0.grid;
    const std::int64_t total = g.total_cells();

    // The lift raises the peak density by at most delta; reject if that could
    // push the pressure above the homeostatic ceiling.
    double n_max = 0.0;
    for (std::int64_t i = 0; i < total; ++i)
        n_max = std::max(n_max, data.n1_0[i] + data.n2_0[i]);
    if (std::pow(n_max + delta, model.gamma) > model.P_H)
        throw FloorBreaksHomeostatic(
            "gaussian_floor: lifted peak density " + std::to_string(n_max + delta) +
            " would exceed the homeostatic pressure " + std::to_string(model.P_H));

    InitialData out{Field(g), Field(g)};
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const double n1 = data.n1_0[i];
        const double n2 = data.n2_0[i];
        const double n = n1 + n2;
        const double lift = delta * std::exp(-0.5 * g.radius2(i));
        const double share1 = n > 0.0 ? n1 / n : 0.5;
        out.n1_0[i] = n1 + share1 * lift;
        out.n2_0[i] = n2 + (1.0 - share1) * lift;
    }
    return out;
}

double subsolution_rate(const ReactionModel& model, double delta) {
    if (!(delta > 0.0)) throw SolverError("subsolution_rate: delta must be positive");
    const double gamma = model.gamma;
    const double R_inf = R_inf_norm(model);

    // Candidate floor n_(t,x) = delta exp(-|x|^2/2 - c t).  Inserting it into
    // the total-density equation and dividing by n_ leaves, at the worst time
    // t = 0,
    //   h(x) = -c + gamma n0(x)^gamma (1 - (gamma+1)|x|^2) + ||R||_inf,
    //   n0(x) = delta exp(-|x|^2/2),
    // and the floor is a subsolution iff h <= 0 everywhere.  h peaks at the
    // origin, so c = gamma delta^gamma + ||R||_inf always works; the search
    // below returns the smallest candidate on a coarse grid up to that value.
    const double c_sufficient = gamma * std::pow(delta, gamma) + R_inf;
    constexpr int kCandidates = 8;
    constexpr int kXSamples = 2000;
    for (int k = 1; k <= kCandidates; ++k) {
        const double c = c_sufficient * k / kCandidates;
        bool ok = true;
        for (int j = 0; j <= kXSamples && ok; ++j) {
            const double x = 10.0 * j / kXSamples;
            const double n0 = delta * std::exp(-0.5 * x * x);
            const double h =
                -c + gamma * std::pow(n0, gamma) * (1.0 - (gamma + 1.0) * x * x) + R_inf;
            ok = h <= 1e-12 * (1.0 + c_sufficient);
        }
        if (ok) return c;
    }
    return c_sufficient;
}

}  // namespace tgs
