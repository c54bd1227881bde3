#include "tgs/stencils.hpp"

#include <cmath>

// Parallel stencil kernels.  Every output value is computed with exactly the
// same sequence of floating-point operations as in reference_kernels.cpp and
// each loop iteration writes only its own cell, so results are bit-identical
// to the serial reference for any thread count.

namespace tgs {

VectorField gradient(const Field& f) {
    const Grid& g = f.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    const std::int64_t total = g.total_cells();
    VectorField out(g);
    const double* src = f.values.data();
    if (g.dim == 1) {
        double* dst = out[0].values.data();
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            if (i == 0)
                dst[i] = (src[1] - src[0]) / dx;
            else if (i == total - 1)
                dst[i] = (src[total - 1] - src[total - 2]) / dx;
            else
                dst[i] = (src[i + 1] - src[i - 1]) / (2.0 * dx);
        }
        return out;
    }
    double* dst_x = out[0].values.data();
    double* dst_y = out[1].values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        if (ix == 0)
            dst_x[i] = (src[i + 1] - src[i]) / dx;
        else if (ix == n - 1)
            dst_x[i] = (src[i] - src[i - 1]) / dx;
        else
            dst_x[i] = (src[i + 1] - src[i - 1]) / (2.0 * dx);
        if (iy == 0)
            dst_y[i] = (src[i + n] - src[i]) / dx;
        else if (iy == n - 1)
            dst_y[i] = (src[i] - src[i - n]) / dx;
        else
            dst_y[i] = (src[i + n] - src[i - n]) / (2.0 * dx);
    }
    return out;
}

Field laplacian(const Field& f, BoundaryKind bc) {
    const Grid& g = f.grid;
    const int n = g.cells_per_axis;
    const double dx2 = g.dx() * g.dx();
    const double gs = bc == BoundaryKind::Neumann ? 1.0 : -1.0;  // ghost = gs * edge
    const std::int64_t total = g.total_cells();
    Field out(g);
    const double* src = f.values.data();
    double* dst = out.values.data();
    if (g.dim == 1) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            const double lo = i > 0 ? src[i - 1] : gs * src[i];
            const double hi = i < total - 1 ? src[i + 1] : gs * src[i];
            dst[i] = (lo - 2.0 * src[i] + hi) / dx2;
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        const double c = src[i];
        const double xl = ix > 0 ? src[i - 1] : gs * c;
        const double xh = ix < n - 1 ? src[i + 1] : gs * c;
        const double yl = iy > 0 ? src[i - n] : gs * c;
        const double yh = iy < n - 1 ? src[i + n] : gs * c;
        dst[i] = (xl + xh + yl + yh - 4.0 * c) / dx2;
    }
    return out;
}

namespace {

// Flux across the face between cells a (low side) and b (high side); the face
// mobility is the arithmetic mean.
inline double face_flux(double ma, double qa, double mb, double qb, double dx) {
    return 0.5 * (ma + mb) * (qb - qa) / dx;
}

// Boundary face: zero flux for Neumann; for Dirichlet the exterior state is
// the odd reflection (mobility 0, potential -q), putting zero potential on
// the face itself.
inline double boundary_flux(double m, double q, double dx, BoundaryKind bc, bool high_side) {
    if (bc == BoundaryKind::Neumann) return 0.0;
    return high_side ? face_flux(m, q, 0.0, -q, dx) : face_flux(0.0, -q, m, q, dx);
}

}  // namespace

Field div_density_flux(const Field& mobility, const Field& potential, BoundaryKind bc) {
    require_same_grid(mobility.grid, potential.grid, "div_density_flux");
    const Grid& g = mobility.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    const std::int64_t total = g.total_cells();
    Field out(g);
    const double* m = mobility.values.data();
    const double* q = potential.values.data();
    double* dst = out.values.data();
    if (g.dim == 1) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            const double fh = i < total - 1 ? face_flux(m[i], q[i], m[i + 1], q[i + 1], dx)
                                            : boundary_flux(m[i], q[i], dx, bc, true);
            const double fl = i > 0 ? face_flux(m[i - 1], q[i - 1], m[i], q[i], dx)
                                    : boundary_flux(m[i], q[i], dx, bc, false);
            dst[i] = (fh - fl) / dx;
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        const double mc = m[i];
        const double qc = q[i];
        const double fxh = ix < n - 1 ? face_flux(mc, qc, m[i + 1], q[i + 1], dx)
                                      : boundary_flux(mc, qc, dx, bc, true);
        const double fxl = ix > 0 ? face_flux(m[i - 1], q[i - 1], mc, qc, dx)
                                  : boundary_flux(mc, qc, dx, bc, false);
        const double fyh = iy < n - 1 ? face_flux(mc, qc, m[i + n], q[i + n], dx)
                                      : boundary_flux(mc, qc, dx, bc, true);
        const double fyl = iy > 0 ? face_flux(m[i - n], q[i - n], mc, qc, dx)
                                  : boundary_flux(mc, qc, dx, bc, false);
        dst[i] = (fxh - fxl + fyh - fyl) / dx;
    }
    return out;
}

Field upwind_advect(const Field& c, const VectorField& v) {
    require_same_grid(c.grid, v.grid, "upwind_advect");
    const Grid& g = c.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    const std::int64_t total = g.total_cells();
    Field out(g);
    const double* cc = c.values.data();
    double* dst = out.values.data();
    if (g.dim == 1) {
        const double* vv = v[0].values.data();
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            const double vel = vv[i];
            double dc = 0.0;
            if (vel > 0.0)  // donor cell lies upstream (lower index)
                dc = i > 0 ? (cc[i] - cc[i - 1]) / dx : 0.0;
            else if (vel < 0.0)
                dc = i < total - 1 ? (cc[i + 1] - cc[i]) / dx : 0.0;
            double acc = 0.0;
            acc -= vel * dc;
            dst[i] = acc;
        }
        return out;
    }
    const double* vx = v[0].values.data();
    const double* vy = v[1].values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        double acc = 0.0;
        const double ux = vx[i];
        if (ux > 0.0)
            acc -= ux * (ix > 0 ? (cc[i] - cc[i - 1]) / dx : 0.0);
        else if (ux < 0.0)
            acc -= ux * (ix < n - 1 ? (cc[i + 1] - cc[i]) / dx : 0.0);
        const double uy = vy[i];
        if (uy > 0.0)
            acc -= uy * (iy > 0 ? (cc[i] - cc[i - n]) / dx : 0.0);
        else if (uy < 0.0)
            acc -= uy * (iy < n - 1 ? (cc[i + n] - cc[i]) / dx : 0.0);
        dst[i] = acc;
    }
    return out;
}

Field localizer(const Grid& g, double inner) {
    if (!(inner >= 0.0))
        throw SolverError("localizer: inner radius must be >= 0");
    if (inner + 1.0 > g.half_width + 1e-12)
        throw LocalizerExceedsBox(
            "localizer: support radius " + std::to_string(inner + 1.0) +
            " exceeds box half-width " + std::to_string(g.half_width));
    const std::int64_t total = g.total_cells();
    Field out(g);
    double* dst = out.values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        const double r = std::sqrt(g.radius2(i));
        const double s = r - inner;
        if (s <= 0.0)
            dst[i] = 1.0;
        else if (s >= 1.0)
            dst[i] = 0.0;
        else
            dst[i] = 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    }
    return out;
}

}  // namespace tgs
