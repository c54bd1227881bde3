#include "tgs/stencils.hpp"

// Serial reference kernels.  Deliberately written as explicit 1D / 2D loops —
// a second, independent rendering of the same stencils that the tests compare
// bit-for-bit against the parallel versions in stencils.cpp.

namespace tgs {
namespace ref {

namespace {

inline double ghost(double edge, BoundaryKind bc) {
    return bc == BoundaryKind::Neumann ? edge : -edge;
}

}  // namespace

VectorField gradient(const Field& f) {
    const Grid& g = f.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    VectorField out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) {
            if (i == 0)
                out[0][i] = (f[1] - f[0]) / dx;
            else if (i == n - 1)
                out[0][i] = (f[n - 1] - f[n - 2]) / dx;
            else
                out[0][i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
        }
        return out;
    }
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            double gx, gy;
            if (ix == 0)
                gx = (f.at(1, iy) - f.at(0, iy)) / dx;
            else if (ix == n - 1)
                gx = (f.at(n - 1, iy) - f.at(n - 2, iy)) / dx;
            else
                gx = (f.at(ix + 1, iy) - f.at(ix - 1, iy)) / (2.0 * dx);
            if (iy == 0)
                gy = (f.at(ix, 1) - f.at(ix, 0)) / dx;
            else if (iy == n - 1)
                gy = (f.at(ix, n - 1) - f.at(ix, n - 2)) / dx;
            else
                gy = (f.at(ix, iy + 1) - f.at(ix, iy - 1)) / (2.0 * dx);
            out[0].at(ix, iy) = gx;
            out[1].at(ix, iy) = gy;
        }
    }
    return out;
}

Field laplacian(const Field& f, BoundaryKind bc) {
    const Grid& g = f.grid;
    const int n = g.cells_per_axis;
    const double dx2 = g.dx() * g.dx();
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) {
            const double lo = i > 0 ? f[i - 1] : ghost(f[0], bc);
            const double hi = i < n - 1 ? f[i + 1] : ghost(f[n - 1], bc);
            out[i] = (lo - 2.0 * f[i] + hi) / dx2;
        }
        return out;
    }
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double c = f.at(ix, iy);
            const double xl = ix > 0 ? f.at(ix - 1, iy) : ghost(c, bc);
            const double xh = ix < n - 1 ? f.at(ix + 1, iy) : ghost(c, bc);
            const double yl = iy > 0 ? f.at(ix, iy - 1) : ghost(c, bc);
            const double yh = iy < n - 1 ? f.at(ix, iy + 1) : ghost(c, bc);
            out.at(ix, iy) = (xl + xh + yl + yh - 4.0 * c) / dx2;
        }
    }
    return out;
}

namespace {

// Flux across the face between cells a (low side) and b (high side).
inline double face_flux(double ma, double qa, double mb, double qb, double dx) {
    return 0.5 * (ma + mb) * (qb - qa) / dx;
}

// Flux across a boundary face toward a vanishing exterior state (Dirichlet
// reconstructs the exterior by odd reflection, so the face value is zero).
inline double boundary_flux(double m, double q, double dx, BoundaryKind bc, bool high_side) {
    if (bc == BoundaryKind::Neumann) return 0.0;
    return high_side ? face_flux(m, q, 0.0, -q, dx) : face_flux(0.0, -q, m, q, dx);
}

}  // namespace

Field div_density_flux(const Field& mobility, const Field& potential, BoundaryKind bc) {
    require_same_grid(mobility.grid, potential.grid, "ref::div_density_flux");
    const Grid& g = mobility.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) {
            const double fh = i < n - 1
                                  ? face_flux(mobility[i], potential[i], mobility[i + 1],
                                              potential[i + 1], dx)
                                  : boundary_flux(mobility[i], potential[i], dx, bc, true);
            const double fl = i > 0
                                  ? face_flux(mobility[i - 1], potential[i - 1], mobility[i],
                                              potential[i], dx)
                                  : boundary_flux(mobility[i], potential[i], dx, bc, false);
            out[i] = (fh - fl) / dx;
        }
        return out;
    }
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double m = mobility.at(ix, iy);
            const double q = potential.at(ix, iy);
            const double fxh =
                ix < n - 1 ? face_flux(m, q, mobility.at(ix + 1, iy), potential.at(ix + 1, iy), dx)
                           : boundary_flux(m, q, dx, bc, true);
            const double fxl =
                ix > 0 ? face_flux(mobility.at(ix - 1, iy), potential.at(ix - 1, iy), m, q, dx)
                       : boundary_flux(m, q, dx, bc, false);
            const double fyh =
                iy < n - 1 ? face_flux(m, q, mobility.at(ix, iy + 1), potential.at(ix, iy + 1), dx)
                           : boundary_flux(m, q, dx, bc, true);
            const double fyl =
                iy > 0 ? face_flux(mobility.at(ix, iy - 1), potential.at(ix, iy - 1), m, q, dx)
                       : boundary_flux(m, q, dx, bc, false);
            out.at(ix, iy) = (fxh - fxl + fyh - fyl) / dx;
        }
    }
    return out;
}

Field upwind_advect(const Field& c, const VectorField& v) {
    require_same_grid(c.grid, v.grid, "ref::upwind_advect");
    const Grid& g = c.grid;
    const int n = g.cells_per_axis;
    const double dx = g.dx();
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) {
            const double vel = v[0][i];
            double dc = 0.0;
            if (vel > 0.0)
                dc = i > 0 ? (c[i] - c[i - 1]) / dx : 0.0;
            else if (vel < 0.0)
                dc = i < n - 1 ? (c[i + 1] - c[i]) / dx : 0.0;
            double acc = 0.0;
            acc -= vel * dc;
            out[i] = acc;
        }
        return out;
    }
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            double acc = 0.0;
            const double vx = v[0].at(ix, iy);
            if (vx > 0.0)
                acc -= vx * (ix > 0 ? (c.at(ix, iy) - c.at(ix - 1, iy)) / dx : 0.0);
            else if (vx < 0.0)
                acc -= vx * (ix < n - 1 ? (c.at(ix + 1, iy) - c.at(ix, iy)) / dx : 0.0);
            const double vy = v[1].at(ix, iy);
            if (vy > 0.0)
                acc -= vy * (iy > 0 ? (c.at(ix, iy) - c.at(ix, iy - 1)) / dx : 0.0);
            else if (vy < 0.0)
                acc -= vy * (iy < n - 1 ? (c.at(ix, iy + 1) - c.at(ix, iy)) / dx : 0.0);
            out.at(ix, iy) = acc;
        }
    }
    return out;
}

}  // namespace ref
}  // namespace tgs
