#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "tgs/errors.hpp"

namespace tgs {

// Boundary treatment for the stencil operators.
//   Neumann   — zero normal flux / zero normal derivative (default; conserves mass)
//   Dirichlet — fields vanish on the box faces (absorbing; an experimental option)
enum class BoundaryKind : std::uint8_t { Neumann, Dirichlet };

// Uniform cell-centered grid on the box [-half_width, half_width]^dim,
// dim is 1 or 2.  Cell centers along each axis sit at
//   x_i = -half_width + (i + 1/2) * dx,   dx = 2 * half_width / cells_per_axis.
// 2D fields are stored row-major with the x index fastest:
//   flat = iy * cells_per_axis + ix.
struct Grid {
    int dim = 1;
    int cells_per_axis = 8;
    double half_width = 6.0;

    Grid() = default;
    Grid(int dim_, int cells, double half_width_)
        : dim(dim_), cells_per_axis(cells), half_width(half_width_) {
        if (dim != 1 && dim != 2)
            throw SolverError("Grid: dim must be 1 or 2, got " + std::to_string(dim));
        if (cells_per_axis < 8)
            throw SolverError("Grid: cells_per_axis must be >= 8, got " +
                              std::to_string(cells_per_axis));
        if (!(half_width > 0.0))
            throw SolverError("Grid: half_width must be positive");
    }

    double dx() const { return 2.0 * half_width / cells_per_axis; }

    std::int64_t total_cells() const {
        std::int64_t n = cells_per_axis;
        return dim == 1 ? n : n * n;
    }

    // Coordinate of the cell center along one axis.
    double axis_center(int i) const { return -half_width + (i + 0.5) * dx(); }

    std::int64_t flat(int ix, int iy) const {
        return static_cast<std::int64_t>(iy) * cells_per_axis + ix;
    }

    // Cell center of a flat index; the unused component is 0 in 1D.
    std::array<double, 2> center(std::int64_t idx) const {
        if (dim == 1) return {axis_center(static_cast<int>(idx)), 0.0};
        const int ix = static_cast<int>(idx % cells_per_axis);
        const int iy = static_cast<int>(idx / cells_per_axis);
        return {axis_center(ix), axis_center(iy)};
    }

    // Squared Euclidean distance of the cell center from the origin.
    double radius2(std::int64_t idx) const {
        const auto c = center(idx);
        return c[0] * c[0] + c[1] * c[1];
    }

    // Cell volume (length in 1D, area in 2D).
    double cell_volume() const {
        const double h = dx();
        return dim == 1 ? h : h * h;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && cells_per_axis == o.cells_per_axis &&
               half_width == o.half_width;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b)
        throw DimensionMismatch(std::string(where) + ": fields live on different grids");
}

}  // namespace tgs
