#pragma once

#include <algorithm>
#include <vector>

#include "tgs/grid.hpp"

namespace tgs {

// Scalar cell-centered field.  Value semantics throughout: operators return
// fresh fields, stepping never mutates its inputs.
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.total_cells()), fill) {}

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }

    double& operator[](std::int64_t i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return values[static_cast<std::size_t>(i)]; }

    double& at(int ix, int iy) { return values[static_cast<std::size_t>(grid.flat(ix, iy))]; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(grid.flat(ix, iy))]; }

    double max_value() const {
        double m = values.empty() ? 0.0 : values.front();
        for (double v : values) m = std::max(m, v);
        return m;
    }
    double min_value() const {
        double m = values.empty() ? 0.0 : values.front();
        for (double v : values) m = std::min(m, v);
        return m;
    }
};

// One field per spatial axis (a cell-centered vector field, e.g. a gradient).
struct VectorField {
    Grid grid;
    std::vector<Field> comp;  // comp.size() == grid.dim

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g) {
        comp.reserve(static_cast<std::size_t>(g.dim));
        for (int a = 0; a < g.dim; ++a) comp.emplace_back(g);
    }

    Field& operator[](int axis) { return comp[static_cast<std::size_t>(axis)]; }
    const Field& operator[](int axis) const { return comp[static_cast<std::size_t>(axis)]; }
};

}  // namespace tgs
