// Timing harness for the stencil kernels: parallel production implementation
// against the serial reference, with a bitwise agreement check on the side.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "tgs/stencils.hpp"

using namespace tgs;

namespace {

Field random_field(const Grid& grid, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(grid);
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = dist(rng);
    return f;
}

bool bitwise_equal(const Field& a, const Field& b) {
    return a.size() == b.size() &&
           std::memcmp(a.values.data(), b.values.data(),
                       a.values.size() * sizeof(double)) == 0;
}

template <typename Fn>
double best_ms(Fn&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void bench_grid(const Grid& grid, std::mt19937& rng) {
    const Field a = random_field(grid, rng, 0.0, 1.0);
    const Field b = random_field(grid, rng, 0.0, 1.0);
    VectorField vel(grid);
    for (int axis = 0; axis < grid.dim; ++axis) vel[axis] = random_field(grid, rng, -1.0, 1.0);

    std::printf("grid: %dD, %d cells per axis (%lld cells)\n", grid.dim, grid.cells_per_axis,
                static_cast<long long>(grid.total_cells()));

    struct Row {
        const char* name;
        double serial_ms;
        double parallel_ms;
        bool match;
    };
    std::vector<Row> rows;

    {
        VectorField out_p, out_s;
        const double par = best_ms([&] { out_p = gradient(a); }, 5);
        const double ser = best_ms([&] { out_s = ref::gradient(a); }, 5);
        bool match = true;
        for (int axis = 0; axis < grid.dim; ++axis)
            match = match && bitwise_equal(out_p[axis], out_s[axis]);
        rows.push_back({"gradient", ser, par, match});
    }
    {
        Field out_p, out_s;
        const double par = best_ms([&] { out_p = laplacian(a); }, 5);
        const double ser = best_ms([&] { out_s = ref::laplacian(a); }, 5);
        rows.push_back({"laplacian", ser, par, bitwise_equal(out_p, out_s)});
    }
    {
        Field out_p, out_s;
        const double par = best_ms([&] { out_p = div_density_flux(a, b); }, 5);
        const double ser = best_ms([&] { out_s = ref::div_density_flux(a, b); }, 5);
        rows.push_back({"div_density_flux", ser, par, bitwise_equal(out_p, out_s)});
    }
    {
        Field out_p, out_s;
        const double par = best_ms([&] { out_p = upwind_advect(a, vel); }, 5);
        const double ser = best_ms([&] { out_s = ref::upwind_advect(a, vel); }, 5);
        rows.push_back({"upwind_advect", ser, par, bitwise_equal(out_p, out_s)});
    }

    std::printf("  %-18s %12s %12s %9s %8s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "bitwise");
    for (const Row& row : rows)
        std::printf("  %-18s %12.3f %12.3f %9.2fx %8s\n", row.name, row.serial_ms,
                    row.parallel_ms, row.serial_ms / row.parallel_ms,
                    row.match ? "match" : "DIFFER");
    std::printf("\n");
}

}  // namespace

int main() {
    std::mt19937 rng(12345);
    bench_grid(Grid{1, 1 << 16, 6.0}, rng);
    bench_grid(Grid{2, 512, 6.0}, rng);
    return 0;
}
