#include <random>

#include "gtest/gtest.h"
#include "tgs/stencils.hpp"

using namespace tgs;

namespace {

// The parallel kernels must reproduce the serial reference implementations
// bit for bit: same stencil arithmetic, same association order per cell.

Field random_field(const Grid& g, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(g);
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = dist(rng);
    return f;
}

void expect_bitwise(const Field& a, const Field& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::int64_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]) << "cell " << i;
}

class ParallelKernels : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(ParallelKernels, GradientMatchesReference) {
    const int dim = GetParam();
    Grid g{dim, dim == 1 ? 1024 : 48, 3.0};
    std::mt19937 rng(42);
    const Field f = random_field(g, rng, -2.0, 2.0);
    const VectorField a = gradient(f);
    const VectorField b = ref::gradient(f);
    for (int axis = 0; axis < dim; ++axis) expect_bitwise(a[axis], b[axis]);
}

TEST_P(ParallelKernels, LaplacianMatchesReference) {
    const int dim = GetParam();
    Grid g{dim, dim == 1 ? 1024 : 48, 3.0};
    std::mt19937 rng(43);
    const Field f = random_field(g, rng, -2.0, 2.0);
    for (BoundaryKind bc : {BoundaryKind::Neumann, BoundaryKind::Dirichlet})
        expect_bitwise(laplacian(f, bc), ref::laplacian(f, bc));
}

TEST_P(ParallelKernels, DivDensityFluxMatchesReference) {
    const int dim = GetParam();
    Grid g{dim, dim == 1 ? 1024 : 48, 3.0};
    std::mt19937 rng(44);
    const Field n = random_field(g, rng, 0.0, 2.0);
    const Field p = random_field(g, rng, 0.0, 1.0);
    for (BoundaryKind bc : {BoundaryKind::Neumann, BoundaryKind::Dirichlet})
        expect_bitwise(div_density_flux(n, p, bc), ref::div_density_flux(n, p, bc));
}

TEST_P(ParallelKernels, UpwindAdvectMatchesReference) {
    const int dim = GetParam();
    Grid g{dim, dim == 1 ? 1024 : 48, 3.0};
    std::mt19937 rng(45);
    const Field c = random_field(g, rng, 0.0, 1.0);
    VectorField v(g);
    for (int axis = 0; axis < dim; ++axis) v[axis] = random_field(g, rng, -1.5, 1.5);
    expect_bitwise(upwind_advect(c, v), ref::upwind_advect(c, v));
}

INSTANTIATE_TEST_SUITE_P(BothDims, ParallelKernels, ::testing::Values(1, 2));
