#pragma once

#include "tgs/field.hpp"

namespace tgs {

// Finite-volume / finite-difference operators on cell-centered fields.
// All operators are pure: they allocate and return their result.
//
// Boundary handling:
//   * gradient   — centered differences at interior cells, first-order
//                  one-sided differences in the boundary cell layer.
//                  Unaffected by BoundaryKind (no ghost value is needed).
//   * laplacian  — ghost cells mirror the edge value (Neumann) or negate it
//                  (Dirichlet, i.e. the field vanishes on the box face).
//   * div_density_flux — face fluxes; boundary faces carry zero flux
//                  (Neumann) or the flux toward a vanishing exterior state
//                  (Dirichlet).  With Neumann the cell sums telescope to
//                  exactly zero: total mass is conserved to roundoff.
//   * upwind_advect — donor-cell upwinding; ghost cells always mirror the
//                  edge value (a transported fraction has no exterior value).

// Centered gradient of a scalar field.
VectorField gradient(const Field& f);

// (2*dim+1)-point Laplacian.
Field laplacian(const Field& f, BoundaryKind bc = BoundaryKind::Neumann);

// Conservative divergence of a gradient flux:  div[ m * grad(q) ].
// Face mobility is the arithmetic mean of the two adjacent cells.  Used both
// for the density flux div[n grad p] and the fraction flux div[p grad c].
Field div_density_flux(const Field& mobility, const Field& potential,
                       BoundaryKind bc = BoundaryKind::Neumann);

// First-order upwind transport term  -v . grad(c)  (donor-cell).
Field upwind_advect(const Field& c, const VectorField& v);

// Radial C^2 cutoff: 1 on the ball of radius `inner`, 0 outside the ball of
// radius `inner + 1`, bridged by the quintic q(s) = 1 - s^3 (10 - 15 s + 6 s^2).
// Throws LocalizerExceedsBox unless inner + 1 <= grid.half_width.
Field localizer(const Grid& g, double inner);

// Serial reference implementations, written independently of the parallel
// kernels above.  The unit tests require bit-identical results; the benchmark
// compares throughput.
namespace ref {
VectorField gradient(const Field& f);
Field laplacian(const Field& f, BoundaryKind bc = BoundaryKind::Neumann);
Field div_density_flux(const Field& mobility, const Field& potential,
                       BoundaryKind bc = BoundaryKind::Neumann);
Field upwind_advect(const Field& c, const VectorField& v);
}  // namespace ref

}  // namespace tgs
