#pragma once

#include "vtomo/sinogram.hpp"

namespace vtomo {

/// X0: line integrals of a scalar field. Composite midpoint rule with step
/// h/2 and bilinear sampling (zero outside the grid).
Sinogram xray_scalar(const ScalarField& f, const LineGrid& lines);

/// X1: line integrals of the tangential component of a one-form.
Sinogram xray_oneform(const CovectorField& f, const LineGrid& lines);

/// X_A = X1(Af) for a pointwise-invertible matrix field A.
Sinogram xray_matrix(const MatrixField& a, const CovectorField& f, const LineGrid& lines);

/// Transverse ray transform X_perp = X_B with B the clockwise 90-degree
/// rotation.
Sinogram xray_transverse(const CovectorField& f, const LineGrid& lines);

/// Exact discrete adjoints of the forward operators with respect to the
/// h^2-weighted pixel product and the (d_alpha * d_s)-weighted line product.
/// Masked bins contribute zero.
ScalarField backproject_scalar(const Sinogram& sino, const Grid& grid);
CovectorField backproject_oneform(const Sinogram& sino, const Grid& grid);

/// Quadrature t-range covering a square grid: half the domain diagonal.
inline Scalar line_clip(const Grid& g) { return std::numbers::sqrt2 * g.half_extent(); }

}  // namespace vtomo
