#pragma once

#include "vtomo/calculus.hpp"
#include "vtomo/fft2.hpp"
#include "vtomo/geometry.hpp"

#include <vector>

namespace vtomo {

enum class DecompositionFlavor { global, dirichlet };

/// f = f_s + d phi with div(f_s) = 0.
struct Decomposition {
    CovectorField f_s;
    ScalarField phi;
    DecompositionFlavor flavor = DecompositionFlavor::global;
    Scalar residual = 0.0;  // achieved linear-solver residual (dirichlet)
    int iterations = 0;
    std::vector<Scalar> cg_energy;  // energy functional per CG iteration
};

/// Free-space Poisson solver: phi = G * rhs with G = (2 pi)^{-1} ln|x|,
/// padded cell-averaged kernel convolution. phi is gauged to mean zero over
/// the padding ring.
class PoissonFreeSpace {
  public:
    explicit PoissonFreeSpace(const Grid& base, int pad = 4);
    ScalarField solve(const ScalarField& rhs) const;

    /// Cell average of ln|x| over the origin cell of spacing h.
    static Scalar singular_cell_log(Scalar h);

  private:
    Grid base_;
    int pad_;
    int padded_;
    int off_;
    CArray2 kernel_fft_;
};

/// Global decomposition: phi solves Delta phi = div(f) in free space.
Decomposition helmholtz_global(const CovectorField& f, int pad = 4);

/// Local decomposition on a grid-aligned rectangle: 5-point Poisson solve
/// with homogeneous Dirichlet boundary, CG to relative residual 1e-8.
Decomposition helmholtz_dirichlet(const CovectorField& f, const Region& omega,
                                  Scalar tol = 1e-8, int max_iter = 10000);

struct SupportReport {
    Scalar leakage = 0.0;  // fraction of |phi| mass outside conv(spt f)
    int support_cells = 0;
};

/// Fraction of the L1 mass of dec.phi outside the convex hull of the
/// numerical support of f (threshold 1e-6 * max|f|).
SupportReport potential_support_check(const Decomposition& dec, const CovectorField& f);

}  // namespace vtomo
