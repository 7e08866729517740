#pragma once

#include "vtomo/decomposition.hpp"
#include "vtomo/normal.hpp"
#include "vtomo/projector.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace vtomo {

struct Metric {
    std::string label;
    Scalar value = 0;
    Scalar tol = 0;
    bool lower_bound = false;  // pass means value >= tol
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    nlohmann::json config;
    std::vector<Metric> metrics;
    std::vector<std::string> notes;

    Metric& add(const std::string& label, Scalar value, Scalar tol, bool lower_bound = false);
    bool pass() const;
    nlohmann::json to_json() const;
};

/// curl(N1 f) vs (n-1)^{-1} N0(curl f): interior relative L2 residual.
ExperimentReport check_commutation(const CovectorField& f, const NormalOperator& op,
                                   Scalar tol = 0.05);

/// X1(d phi) masked to lines through V, relative to a reference solenoidal
/// sinogram (Theorem: gradients yield null data on lines meeting V).
ExperimentReport check_gauge_partial(const ScalarField& phi,
                                     const CovectorField& reference_solenoidal,
                                     const Region& v, const LineGrid& lines,
                                     Scalar tol = 1e-3);

/// Partial-data uniqueness: reports the curl hypothesis on V, the masked
/// data sup, and the recovered solenoidal norm. expect_gradient selects
/// which one-sided implication is asserted.
ExperimentReport partial_data_uniqueness(const CovectorField& f, const Region& v,
                                         const LineGrid& lines, bool expect_gradient,
                                         Scalar tol_data = 1e-3, Scalar tol_sol = 1e-2,
                                         Scalar control_floor = 1e-1);

/// Stokes-loop identity: circulation over the loop (gamma, shifted reversed
/// gamma) vs the strip integral of the curl, plus the h -> 0 limit quotient
/// against X0(curl f) on gamma.
ExperimentReport stokes_loop(const CovectorField& f, const Line& gamma, Scalar h_shift,
                             Scalar tol_gap = 1e-3);

/// Parity split of sphere-bundle data: even part recovers X0 g, odd part
/// recovers X1 f. Masks intersect under the reversal pairing.
std::pair<Sinogram, Sinogram> decouple_sphere_bundle(const Sinogram& combined);

/// Reconstruction of the solenoidal part from one-form sinogram data:
/// backprojection onto an extended grid, apodized ramp filter, crop. The
/// Hann roll-off at cutoff_rel times the grid Nyquist rate suppresses the
/// ray-quadrature noise of the backprojection, which carries no signal for
/// phantoms resolved by the grid.
CovectorField reconstruct_solenoidal_from_data(const Sinogram& sino, const Grid& base,
                                               const InversionConstants& k,
                                               int extend = 2, int pad = 2,
                                               Scalar cutoff_rel = 0.5);

/// Same route for scalar sinogram data: f = c0 (-Delta)^{1/2} X0* sigma.
ScalarField reconstruct_scalar_from_data(const Sinogram& sino, const Grid& base,
                                         const InversionConstants& k, int extend = 2,
                                         int pad = 2, Scalar cutoff_rel = 0.5);

/// X1 recovers the solenoidal part, X_perp the potential part; both parts
/// and their sum are compared against the mixed phantom's ground truth.
ExperimentReport transverse_complement(const CovectorField& f,
                                       const CovectorField& curl_part,
                                       const CovectorField& grad_part,
                                       const LineGrid& lines, const InversionConstants& k,
                                       Scalar tol_part = 0.10, Scalar tol_full = 0.12);

/// Support theorem for X_A: data on lines avoiding the convex set C vs the
/// curl of Af outside C. expect_null selects the constructed-phantom
/// direction; the control direction asserts the data floor instead.
ExperimentReport support_theorem_demo(const CovectorField& f, const MatrixField& a,
                                      const Region& c, const LineGrid& lines,
                                      bool expect_null, Scalar tol_mask = 1e-3,
                                      Scalar tol_curl = 1e-2, Scalar control_floor = 1e-1);

/// Line quadrature of a covector field over one oriented line (midpoint
/// rule, bilinear sampling), and of a scalar field.
Scalar line_integral(const CovectorField& f, const Line& gamma, Scalar pad_factor = 1.05);
Scalar line_integral(const ScalarField& f, const Line& gamma, Scalar pad_factor = 1.05);

}  // namespace vtomo
