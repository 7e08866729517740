#pragma once

#include "vtomo/fft2.hpp"

#include <array>

namespace vtomo {

/// Dimension-dependent constants of the inversion formulas (n = 2).
/// The derived c1 = (n-1) * c0 comes from the Fourier symbol of the tensor
/// kernel; the printed |S^n| value is kept available for comparison.
struct InversionConstants {
    Scalar c0 = 1.0 / (4.0 * std::numbers::pi);
    Scalar c1_paper = 4.0 * std::numbers::pi;           // |S^2|
    Scalar c1_derived = 1.0 / (4.0 * std::numbers::pi);  // (n-1) * c0
    bool use_paper_c1 = false;

    Scalar c1_active() const { return use_paper_c1 ? c1_paper : c1_derived; }
};

/// Sampled Riesz kernels on a padded grid, wrap-around frequency layout:
/// index i corresponds to offset fft_freq(i, P) * h. The singular cell holds
/// the analytic cell average; tensor diagonal cells split the scalar value
/// equally so the trace identity holds at every sample.
class RieszKernelTable {
  public:
    RieszKernelTable(const Grid& base, int pad = 4);

    const Grid& base() const { return base_; }
    int pad() const { return pad_; }
    int padded_size() const { return padded_; }
    Scalar offset(int i) const { return fft_freq(i, padded_) * base_.spacing(); }

    const Array2& scalar_kernel() const { return scalar_; }
    const Array2& tensor_kernel(int i, int j) const { return tensor_[i][j]; }
    const CArray2& scalar_kernel_fft() const { return scalar_fft_; }
    const CArray2& tensor_kernel_fft(int i, int j) const { return tensor_fft_[i][j]; }

    /// Cell average of 2/|x| over the origin cell.
    static Scalar singular_cell_scalar(Scalar h);

  private:
    Grid base_;
    int pad_;
    int padded_;
    Array2 scalar_;
    std::array<std::array<Array2, 2>, 2> tensor_;
    CArray2 scalar_fft_;
    std::array<std::array<CArray2, 2>, 2> tensor_fft_;
};

/// N0, N1, N_A by padded kernel convolution.
class NormalOperator {
  public:
    explicit NormalOperator(const Grid& base, int pad = 4);

    const RieszKernelTable& kernels() const { return table_; }
    const Grid& base() const { return table_.base(); }
    int padded_size() const { return table_.padded_size(); }
    Scalar padded_period() const { return table_.padded_size() * base().spacing(); }

    /// N0 f = 2 (f * |.|^{1-n}), cropped to the base grid.
    ScalarField scalar(const ScalarField& f) const;
    /// Un-cropped padded N0 f (used by the inversion to limit wrap-around).
    Array2 scalar_padded(const ScalarField& f) const;

    /// (N1 f)_i = sum_j (2 x_i x_j / |x|^{n+1}) * f_j.
    CovectorField oneform(const CovectorField& f) const;
    std::array<Array2, 2> oneform_padded(const CovectorField& f) const;

    /// N_A = A^T o N1 o A.
    CovectorField matrix(const MatrixField& a, const CovectorField& f) const;

    Array2 embed(const Array2& v) const;
    Array2 crop(const Array2& v) const;

  private:
    RieszKernelTable table_;
    int off_;
};

/// Fourier multiplier |xi| on a periodic grid with the given period. A
/// positive xi_cut multiplies by a Hann roll-off cos^2(pi |xi| / (2 xi_cut))
/// vanishing at and beyond the cutoff.
Array2 half_laplacian_periodic(const Array2& v, Scalar period, Scalar xi_cut = 0.0);

/// (-Delta)^{1/2} with zero padding by `pad`; pad = 1 is the unpadded
/// periodic mode used by the plane-wave tests.
ScalarField half_laplacian(const ScalarField& f, int pad = 4);
CovectorField half_laplacian(const CovectorField& f, int pad = 4);

/// Apodized (-Delta)^{1/2}: ramp |xi| with a Hann roll-off ending at
/// cutoff_rel times the grid Nyquist rate pi / h. Used by the data-route
/// reconstructions, where the ray-quadrature noise concentrated near the
/// Nyquist rate would otherwise be amplified by the unwindowed ramp.
ScalarField half_laplacian_apodized(const ScalarField& f, int pad, Scalar cutoff_rel);
CovectorField half_laplacian_apodized(const CovectorField& f, int pad, Scalar cutoff_rel);

/// f = c0 (-Delta)^{1/2} N0 f, computed on the retained padded array.
ScalarField invert_scalar(const ScalarField& f, const NormalOperator& op,
                          const InversionConstants& k);
/// Same filter applied to an externally produced (cropped) N0 f.
ScalarField invert_scalar_from_n0(const ScalarField& n0f, const InversionConstants& k,
                                  int pad = 4);

/// f^s = c1 (-Delta)^{1/2} N1 f.
CovectorField recover_solenoidal(const CovectorField& f, const NormalOperator& op,
                                 const InversionConstants& k);
CovectorField recover_solenoidal_from_n1(const CovectorField& n1f,
                                         const InversionConstants& k, int pad = 4);

/// Least-squares constant mapping the c1 = 1 recovery of a solenoidal
/// phantom onto the phantom itself, over the interior window.
Scalar calibrate_c1(const CovectorField& solenoidal_phantom, const NormalOperator& op);

}  // namespace vtomo
