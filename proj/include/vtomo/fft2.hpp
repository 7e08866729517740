#pragma once

#include "vtomo/field.hpp"

#include <complex>

namespace vtomo {

using CArray2 =
    Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Unnormalized 2-D DFT (row transforms then column transforms).
CArray2 fft2(const Array2& in);
CArray2 fft2(const CArray2& in);

/// Inverse 2-D DFT with 1/(rows*cols) normalization; real part.
Array2 ifft2_real(const CArray2& in);

/// Signed integer frequency for index i on an n-point DFT grid.
inline int fft_freq(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace vtomo
