#include "vtomo/fft2.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace vtomo {

namespace {

using CVec = std::vector<std::complex<Scalar>>;

CArray2 fft2_impl(const CArray2& in, bool inverse) {
    const int rows = static_cast<int>(in.rows());
    const int cols = static_cast<int>(in.cols());
    Eigen::FFT<Scalar> fft;
    CArray2 tmp(rows, cols);
    CVec line(cols), out(cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) line[j] = in(i, j);
        if (inverse)
            fft.inv(out, line);
        else
            fft.fwd(out, line);
        for (int j = 0; j < cols; ++j) tmp(i, j) = out[j];
    }
    CArray2 res(rows, cols);
    line.resize(rows);
    out.resize(rows);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) line[i] = tmp(i, j);
        if (inverse)
            fft.inv(out, line);
        else
            fft.fwd(out, line);
        for (int i = 0; i < rows; ++i) res(i, j) = out[i];
    }
    return res;
}

}  // namespace

CArray2 fft2(const CArray2& in) { return fft2_impl(in, false); }

CArray2 fft2(const Array2& in) {
    return fft2_impl(in.cast<std::complex<Scalar>>(), false);
}

Array2 ifft2_real(const CArray2& in) {
    // Eigen::FFT::inv already applies the 1/n factor per axis.
    return fft2_impl(in, true).real();
}

}  // namespace vtomo
