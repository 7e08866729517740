#include "vtomo/normal.hpp"

#include <cmath>

namespace vtomo {

Scalar RieszKernelTable::singular_cell_scalar(Scalar h) {
    // (1/h^2) * int_cell 2/|x| dx = 8 ln(1 + sqrt 2) / h
    return 8.0 * std::log(1.0 + std::numbers::sqrt2) / h;
}

RieszKernelTable::RieszKernelTable(const Grid& base, int pad)
    : base_(base), pad_(pad), padded_(pad * base.shape) {
    if (pad < 1) throw config_error("RieszKernelTable: pad factor must be >= 1");
    const Scalar h = base_.spacing();
    const int p = padded_;
    scalar_.resize(p, p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            tensor_[i][j].resize(p, p);

    for (int i = 0; i < p; ++i) {
        const Scalar x = offset(i);
        for (int j = 0; j < p; ++j) {
            const Scalar y = offset(j);
            const Scalar r = std::hypot(x, y);
            if (i == 0 && j == 0) {
                const Scalar s = singular_cell_scalar(h);
                scalar_(0, 0) = s;
                tensor_[0][0](0, 0) = 0.5 * s;
                tensor_[1][1](0, 0) = 0.5 * s;
                tensor_[0][1](0, 0) = 0.0;
                tensor_[1][0](0, 0) = 0.0;
            } else {
                scalar_(i, j) = 2.0 / r;
                const Scalar r3 = r * r * r;
                tensor_[0][0](i, j) = 2.0 * x * x / r3;
                tensor_[1][1](i, j) = 2.0 * y * y / r3;
                tensor_[0][1](i, j) = 2.0 * x * y / r3;
                tensor_[1][0](i, j) = tensor_[0][1](i, j);
            }
        }
    }
    scalar_fft_ = fft2(scalar_);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            tensor_fft_[i][j] = fft2(tensor_[i][j]);
}

NormalOperator::NormalOperator(const Grid& base, int pad)
    : table_(base, pad), off_((table_.padded_size() - base.shape) / 2) {}

Array2 NormalOperator::embed(const Array2& v) const {
    const int p = table_.padded_size();
    Array2 out = Array2::Zero(p, p);
    out.block(off_, off_, base().shape, base().shape) = v;
    return out;
}

Array2 NormalOperator::crop(const Array2& v) const {
    return v.block(off_, off_, base().shape, base().shape);
}

Array2 NormalOperator::scalar_padded(const ScalarField& f) const {
    if (!f.finite()) throw numerical_error("normal_scalar: non-finite input");
    if (f.grid != base()) throw config_error("normal_scalar: grid mismatch");
    const Scalar h2 = base().spacing() * base().spacing();
    CArray2 fhat = fft2(embed(f.values));
    return ifft2_real(CArray2(fhat * table_.scalar_kernel_fft())) * h2;
}

ScalarField NormalOperator::scalar(const ScalarField& f) const {
    return ScalarField(base(), crop(scalar_padded(f)));
}

std::array<Array2, 2> NormalOperator::oneform_padded(const CovectorField& f) const {
    if (!f.finite()) throw numerical_error("normal_oneform: non-finite input");
    if (f.grid != base()) throw config_error("normal_oneform: grid mismatch");
    const Scalar h2 = base().spacing() * base().spacing();
    const CArray2 f1 = fft2(embed(f.comp[0]));
    const CArray2 f2 = fft2(embed(f.comp[1]));
    std::array<Array2, 2> out;
    for (int i = 0; i < 2; ++i) {
        CArray2 acc = table_.tensor_kernel_fft(i, 0) * f1 + table_.tensor_kernel_fft(i, 1) * f2;
        out[i] = ifft2_real(acc) * h2;
    }
    return out;
}

CovectorField NormalOperator::oneform(const CovectorField& f) const {
    auto padded = oneform_padded(f);
    return CovectorField(base(), crop(padded[0]), crop(padded[1]));
}

CovectorField NormalOperator::matrix(const MatrixField& a, const CovectorField& f) const {
    return a.transposed().apply(oneform(a.apply(f)));
}

Array2 half_laplacian_periodic(const Array2& v, Scalar period, Scalar xi_cut) {
    const int rows = static_cast<int>(v.rows());
    const int cols = static_cast<int>(v.cols());
    CArray2 vhat = fft2(v);
    const Scalar k0 = 2.0 * std::numbers::pi / period;
    for (int i = 0; i < rows; ++i) {
        const Scalar xi1 = k0 * fft_freq(i, rows);
        for (int j = 0; j < cols; ++j) {
            const Scalar xi2 = k0 * fft_freq(j, cols);
            const Scalar xi = std::hypot(xi1, xi2);
            Scalar mult = xi;  // zero mode annihilated
            if (xi_cut > 0.0) {
                if (xi >= xi_cut) {
                    mult = 0.0;
                } else {
                    const Scalar w = std::cos(0.5 * std::numbers::pi * xi / xi_cut);
                    mult *= w * w;
                }
            }
            vhat(i, j) *= mult;
        }
    }
    return ifft2_real(vhat);
}

namespace {

Array2 half_laplacian_padded(const Array2& v, const Grid& g, int pad, Scalar xi_cut = 0.0) {
    const int n = g.shape;
    const int p = pad * n;
    const int off = (p - n) / 2;
    if (pad == 1) return half_laplacian_periodic(v, g.extent(), xi_cut);
    Array2 big = Array2::Zero(p, p);
    big.block(off, off, n, n) = v;
    Array2 res = half_laplacian_periodic(big, p * g.spacing(), xi_cut);
    return res.block(off, off, n, n);
}

}  // namespace

ScalarField half_laplacian(const ScalarField& f, int pad) {
    return ScalarField(f.grid, half_laplacian_padded(f.values, f.grid, pad));
}

CovectorField half_laplacian(const CovectorField& f, int pad) {
    return CovectorField(f.grid, half_laplacian_padded(f.comp[0], f.grid, pad),
                         half_laplacian_padded(f.comp[1], f.grid, pad));
}

ScalarField half_laplacian_apodized(const ScalarField& f, int pad, Scalar cutoff_rel) {
    if (cutoff_rel <= 0.0 || cutoff_rel > 1.0)
        throw config_error("half_laplacian_apodized: cutoff_rel must lie in (0, 1]");
    const Scalar xi_cut = cutoff_rel * std::numbers::pi / f.grid.spacing();
    return ScalarField(f.grid, half_laplacian_padded(f.values, f.grid, pad, xi_cut));
}

CovectorField half_laplacian_apodized(const CovectorField& f, int pad, Scalar cutoff_rel) {
    if (cutoff_rel <= 0.0 || cutoff_rel > 1.0)
        throw config_error("half_laplacian_apodized: cutoff_rel must lie in (0, 1]");
    const Scalar xi_cut = cutoff_rel * std::numbers::pi / f.grid.spacing();
    return CovectorField(f.grid, half_laplacian_padded(f.comp[0], f.grid, pad, xi_cut),
                         half_laplacian_padded(f.comp[1], f.grid, pad, xi_cut));
}

ScalarField invert_scalar(const ScalarField& f, const NormalOperator& op,
                          const InversionConstants& k) {
    Array2 n0 = op.scalar_padded(f);
    Array2 filtered = half_laplacian_periodic(n0, op.padded_period());
    return ScalarField(op.base(), op.crop(filtered) * k.c0);
}

ScalarField invert_scalar_from_n0(const ScalarField& n0f, const InversionConstants& k,
                                  int pad) {
    ScalarField out = half_laplacian(n0f, pad);
    out.values *= k.c0;
    return out;
}

CovectorField recover_solenoidal(const CovectorField& f, const NormalOperator& op,
                                 const InversionConstants& k) {
    auto n1 = op.oneform_padded(f);
    const Scalar c1 = k.c1_active();
    CovectorField out(op.base());
    for (int i = 0; i < 2; ++i)
        out.comp[i] = op.crop(half_laplacian_periodic(n1[i], op.padded_period())) * c1;
    return out;
}

CovectorField recover_solenoidal_from_n1(const CovectorField& n1f,
                                         const InversionConstants& k, int pad) {
    CovectorField out = half_laplacian(n1f, pad);
    const Scalar c1 = k.c1_active();
    out.comp[0] *= c1;
    out.comp[1] *= c1;
    return out;
}

Scalar calibrate_c1(const CovectorField& phantom, const NormalOperator& op) {
    if (phantom.max_abs() < 1e-12)
        throw config_error("calibrate_c1: degenerate phantom");
    InversionConstants unit;
    unit.use_paper_c1 = false;
    unit.c1_derived = 1.0;
    CovectorField rec = recover_solenoidal(phantom, op, unit);
    auto [lo, hi] = interior_window(phantom.grid.shape);
    const int w = hi - lo;
    Scalar num = 0, den = 0;
    for (int c = 0; c < 2; ++c) {
        const auto t = phantom.comp[c].block(lo, lo, w, w);
        const auto r = rec.comp[c].block(lo, lo, w, w);
        num += (t * r).sum();
        den += (r * r).sum();
    }
    if (den <= 0) throw config_error("calibrate_c1: degenerate recovery");
    return num / den;
}

}  // namespace vtomo
