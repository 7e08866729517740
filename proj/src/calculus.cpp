#include "vtomo/calculus.hpp"

#include <cmath>

namespace vtomo {

namespace {

// Partial derivative along axis 0 (x) or 1 (y); central in the interior,
// one-sided at the boundary ring.
Array2 diff(const Array2& v, int axis, Scalar h) {
    const int n = static_cast<int>(v.rows());
    Array2 out(n, n);
    const Scalar inv2h = 1.0 / (2.0 * h);
    const Scalar invh = 1.0 / h;
    auto at = [&](int i, int j) { return axis == 0 ? v(i, j) : v(j, i); };
    auto set = [&](int i, int j, Scalar x) {
        if (axis == 0)
            out(i, j) = x;
        else
            out(j, i) = x;
    };
    for (int j = 0; j < n; ++j) {
        set(0, j, (at(1, j) - at(0, j)) * invh);
        for (int i = 1; i < n - 1; ++i)
            set(i, j, (at(i + 1, j) - at(i - 1, j)) * inv2h);
        set(n - 1, j, (at(n - 1, j) - at(n - 2, j)) * invh);
    }
    return out;
}

}  // namespace

CovectorField gradient(const ScalarField& phi) {
    if (!phi.finite()) throw numerical_error("gradient: non-finite input");
    const Scalar h = phi.grid.spacing();
    return CovectorField(phi.grid, diff(phi.values, 0, h), diff(phi.values, 1, h));
}

ScalarField divergence(const CovectorField& f) {
    if (!f.finite()) throw numerical_error("divergence: non-finite input");
    const Scalar h = f.grid.spacing();
    return ScalarField(f.grid, diff(f.comp[0], 0, h) + diff(f.comp[1], 1, h));
}

ScalarField curl2d(const CovectorField& f) {
    if (f.grid.n != 2) throw config_error("curl2d: only n = 2 supported");
    if (!f.finite()) throw numerical_error("curl2d: non-finite input");
    const Scalar h = f.grid.spacing();
    return ScalarField(f.grid, diff(f.comp[1], 0, h) - diff(f.comp[0], 1, h));
}

Scalar mollifier_profile(Scalar r, Scalar eps) {
    const Scalar u = r / eps;
    if (u >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

namespace {

Array2 mollify_array(const Array2& v, const Grid& g, Scalar eps) {
    const Scalar h = g.spacing();
    const int m = static_cast<int>(std::ceil(eps / h));
    const int kn = 2 * m + 1;
    Array2 kernel(kn, kn);
    for (int di = -m; di <= m; ++di)
        for (int dj = -m; dj <= m; ++dj)
            kernel(di + m, dj + m) =
                mollifier_profile(h * std::hypot(Scalar(di), Scalar(dj)), eps);
    const Scalar mass = kernel.sum();
    kernel /= mass;  // unit discrete mass; the h^2 weight cancels

    const int n = static_cast<int>(v.rows());
    Array2 out = Array2::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar acc = 0.0;
            const int ilo = std::max(0, i - m), ihi = std::min(n - 1, i + m);
            const int jlo = std::max(0, j - m), jhi = std::min(n - 1, j + m);
            for (int ii = ilo; ii <= ihi; ++ii)
                for (int jj = jlo; jj <= jhi; ++jj)
                    acc += kernel(i - ii + m, j - jj + m) * v(ii, jj);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

ScalarField mollify(const ScalarField& f, Scalar eps) {
    if (eps < 2.0 * f.grid.spacing())
        throw config_error("mollify: eps < 2h, kernel under-resolved");
    return ScalarField(f.grid, mollify_array(f.values, f.grid, eps));
}

CovectorField mollify(const CovectorField& f, Scalar eps) {
    if (eps < 2.0 * f.grid.spacing())
        throw config_error("mollify: eps < 2h, kernel under-resolved");
    return CovectorField(f.grid, mollify_array(f.comp[0], f.grid, eps),
                         mollify_array(f.comp[1], f.grid, eps));
}

Scalar interior_l2(const Array2& a, double fraction) {
    auto [lo, hi] = interior_window(static_cast<int>(a.rows()), fraction);
    return std::sqrt(a.block(lo, lo, hi - lo, hi - lo).square().sum());
}

Scalar interior_rel_l2(const Array2& a, const Array2& b, double fraction) {
    auto [lo, hi] = interior_window(static_cast<int>(a.rows()), fraction);
    const auto da = a.block(lo, lo, hi - lo, hi - lo);
    const auto db = b.block(lo, lo, hi - lo, hi - lo);
    const Scalar nb = std::sqrt(db.square().sum());
    const Scalar diff = std::sqrt((da - db).square().sum());
    return nb > 0 ? diff / nb : diff;
}

Scalar interior_l2(const CovectorField& a, double fraction) {
    const Scalar n0 = interior_l2(a.comp[0], fraction);
    const Scalar n1 = interior_l2(a.comp[1], fraction);
    return std::sqrt(n0 * n0 + n1 * n1);
}

Scalar interior_rel_l2(const CovectorField& a, const CovectorField& b, double fraction) {
    auto [lo, hi] = interior_window(a.grid.shape, fraction);
    Scalar diff = 0, nb = 0;
    for (int c = 0; c < 2; ++c) {
        const auto da = a.comp[c].block(lo, lo, hi - lo, hi - lo);
        const auto db = b.comp[c].block(lo, lo, hi - lo, hi - lo);
        diff += (da - db).square().sum();
        nb += db.square().sum();
    }
    return nb > 0 ? std::sqrt(diff / nb) : std::sqrt(diff);
}

}  // namespace vtomo
