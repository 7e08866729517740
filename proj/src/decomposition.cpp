#include "vtomo/decomposition.hpp"

#include "vtomo/fft2.hpp"

#include <algorithm>
#include <cmath>

namespace vtomo {

Scalar PoissonFreeSpace::singular_cell_log(Scalar h) {
    // (1/h^2) int_cell ln|x| dx = ln(h/2) + (ln 2 + pi/2 - 3) / 2
    return std::log(0.5 * h) + 0.5 * (std::numbers::ln2 + 0.5 * std::numbers::pi - 3.0);
}

PoissonFreeSpace::PoissonFreeSpace(const Grid& base, int pad)
    : base_(base), pad_(pad), padded_(pad * base.shape), off_((padded_ - base.shape) / 2) {
    if (pad < 2) throw config_error("PoissonFreeSpace: pad factor must be >= 2");
    const Scalar h = base_.spacing();
    const Scalar inv2pi = 1.0 / (2.0 * std::numbers::pi);
    Array2 kernel(padded_, padded_);
    for (int i = 0; i < padded_; ++i) {
        const Scalar x = fft_freq(i, padded_) * h;
        for (int j = 0; j < padded_; ++j) {
            const Scalar y = fft_freq(j, padded_) * h;
            kernel(i, j) = (i == 0 && j == 0)
                               ? inv2pi * singular_cell_log(h)
                               : inv2pi * std::log(std::hypot(x, y));
        }
    }
    kernel_fft_ = fft2(kernel);
}

ScalarField PoissonFreeSpace::solve(const ScalarField& rhs) const {
    if (rhs.grid != base_) throw config_error("PoissonFreeSpace: grid mismatch");
    if (!rhs.finite()) throw numerical_error("PoissonFreeSpace: non-finite rhs");
    const int n = base_.shape;
    const Scalar h2 = base_.spacing() * base_.spacing();
    Array2 big = Array2::Zero(padded_, padded_);
    big.block(off_, off_, n, n) = rhs.values;
    Array2 phi = ifft2_real(CArray2(fft2(big) * kernel_fft_)) * h2;
    // Gauge: mean zero over the padding ring immediately surrounding the
    // base block, where the decaying solution is essentially zero. A thin
    // ring avoids the wrap-around bias of the far padding region.
    const int w = std::max(2, n / 16);
    const Scalar outer = phi.block(off_ - w, off_ - w, n + 2 * w, n + 2 * w).sum();
    const Scalar inner = phi.block(off_, off_, n, n).sum();
    const Scalar ring_cells = Scalar(n + 2 * w) * (n + 2 * w) - Scalar(n) * n;
    const Scalar ring_mean = (outer - inner) / ring_cells;
    return ScalarField(base_, phi.block(off_, off_, n, n) - ring_mean);
}

Decomposition helmholtz_global(const CovectorField& f, int pad) {
    PoissonFreeSpace poisson(f.grid, pad);
    ScalarField phi = poisson.solve(divergence(f));
    CovectorField dphi = gradient(phi);
    Decomposition dec;
    dec.flavor = DecompositionFlavor::global;
    dec.phi = phi;
    dec.f_s = CovectorField(f.grid, f.comp[0] - dphi.comp[0], f.comp[1] - dphi.comp[1]);
    return dec;
}

namespace {

// Index box of cells whose centers lie strictly inside the rectangle.
struct IndexBox {
    int i0, i1, j0, j1;  // half-open
    int nx() const { return i1 - i0; }
    int ny() const { return j1 - j0; }
};

IndexBox rect_box(const Grid& g, const Region& omega) {
    if (omega.kind != Region::Kind::rect)
        throw config_error("helmholtz_dirichlet: omega must be a rectangle");
    IndexBox b{g.shape, 0, g.shape, 0};
    for (int i = 0; i < g.shape; ++i) {
        const Scalar x = g.coord(i);
        if (x > omega.lo.x() && x < omega.hi.x()) {
            b.i0 = std::min(b.i0, i);
            b.i1 = std::max(b.i1, i + 1);
        }
        if (x > omega.lo.y() && x < omega.hi.y()) {
            b.j0 = std::min(b.j0, i);
            b.j1 = std::max(b.j1, i + 1);
        }
    }
    if (b.i0 >= b.i1 || b.j0 >= b.j1)
        throw config_error("helmholtz_dirichlet: rectangle contains no cell centers");
    return b;
}

// 5-point -Laplacian with homogeneous Dirichlet boundary on the box.
Array2 neg_laplacian(const Array2& u, Scalar h) {
    const int nx = static_cast<int>(u.rows());
    const int ny = static_cast<int>(u.cols());
    Array2 out(nx, ny);
    const Scalar invh2 = 1.0 / (h * h);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const Scalar c = u(i, j);
            Scalar acc = 4.0 * c;
            acc -= (i > 0) ? u(i - 1, j) : 0.0;
            acc -= (i < nx - 1) ? u(i + 1, j) : 0.0;
            acc -= (j > 0) ? u(i, j - 1) : 0.0;
            acc -= (j < ny - 1) ? u(i, j + 1) : 0.0;
            out(i, j) = acc * invh2;
        }
    return out;
}

}  // namespace

Decomposition helmholtz_dirichlet(const CovectorField& f, const Region& omega,
                                  Scalar tol, int max_iter) {
    const Grid& g = f.grid;
    const Scalar h = g.spacing();
    const IndexBox box = rect_box(g, omega);
    const ScalarField divf = divergence(f);

    // Solve -Delta phi = -div(f) (SPD) by conjugate gradients.
    Array2 b = -divf.values.block(box.i0, box.j0, box.nx(), box.ny());
    Array2 x = Array2::Zero(box.nx(), box.ny());
    Array2 r = b;
    Array2 p = r;
    const Scalar bnorm = std::sqrt(b.square().sum());
    Scalar rho = r.square().sum();

    Decomposition dec;
    dec.flavor = DecompositionFlavor::dirichlet;
    if (bnorm > 0) {
        int it = 0;
        for (; it < max_iter; ++it) {
            if (std::sqrt(rho) <= tol * bnorm) break;
            Array2 ap = neg_laplacian(p, h);
            const Scalar alpha = rho / (p * ap).sum();
            x += alpha * p;
            r -= alpha * ap;
            // Energy functional 1/2 x'Ax - b'x; decreases monotonically.
            dec.cg_energy.push_back(0.5 * (x * neg_laplacian(x, h)).sum() - (b * x).sum());
            const Scalar rho_new = r.square().sum();
            p = r + (rho_new / rho) * p;
            rho = rho_new;
        }
        dec.iterations = it;
        dec.residual = std::sqrt(rho) / bnorm;
        if (dec.residual > tol)
            throw numerical_error("helmholtz_dirichlet: CG failed to converge, residual " +
                                  std::to_string(dec.residual));
    }

    ScalarField phi(g);
    phi.values.block(box.i0, box.j0, box.nx(), box.ny()) = x;
    CovectorField dphi = gradient(phi);
    dec.phi = phi;
    dec.f_s = CovectorField(g, f.comp[0] - dphi.comp[0], f.comp[1] - dphi.comp[1]);
    return dec;
}

namespace {

// Andrew monotone chain; returns hull in counterclockwise order.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool inside_hull(const std::vector<Vec2>& hull, const Vec2& p) {
    if (hull.size() < 3) return false;
    const int n = static_cast<int>(hull.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& a = hull[i];
        const Vec2& b = hull[(i + 1) % n];
        const Scalar cr = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
        if (cr < 0) return false;
    }
    return true;
}

}  // namespace

SupportReport potential_support_check(const Decomposition& dec, const CovectorField& f) {
    if (dec.flavor != DecompositionFlavor::global)
        throw config_error("potential_support_check: global flavor required");
    SupportReport rep;
    const Scalar fmax = f.max_abs();
    if (fmax == 0.0) return rep;  // leakage 0 by convention
    const Scalar thresh = 1e-6 * fmax;
    const Grid& g = f.grid;
    std::vector<Vec2> support;
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j)
            if (std::abs(f.comp[0](i, j)) > thresh || std::abs(f.comp[1](i, j)) > thresh)
                support.push_back(g.center(i, j));
    rep.support_cells = static_cast<int>(support.size());
    if (support.empty()) return rep;
    const std::vector<Vec2> hull = convex_hull(std::move(support));
    Scalar inside = 0, total = 0;
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j) {
            const Scalar m = std::abs(dec.phi.values(i, j));
            total += m;
            if (inside_hull(hull, g.center(i, j))) inside += m;
        }
    rep.leakage = total > 0 ? (total - inside) / total : 0.0;
    return rep;
}

}  // namespace vtomo
