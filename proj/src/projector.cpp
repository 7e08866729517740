#include "vtomo/projector.hpp"

#include <cmath>
#include <string>

namespace vtomo {

namespace {

struct LineQuadrature {
    Scalar t0 = 0;   // first midpoint
    Scalar dt = 0;
    int steps = 0;
};

LineQuadrature quadrature_for(const Grid& g) {
    const Scalar t_clip = line_clip(g);
    const Scalar dt_target = 0.5 * g.spacing();
    const int steps = static_cast<int>(std::ceil(2.0 * t_clip / dt_target));
    LineQuadrature q;
    q.dt = 2.0 * t_clip / steps;
    q.t0 = -t_clip + 0.5 * q.dt;
    q.steps = steps;
    return q;
}

// Bilinear stencil at a physical point; indices < 0 mark out-of-grid taps.
struct Stencil {
    int ix[2], iy[2];
    Scalar wx[2], wy[2];
};

inline Stencil stencil_at(const Grid& g, Scalar x, Scalar y) {
    const Scalar h = g.spacing();
    const Scalar u = (x - g.lo) / h - 0.5;
    const Scalar v = (y - g.lo) / h - 0.5;
    const Scalar fu = std::floor(u);
    const Scalar fv = std::floor(v);
    const int i0 = static_cast<int>(fu);
    const int j0 = static_cast<int>(fv);
    Stencil s;
    s.wx[1] = u - fu;
    s.wx[0] = 1.0 - s.wx[1];
    s.wy[1] = v - fv;
    s.wy[0] = 1.0 - s.wy[1];
    const int n = g.shape;
    s.ix[0] = (i0 >= 0 && i0 < n) ? i0 : -1;
    s.ix[1] = (i0 + 1 >= 0 && i0 + 1 < n) ? i0 + 1 : -1;
    s.iy[0] = (j0 >= 0 && j0 < n) ? j0 : -1;
    s.iy[1] = (j0 + 1 >= 0 && j0 + 1 < n) ? j0 + 1 : -1;
    return s;
}

inline Scalar gather(const Array2& v, const Stencil& s) {
    Scalar acc = 0.0;
    for (int a = 0; a < 2; ++a) {
        if (s.ix[a] < 0) continue;
        for (int b = 0; b < 2; ++b) {
            if (s.iy[b] < 0) continue;
            acc += s.wx[a] * s.wy[b] * v(s.ix[a], s.iy[b]);
        }
    }
    return acc;
}

inline void scatter(Array2& v, const Stencil& s, Scalar w) {
    for (int a = 0; a < 2; ++a) {
        if (s.ix[a] < 0) continue;
        for (int b = 0; b < 2; ++b) {
            if (s.iy[b] < 0) continue;
            v(s.ix[a], s.iy[b]) += w * s.wx[a] * s.wy[b];
        }
    }
}

template <typename Integrand>
Sinogram forward(const LineGrid& lines, const Grid& grid, SinogramKind kind,
                 Integrand&& integrand) {
    Sinogram sino(lines, kind);
    const LineQuadrature q = quadrature_for(grid);
    for (int k = 0; k < lines.n_angles; ++k) {
        const Scalar alpha = lines.angle(k);
        const Vec2 theta{std::cos(alpha), std::sin(alpha)};
        const Vec2 nu{-theta.y(), theta.x()};
        for (int j = 0; j < lines.n_offsets; ++j) {
            const Vec2 z = lines.offset(j) * nu;
            Scalar acc = 0.0;
            for (int m = 0; m < q.steps; ++m) {
                const Scalar t = q.t0 + m * q.dt;
                const Vec2 p = z + t * theta;
                acc += integrand(stencil_at(grid, p.x(), p.y()), theta);
            }
            const Scalar value = acc * q.dt;
            if (!std::isfinite(value))
                throw numerical_error("forward projector: NaN at line (" +
                                      std::to_string(k) + "," + std::to_string(j) + ")");
            sino.values(k, j) = value;
        }
    }
    return sino;
}

}  // namespace

Sinogram xray_scalar(const ScalarField& f, const LineGrid& lines) {
    return forward(lines, f.grid, SinogramKind::scalar,
                   [&](const Stencil& s, const Vec2&) { return gather(f.values, s); });
}

Sinogram xray_oneform(const CovectorField& f, const LineGrid& lines) {
    return forward(lines, f.grid, SinogramKind::oneform,
                   [&](const Stencil& s, const Vec2& theta) {
                       return theta.x() * gather(f.comp[0], s) +
                              theta.y() * gather(f.comp[1], s);
                   });
}

Sinogram xray_matrix(const MatrixField& a, const CovectorField& f, const LineGrid& lines) {
    return xray_oneform(a.apply(f), lines);
}

Sinogram xray_transverse(const CovectorField& f, const LineGrid& lines) {
    return xray_matrix(MatrixField::rotation_clockwise(f.grid), f, lines);
}

namespace {

template <typename Scatter>
void backproject(const Sinogram& sino, const Grid& grid, Scatter&& scatter_sample) {
    const LineQuadrature q = quadrature_for(grid);
    const LineGrid& lines = sino.grid;
    const Scalar scale = lines.d_alpha() * lines.d_offset() /
                         (grid.spacing() * grid.spacing());
    for (int k = 0; k < lines.n_angles; ++k) {
        const Scalar alpha = lines.angle(k);
        const Vec2 theta{std::cos(alpha), std::sin(alpha)};
        const Vec2 nu{-theta.y(), theta.x()};
        for (int j = 0; j < lines.n_offsets; ++j) {
            if (sino.masked_out(k, j)) continue;
            const Scalar w = sino.values(k, j) * q.dt * scale;
            if (w == 0.0) continue;
            const Vec2 z = lines.offset(j) * nu;
            for (int m = 0; m < q.steps; ++m) {
                const Scalar t = q.t0 + m * q.dt;
                const Vec2 p = z + t * theta;
                scatter_sample(stencil_at(grid, p.x(), p.y()), theta, w);
            }
        }
    }
}

}  // namespace

ScalarField backproject_scalar(const Sinogram& sino, const Grid& grid) {
    if (sino.kind != SinogramKind::scalar)
        throw config_error("backproject_scalar: sinogram kind mismatch");
    ScalarField out(grid);
    backproject(sino, grid, [&](const Stencil& s, const Vec2&, Scalar w) {
        scatter(out.values, s, w);
    });
    return out;
}

CovectorField backproject_oneform(const Sinogram& sino, const Grid& grid) {
    if (sino.kind != SinogramKind::oneform)
        throw config_error("backproject_oneform: sinogram kind mismatch");
    CovectorField out(grid);
    backproject(sino, grid, [&](const Stencil& s, const Vec2& theta, Scalar w) {
        scatter(out.comp[0], s, w * theta.x());
        scatter(out.comp[1], s, w * theta.y());
    });
    return out;
}

}  // namespace vtomo
