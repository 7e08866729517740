#include "vtomo/phantoms.hpp"

#include <cmath>
#include <random>

namespace vtomo {

namespace {

// C^5 smoothstep on [0,1]; S'(t) = 2772 t^5 (1-t)^5.
inline Scalar smoothstep5(Scalar t) {
    const Scalar t6 = std::pow(t, 6);
    return t6 * (462.0 + t * (-1980.0 + t * (3465.0 + t * (-3080.0 + t * (1386.0 - 252.0 * t)))));
}
inline Scalar dsmoothstep5(Scalar t) {
    const Scalar u = t * (1.0 - t);
    return 2772.0 * u * u * u * u * u;
}
inline Scalar ddsmoothstep5(Scalar t) {
    const Scalar u = t * (1.0 - t);
    return 13860.0 * u * u * u * u * (1.0 - 2.0 * t);
}

}  // namespace

Scalar RadialBump::window(Scalar r) const {
    if (r <= r_plateau) return 1.0;
    if (r >= r_support) return 0.0;
    return smoothstep5((r_support - r) / (r_support - r_plateau));
}

Scalar RadialBump::dwindow(Scalar r) const {
    if (r <= r_plateau || r >= r_support) return 0.0;
    const Scalar w = r_support - r_plateau;
    return -dsmoothstep5((r_support - r) / w) / w;
}

Scalar RadialBump::ddwindow(Scalar r) const {
    if (r <= r_plateau || r >= r_support) return 0.0;
    const Scalar w = r_support - r_plateau;
    return ddsmoothstep5((r_support - r) / w) / (w * w);
}

Scalar RadialBump::value_r(Scalar r) const {
    if (r >= r_support) return 0.0;
    return amplitude * std::exp(-r * r / (sigma * sigma)) * window(r);
}

Scalar RadialBump::slope_r(Scalar r) const {
    if (r >= r_support) return 0.0;
    const Scalar e = std::exp(-r * r / (sigma * sigma));
    const Scalar de = -2.0 * r / (sigma * sigma) * e;
    return amplitude * (de * window(r) + e * dwindow(r));
}

Scalar RadialBump::slope_over_r(Scalar r) const {
    if (r >= r_support) return 0.0;
    const Scalar e = std::exp(-r * r / (sigma * sigma));
    Scalar out = -2.0 / (sigma * sigma) * e * window(r);
    if (r > r_plateau) out += e * dwindow(r) / r;  // r >= r_plateau > 0 here
    return amplitude * out;
}

Scalar RadialBump::laplacian_r(Scalar r) const {
    if (r >= r_support) return 0.0;
    const Scalar s2 = sigma * sigma;
    const Scalar e = std::exp(-r * r / s2);
    const Scalar de = -2.0 * r / s2 * e;
    const Scalar dde = (4.0 * r * r / (s2 * s2) - 2.0 / s2) * e;
    const Scalar w = window(r), dw = dwindow(r), ddw = ddwindow(r);
    const Scalar second = dde * w + 2.0 * de * dw + e * ddw;
    return amplitude * second + slope_over_r(r);
}

void PhantomSpec::validate(const Grid& grid) const {
    const Scalar h = grid.spacing();
    const Scalar rmax = 0.9 * grid.half_extent();
    auto check = [&](const RadialBump& b) {
        if (b.r_support > rmax)
            throw config_error("PhantomSpec: support radius exceeds 0.9 * half extent");
        if (b.sigma < 3.0 * h)
            throw config_error("PhantomSpec: sigma below 3h at this grid");
        if (!(b.r_plateau > 0 && b.r_plateau < b.r_support))
            throw config_error("PhantomSpec: need 0 < r_plateau < r_support");
    };
    check(bump);
    const bool two_part = kind == PhantomKind::mixed || kind == PhantomKind::closed_in_region ||
                          kind == PhantomKind::sphere_bundle_pair;
    if (two_part) check(bump2);
    if (kind == PhantomKind::disk_indicator && !(disk_radius > 0 && disk_radius <= rmax))
        throw config_error("PhantomSpec: bad disk radius");
}

ScalarField sample_scalar(const RadialBump& b, const Grid& grid) {
    ScalarField out(grid);
    for (int i = 0; i < grid.shape; ++i)
        for (int j = 0; j < grid.shape; ++j)
            out.values(i, j) = b.value(grid.center(i, j));
    return out;
}

CovectorField sample_gradient(const RadialBump& b, const Grid& grid) {
    CovectorField out(grid);
    for (int i = 0; i < grid.shape; ++i)
        for (int j = 0; j < grid.shape; ++j) {
            const Vec2 g = b.grad(grid.center(i, j));
            out.comp[0](i, j) = g.x();
            out.comp[1](i, j) = g.y();
        }
    return out;
}

CovectorField sample_curl(const RadialBump& b, const Grid& grid) {
    CovectorField out(grid);
    for (int i = 0; i < grid.shape; ++i)
        for (int j = 0; j < grid.shape; ++j) {
            const Vec2 c = b.curl(grid.center(i, j));
            out.comp[0](i, j) = c.x();
            out.comp[1](i, j) = c.y();
        }
    return out;
}

Phantom make_phantom(const PhantomSpec& spec, const Grid& grid) {
    spec.validate(grid);
    Phantom ph;
    switch (spec.kind) {
        case PhantomKind::gaussian_scalar:
            ph.scalar = sample_scalar(spec.bump, grid);
            break;
        case PhantomKind::gradient:
            ph.potential = sample_scalar(spec.bump, grid);
            ph.oneform = sample_gradient(spec.bump, grid);
            ph.grad_part = ph.oneform;
            break;
        case PhantomKind::curl:
            ph.stream = sample_scalar(spec.bump, grid);
            ph.oneform = sample_curl(spec.bump, grid);
            ph.curl_part = ph.oneform;
            break;
        case PhantomKind::mixed:
        case PhantomKind::closed_in_region:
            // gradient part from bump, curl part from bump2; for
            // closed_in_region the caller places bump2 away from V.
            ph.potential = sample_scalar(spec.bump, grid);
            ph.stream = sample_scalar(spec.bump2, grid);
            ph.grad_part = sample_gradient(spec.bump, grid);
            ph.curl_part = sample_curl(spec.bump2, grid);
            ph.oneform = CovectorField(grid, ph.grad_part.comp[0] + ph.curl_part.comp[0],
                                       ph.grad_part.comp[1] + ph.curl_part.comp[1]);
            break;
        case PhantomKind::disk_indicator: {
            ScalarField f(grid);
            for (int i = 0; i < grid.shape; ++i)
                for (int j = 0; j < grid.shape; ++j)
                    f.values(i, j) =
                        (grid.center(i, j) - spec.bump.center).norm() < spec.disk_radius
                            ? 1.0
                            : 0.0;
            ph.scalar = f;
            break;
        }
        case PhantomKind::sphere_bundle_pair:
            ph.scalar = sample_scalar(spec.bump, grid);
            ph.stream = sample_scalar(spec.bump2, grid);
            ph.oneform = sample_curl(spec.bump2, grid);
            ph.curl_part = ph.oneform;
            break;
    }
    return ph;
}

CovectorField random_solenoidal(const Grid& grid, unsigned seed, int n_bumps) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<Scalar> pos(-0.3 * grid.half_extent(),
                                               0.3 * grid.half_extent());
    std::uniform_real_distribution<Scalar> width(0.18, 0.30);
    std::uniform_real_distribution<Scalar> amp(0.5, 1.5);
    std::bernoulli_distribution sign(0.5);
    CovectorField out(grid);
    for (int b = 0; b < n_bumps; ++b) {
        RadialBump bump = RadialBump::make({pos(rng), pos(rng)},
                                           width(rng) * grid.half_extent(),
                                           (sign(rng) ? 1.0 : -1.0) * amp(rng),
                                           0.55 * grid.half_extent());
        CovectorField c = sample_curl(bump, grid);
        out.comp[0] += c.comp[0];
        out.comp[1] += c.comp[1];
    }
    return out;
}

}  // namespace vtomo
