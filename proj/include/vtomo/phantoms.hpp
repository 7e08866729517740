#pragma once

#include "vtomo/field.hpp"
#include "vtomo/geometry.hpp"

#include <vector>

namespace vtomo {

/// Gaussian bump multiplied by a smooth radial cutoff: exactly zero outside
/// r_support, pure Gaussian inside r_plateau, C^5 transition between. All
/// derivatives are available analytically.
struct RadialBump {
    Vec2 center{0, 0};
    Scalar sigma = 0.25;
    Scalar amplitude = 1.0;
    Scalar r_support = 0.8;
    Scalar r_plateau = 0.48;  // default 0.6 * r_support

    static RadialBump make(Vec2 c, Scalar sigma, Scalar amp, Scalar r_support) {
        return RadialBump{c, sigma, amp, r_support, 0.6 * r_support};
    }

    Scalar window(Scalar r) const;
    Scalar dwindow(Scalar r) const;
    Scalar ddwindow(Scalar r) const;

    Scalar value_r(Scalar r) const;   // F(r)
    Scalar slope_r(Scalar r) const;   // F'(r)
    Scalar slope_over_r(Scalar r) const;  // F'(r)/r, finite at r = 0
    Scalar laplacian_r(Scalar r) const;   // F'' + F'/r (2-D radial Laplacian)

    Scalar value(const Vec2& x) const { return value_r((x - center).norm()); }
    Vec2 grad(const Vec2& x) const {
        const Vec2 d = x - center;
        return slope_over_r(d.norm()) * d;
    }
    /// (d2 psi, -d1 psi) for stream function psi = this bump.
    Vec2 curl(const Vec2& x) const {
        const Vec2 d = x - center;
        const Scalar s = slope_over_r(d.norm());
        return {s * d.y(), -s * d.x()};
    }
    Scalar laplacian(const Vec2& x) const { return laplacian_r((x - center).norm()); }
};

enum class PhantomKind {
    gaussian_scalar,
    gradient,
    curl,
    mixed,
    disk_indicator,
    closed_in_region,
    sphere_bundle_pair,
};

struct PhantomSpec {
    PhantomKind kind = PhantomKind::gaussian_scalar;
    RadialBump bump = RadialBump::make({0, 0}, 0.25, 1.0, 0.8);
    RadialBump bump2 = RadialBump::make({0, 0}, 0.25, 1.0, 0.8);  // second part
    Scalar disk_radius = 0.5;
    unsigned seed = 0;

    void validate(const Grid& grid) const;
};

/// Sampled fields with their analytic ground truth attached where the
/// construction provides one.
struct Phantom {
    ScalarField scalar;        // gaussian_scalar, disk_indicator, pair g
    CovectorField oneform;     // vector kinds, pair f
    CovectorField grad_part;   // mixed / closed_in_region ground truth
    CovectorField curl_part;
    ScalarField potential;     // phi for gradient/mixed kinds
    ScalarField stream;        // psi for curl/mixed kinds
};

Phantom make_phantom(const PhantomSpec& spec, const Grid& grid);

ScalarField sample_scalar(const RadialBump& b, const Grid& grid);
CovectorField sample_gradient(const RadialBump& b, const Grid& grid);
CovectorField sample_curl(const RadialBump& b, const Grid& grid);

/// Seeded random superposition of curl bumps (solenoidal by construction).
CovectorField random_solenoidal(const Grid& grid, unsigned seed, int n_bumps = 3);

}  // namespace vtomo
