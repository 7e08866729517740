#include <doctest.h>

#include "vtomo/calculus.hpp"
#include "vtomo/decomposition.hpp"
#include "vtomo/phantoms.hpp"

using namespace vtomo;

namespace {

Scalar max_abs_diff(const Array2& a, const Array2& b) {
    return (a - b).abs().maxCoeff();
}

}  // namespace

TEST_CASE("support is respected with hard zeros") {
    const Grid g(96);
    const RadialBump b = RadialBump::make({0.1, -0.05}, 0.2, 1.0, 0.6);
    const ScalarField s = sample_scalar(b, g);
    const CovectorField grad = sample_gradient(b, g);
    const CovectorField curl = sample_curl(b, g);
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j) {
            const Scalar r = (g.center(i, j) - b.center).norm();
            if (r >= b.r_support) {
                CHECK(s.values(i, j) == 0.0);
                CHECK(grad.comp[0](i, j) == 0.0);
                CHECK(curl.comp[1](i, j) == 0.0);
            }
            if (r <= b.r_plateau) {  // pure Gaussian inside the plateau
                const Scalar gauss = b.amplitude * std::exp(-r * r / (b.sigma * b.sigma));
                CHECK(s.values(i, j) == doctest::Approx(gauss).epsilon(1e-12));
            }
        }
}

TEST_CASE("generation is deterministic") {
    const Grid g(64);
    PhantomSpec spec;
    spec.kind = PhantomKind::mixed;
    spec.seed = 17;
    const Phantom a = make_phantom(spec, g);
    const Phantom b = make_phantom(spec, g);
    CHECK((a.oneform.comp[0] == b.oneform.comp[0]).all());
    CHECK((a.oneform.comp[1] == b.oneform.comp[1]).all());

    const CovectorField r1 = random_solenoidal(g, 42);
    const CovectorField r2 = random_solenoidal(g, 42);
    CHECK((r1.comp[0] == r2.comp[0]).all());
    const CovectorField r3 = random_solenoidal(g, 43);
    CHECK(max_abs_diff(r1.comp[0], r3.comp[0]) > 0);
}

TEST_CASE("analytic derivatives agree with finite differences at O(h^2)") {
    const RadialBump b = RadialBump::make({0.0, 0.1}, 0.25, 1.0, 0.7);
    auto errors = [&](int n) {
        const Grid g(n);
        const ScalarField phi = sample_scalar(b, g);
        const CovectorField dphi = sample_gradient(b, g);
        // interior only: the boundary ring uses one-sided stencils
        const auto [lo, hi] = interior_window(n);
        const int m = hi - lo;
        const CovectorField num = gradient(phi);
        const Scalar ge = std::max(
            max_abs_diff(num.comp[0].block(lo, lo, m, m), dphi.comp[0].block(lo, lo, m, m)),
            max_abs_diff(num.comp[1].block(lo, lo, m, m), dphi.comp[1].block(lo, lo, m, m)));
        // divergence of the analytic gradient vs the analytic Laplacian
        ScalarField lap(g);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) lap.values(i, j) = b.laplacian(g.center(i, j));
        const Scalar de = max_abs_diff(divergence(dphi).values.block(lo, lo, m, m),
                                       lap.values.block(lo, lo, m, m));
        return std::pair{ge, de};
    };
    const auto [g64, d64] = errors(64);
    const auto [g128, d128] = errors(128);
    CHECK(g64 / g128 >= 3.5);
    CHECK(d64 / d128 >= 3.5);
}

TEST_CASE("curl phantom satisfies the stream-function identities") {
    const Grid g(128);
    const RadialBump b = RadialBump::make({-0.1, 0.0}, 0.25, 1.0, 0.7);
    const CovectorField curl = sample_curl(b, g);
    // divergence-free analytically; numerically O(h^2)
    CHECK(interior_l2(divergence(curl).values) <= 1e-2 * interior_l2(curl));
    // star-df of curl(psi) = -Laplacian(psi)
    const auto [lo, hi] = interior_window(g.shape);
    const int m = hi - lo;
    ScalarField lap(g);
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j) lap.values(i, j) = -b.laplacian(g.center(i, j));
    const Scalar err = max_abs_diff(curl2d(curl).values.block(lo, lo, m, m),
                                    lap.values.block(lo, lo, m, m));
    CHECK(err <= 1e-2 * lap.max_abs());
}

TEST_CASE("mixed phantom parts are its Helmholtz decomposition") {
    const Grid g(128);
    PhantomSpec spec;
    spec.kind = PhantomKind::mixed;
    const Phantom ph = make_phantom(spec, g);
    const Scalar sup = ph.oneform.max_abs();
    CHECK(max_abs_diff(ph.oneform.comp[0], ph.curl_part.comp[0] + ph.grad_part.comp[0]) <=
          1e-14 * sup);
    const Decomposition dec = helmholtz_global(ph.oneform);
    CHECK(interior_rel_l2(dec.f_s, ph.curl_part) <= 0.03);
}

TEST_CASE("closed_in_region phantom keeps its curl part away from the region") {
    const Grid g(96);
    PhantomSpec spec;
    spec.kind = PhantomKind::closed_in_region;
    const Phantom ph = make_phantom(spec, g);
    // df = 0 where the curl part vanishes; the curl part must be nonzero somewhere
    CHECK(ph.curl_part.max_abs() > 0);
    CHECK(ph.grad_part.max_abs() > 0);
}

TEST_CASE("spec validation rejects bad parameters") {
    const Grid g(64);
    PhantomSpec spec;
    spec.bump.r_support = 0.95;  // support must fit in 0.9 * half_extent
    CHECK_THROWS_AS(make_phantom(spec, g), config_error);
    spec = PhantomSpec{};
    spec.bump.sigma = 0.5 * g.spacing();  // under-resolved
    CHECK_THROWS_AS(make_phantom(spec, g), config_error);
}
