#include <doctest.h>

#include "vtomo/calculus.hpp"
#include "vtomo/phantoms.hpp"

#include <cmath>
#include <random>

using namespace vtomo;

namespace {

Grid grid64() { return Grid(64); }

ScalarField sample(const Grid& g, auto&& fn) {
    ScalarField f(g);
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j)
            f.values(i, j) = fn(g.center(i, j));
    return f;
}

// Sum of two seeded bumps, compactly supported.
ScalarField random_smooth(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<Scalar> pos(-0.25, 0.25), amp(0.5, 1.5);
    ScalarField out(g);
    for (int b = 0; b < 2; ++b) {
        auto bump = RadialBump::make({pos(rng), pos(rng)}, 0.25, amp(rng), 0.6);
        out.values += sample_scalar(bump, g).values;
    }
    return out;
}

Scalar sup_err(const Array2& a, const Array2& b) { return (a - b).abs().maxCoeff(); }

}  // namespace

TEST_CASE("gradient of zero is zero") {
    CovectorField g = gradient(ScalarField(grid64()));
    CHECK(g.max_abs() == 0.0);
}

TEST_CASE("gradient of a gaussian matches the analytic gradient at O(h^2)") {
    const Scalar sigma = 0.3;
    auto phi_fn = [&](Vec2 x) { return std::exp(-x.squaredNorm() / (sigma * sigma)); };
    auto run = [&](int n) {
        Grid g(n);
        CovectorField num = gradient(sample(g, phi_fn));
        Scalar err = 0;
        auto [lo, hi] = interior_window(n, 0.9);
        for (int i = lo; i < hi; ++i)
            for (int j = lo; j < hi; ++j) {
                Vec2 x = g.center(i, j);
                Vec2 exact = -2.0 / (sigma * sigma) * phi_fn(x) * x;
                err = std::max(err, std::abs(num.comp[0](i, j) - exact.x()));
                err = std::max(err, std::abs(num.comp[1](i, j) - exact.y()));
            }
        return err;
    };
    const Scalar e64 = run(64), e128 = run(128);
    CHECK(e128 < 1e-2);
    CHECK(e64 / e128 > 3.5);  // second order
}

TEST_CASE("gradient of x1 is (1, 0) on interior nodes") {
    Grid g = grid64();
    CovectorField num = gradient(sample(g, [](Vec2 x) { return x.x(); }));
    for (int i = 1; i < g.shape - 1; ++i)
        for (int j = 1; j < g.shape - 1; ++j) {
            CHECK(num.comp[0](i, j) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(num.comp[1](i, j) == doctest::Approx(0.0).epsilon(1e-12));
        }
}

TEST_CASE("divergence of linear and constant fields") {
    Grid g = grid64();
    CovectorField lin(g);
    CovectorField cst(g);
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j) {
            lin.comp[0](i, j) = g.coord(i);
            lin.comp[1](i, j) = g.coord(j);
            cst.comp[0](i, j) = 3.0;
            cst.comp[1](i, j) = -7.0;
        }
    ScalarField dl = divergence(lin);
    for (int i = 1; i < g.shape - 1; ++i)
        for (int j = 1; j < g.shape - 1; ++j)
            CHECK(dl.values(i, j) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(divergence(cst).max_abs() < 1e-13);
}

TEST_CASE("div o curl vanishes at second order") {
    const RadialBump bump = RadialBump::make({0.05, -0.1}, 0.25, 1.0, 0.6);
    auto run = [&](int n) { return divergence(sample_curl(bump, Grid(n))).max_abs(); };
    const Scalar e64 = run(64), e128 = run(128);
    CHECK(e128 < 0.05 * sample_curl(bump, Grid(128)).max_abs());
    CHECK(e64 / e128 > 3.2);  // O(h^2), constant inflated by the cutoff window
}

TEST_CASE("curl o gradient vanishes identically on the discrete grid") {
    // central mixed differences commute, so the identity is exact in the
    // interior; the support margin keeps the boundary ring at zero
    CHECK(curl2d(gradient(random_smooth(Grid(64), 7))).max_abs() < 1e-12);
    CHECK(curl2d(gradient(random_smooth(Grid(128), 7))).max_abs() < 1e-12);
}

TEST_CASE("curl of a rigid rotation field is 2") {
    Grid g = grid64();
    CovectorField f(g);
    for (int i = 0; i < g.shape; ++i)
        for (int j = 0; j < g.shape; ++j) {
            f.comp[0](i, j) = -g.coord(j);
            f.comp[1](i, j) = g.coord(i);
        }
    ScalarField c = curl2d(f);
    for (int i = 1; i < g.shape - 1; ++i)
        for (int j = 1; j < g.shape - 1; ++j)
            CHECK(c.values(i, j) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("curl of curl-phantom equals minus the stream laplacian") {
    Grid g(128);
    auto bump = RadialBump::make({0.0, 0.0}, 0.3, 1.0, 0.7);
    ScalarField num = curl2d(sample_curl(bump, g));
    Scalar err = 0, lapmax = 0;
    auto [lo, hi] = interior_window(g.shape, 0.9);
    for (int i = lo; i < hi; ++i)
        for (int j = lo; j < hi; ++j) {
            err = std::max(err, std::abs(num.values(i, j) + bump.laplacian(g.center(i, j))));
            lapmax = std::max(lapmax, std::abs(bump.laplacian(g.center(i, j))));
        }
    CHECK(err < 2e-2 * lapmax);
}

TEST_CASE("mollify preserves mass and zero") {
    Grid g(128);
    const Scalar eps = 6.0 * g.spacing();
    CHECK(mollify(ScalarField(g), eps).max_abs() == 0.0);

    ScalarField disk = sample(g, [](Vec2 x) { return x.norm() < 0.4 ? 1.0 : 0.0; });
    ScalarField sm = mollify(disk, eps);
    CHECK(sm.values.sum() == doctest::Approx(disk.values.sum()).epsilon(1e-6));
}

TEST_CASE("mollify rejects under-resolved kernels") {
    Grid g(64);
    CHECK_THROWS_AS(mollify(ScalarField(g), 1.5 * g.spacing()), config_error);
}

TEST_CASE("mollified spike reproduces the sampled kernel") {
    Grid g(64);
    const Scalar eps = 5.0 * g.spacing();
    ScalarField spike(g);
    const int c = g.shape / 2;
    spike.values(c, c) = 1.0;
    ScalarField sm = mollify(spike, eps);

    // Independent oracle: evaluate the bump profile directly and normalize.
    const int m = static_cast<int>(std::ceil(eps / g.spacing()));
    Scalar mass = 0;
    for (int di = -m; di <= m; ++di)
        for (int dj = -m; dj <= m; ++dj)
            mass += mollifier_profile(g.spacing() * std::hypot(Scalar(di), Scalar(dj)), eps);
    for (int di = -m; di <= m; ++di)
        for (int dj = -m; dj <= m; ++dj) {
            const Scalar expect =
                mollifier_profile(g.spacing() * std::hypot(Scalar(di), Scalar(dj)), eps) / mass;
            CHECK(sm.values(c + di, c + dj) == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("mollify commutes with gradient in the interior") {
    Grid g(128);
    const Scalar eps = 6.0 * g.spacing();
    ScalarField phi = random_smooth(g, 11);
    CovectorField a = gradient(mollify(phi, eps));
    CovectorField b = mollify(gradient(phi), eps);
    auto [lo, hi] = interior_window(g.shape, 0.7);
    Scalar err = 0;
    for (int c = 0; c < 2; ++c)
        err = std::max(err, sup_err(a.comp[c].block(lo, lo, hi - lo, hi - lo),
                                    b.comp[c].block(lo, lo, hi - lo, hi - lo)));
    CHECK(err < 1e-3 * phi.max_abs());
}

TEST_CASE("matrix field rejects singular matrices") {
    Grid g = grid64();
    Eigen::Matrix2d m;
    m << 1, 2, 2, 4;
    CHECK_THROWS_AS(MatrixField(g, m), config_error);
}
