#include <doctest.h>

#include "vtomo/calculus.hpp"
#include "vtomo/decomposition.hpp"
#include "vtomo/phantoms.hpp"

#include <cmath>
#include <numbers>

using namespace vtomo;

namespace {

Phantom mixed_phantom(const Grid& g) {
    PhantomSpec spec;
    spec.kind = PhantomKind::mixed;
    return make_phantom(spec, g);
}

Scalar dirichlet_max_error(int n) {
    // Manufactured solution on Omega = (-0.5, 0.5)^2: phi = sin(pi u) sin(pi v)
    // in Omega-normalized coordinates u, v in (0, 1), so f = d phi exactly.
    const Grid g(n);
    const Region omega = Region::rect({-0.5, -0.5}, {0.5, 0.5});
    const Scalar w = 1.0;  // omega side length
    auto phi_exact = [&](Scalar x, Scalar y) {
        const Scalar u = (x + 0.5) / w, v = (y + 0.5) / w;
        if (u <= 0 || u >= 1 || v <= 0 || v >= 1) return 0.0;
        return std::sin(std::numbers::pi * u) * std::sin(std::numbers::pi * v);
    };
    CovectorField f(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar x = g.coord(i), y = g.coord(j);
            const Scalar u = (x + 0.5) / w, v = (y + 0.5) / w;
            if (u <= 0 || u >= 1 || v <= 0 || v >= 1) continue;
            const Scalar c = std::numbers::pi / w;
            f.comp[0](i, j) = c * std::cos(std::numbers::pi * u) * std::sin(std::numbers::pi * v);
            f.comp[1](i, j) = c * std::sin(std::numbers::pi * u) * std::cos(std::numbers::pi * v);
        }
    const Decomposition dec = helmholtz_dirichlet(f, omega);
    Scalar err = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            err = std::max(err, std::abs(dec.phi.values(i, j) -
                                         phi_exact(g.coord(i), g.coord(j))));
    return err;
}

}  // namespace

TEST_CASE("global decomposition on a pure gradient") {
    const Grid g(128);
    const Phantom ph = mixed_phantom(g);
    const Decomposition dec = helmholtz_global(ph.grad_part);
    CHECK(interior_l2(dec.f_s) <= 1e-2 * interior_l2(ph.grad_part));
    // recovered potential matches up to an additive constant
    const auto [ilo, ihi] = interior_window(g.shape);
    const int m = ihi - ilo;
    Array2 diff = dec.phi.values.block(ilo, ilo, m, m) -
                  ph.potential.values.block(ilo, ilo, m, m);
    diff -= diff.mean();
    CHECK(std::sqrt(diff.square().mean()) <=
          1e-2 * std::sqrt(ph.potential.values.square().mean()));
}

TEST_CASE("global decomposition on a divergence-free field") {
    const Grid g(128);
    const Phantom ph = mixed_phantom(g);
    const Decomposition dec = helmholtz_global(ph.curl_part);
    CHECK(interior_rel_l2(dec.f_s, ph.curl_part) <= 1e-2);
}

TEST_CASE("global decomposition splits a mixed phantom") {
    const Grid g(128);
    const Phantom ph = mixed_phantom(g);
    const Decomposition dec = helmholtz_global(ph.oneform);
    CHECK(interior_rel_l2(dec.f_s, ph.curl_part) <= 0.03);

    // exactness of the split (algebraic identity)
    const CovectorField dphi = gradient(dec.phi);
    const Scalar sup = ph.oneform.max_abs();
    CHECK(((ph.oneform.comp[0] - dec.f_s.comp[0] - dphi.comp[0]).abs() <= 1e-12 * sup).all());
    CHECK(((ph.oneform.comp[1] - dec.f_s.comp[1] - dphi.comp[1]).abs() <= 1e-12 * sup).all());

    // divergence of the solenoidal part is small
    const Scalar div_f = std::sqrt(divergence(ph.oneform).values.square().sum());
    const Scalar div_fs = interior_l2(divergence(dec.f_s).values);
    CHECK(div_fs <= 1e-2 * div_f);

    // idempotence: decomposing f_s leaves it untouched
    const Decomposition again = helmholtz_global(dec.f_s);
    CHECK(interior_l2(gradient(again.phi)) <= 1e-2 * interior_l2(dec.f_s));
}

TEST_CASE("dirichlet solve converges at second order") {
    const Scalar e64 = dirichlet_max_error(64);
    const Scalar e128 = dirichlet_max_error(128);
    CHECK(e64 / e128 >= 3.5);
}

TEST_CASE("dirichlet solve on zero input") {
    const Grid g(32);
    const Decomposition dec = helmholtz_dirichlet(CovectorField(g),
                                                  Region::rect({-0.5, -0.5}, {0.5, 0.5}));
    CHECK(dec.phi.max_abs() == 0.0);
}

TEST_CASE("dirichlet recovers a potential vanishing on the boundary") {
    const Grid g(128);
    const Region omega = Region::rect({-0.8, -0.8}, {0.8, 0.8});
    // bump well inside omega, so phi_0 = 0 on the boundary
    const RadialBump b = RadialBump::make({0.0, 0.0}, 0.2, 1.0, 0.6);
    const ScalarField phi0 = sample_scalar(b, g);
    const CovectorField f = sample_gradient(b, g);
    const Decomposition dec = helmholtz_dirichlet(f, omega);
    CHECK(interior_rel_l2(dec.phi.values, phi0.values) <= 1e-2);
    CHECK(interior_l2(dec.f_s) <= 1e-2 * interior_l2(f));
}

TEST_CASE("CG energy decreases monotonically") {
    const Grid g(64);
    const Phantom ph = mixed_phantom(g);
    const Decomposition dec =
        helmholtz_dirichlet(ph.oneform, Region::rect({-0.9, -0.9}, {0.9, 0.9}));
    REQUIRE(dec.cg_energy.size() >= 2);
    for (std::size_t i = 1; i < dec.cg_energy.size(); ++i)
        CHECK(dec.cg_energy[i] <= dec.cg_energy[i - 1] + 1e-12 * std::abs(dec.cg_energy[0]));
    CHECK(dec.residual <= 1e-8);
}

TEST_CASE("potential mass stays inside the convex hull of the support") {
    const Grid g(128);
    const RadialBump b = RadialBump::make({0.1, 0.0}, 0.12, 1.0, 0.4);
    const CovectorField f = sample_gradient(b, g);
    const Decomposition dec = helmholtz_global(f);
    const SupportReport rep = potential_support_check(dec, f);
    CHECK(rep.leakage <= 0.05);
    CHECK(rep.support_cells > 0);

    // translation equivariance of the leakage
    const RadialBump b2 = RadialBump::make({0.1 + 8 * g.spacing(), 0.0}, 0.12, 1.0, 0.4);
    const CovectorField f2 = sample_gradient(b2, g);
    const SupportReport rep2 = potential_support_check(helmholtz_global(f2), f2);
    CHECK(rep2.leakage == doctest::Approx(rep.leakage).epsilon(0.05));

    // zero field: zero leakage by convention
    const Decomposition zdec = helmholtz_global(CovectorField(g));
    CHECK(potential_support_check(zdec, CovectorField(g)).leakage == 0.0);
}

TEST_CASE("dirichlet rejects non-rectangular domains") {
    const Grid g(32);
    CHECK_THROWS_AS(helmholtz_dirichlet(CovectorField(g), Region::disk({0, 0}, 0.5)),
                    config_error);
}
