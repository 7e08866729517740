#include <doctest.h>

#include "vtomo/phantoms.hpp"
#include "vtomo/projector.hpp"

#include <random>

using namespace vtomo;

namespace {

const Grid g64(64);
const LineGrid lines64(90, 64);

Array2 random_array(int rows, int cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<Scalar> d(-1, 1);
    Array2 a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = d(rng);
    return a;
}

// Long-double accumulation keeps the dot-product rounding well below the
// adjoint tolerance.
long double dot(const Array2& a, const Array2& b) {
    long double acc = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            acc += static_cast<long double>(a(i, j)) * static_cast<long double>(b(i, j));
    return acc;
}

int offset_index(const LineGrid& lg, Scalar s) {
    // nearest bin center
    return static_cast<int>(std::lround((s + lg.s_max) / lg.d_offset() - 0.5));
}

}  // namespace

TEST_CASE("scalar transform matches the disk chord length") {
    PhantomSpec spec;
    spec.kind = PhantomKind::disk_indicator;
    spec.disk_radius = 0.5;
    const ScalarField disk = make_phantom(spec, Grid(128)).scalar;
    const LineGrid lg(180, 128);
    const Sinogram sino = xray_scalar(disk, lg);
    const Scalar h = disk.grid.spacing();
    for (Scalar s : {0.0, 0.3, -0.2}) {
        const int j = offset_index(lg, s);
        const Scalar s_actual = lg.offset(j);
        const Scalar chord = 2.0 * std::sqrt(0.25 - s_actual * s_actual);
        CHECK(std::abs(sino.values(0, j) - chord) <= 2.0 * h);
        CHECK(std::abs(sino.values(45, j) - chord) <= 2.0 * h);  // rotation invariance
    }
    // lines missing the disk
    CHECK(std::abs(sino.values(0, offset_index(lg, 0.8))) < 1e-12);
}

TEST_CASE("zero fields produce zero sinograms") {
    CHECK(xray_scalar(ScalarField(g64), lines64).max_abs() == 0.0);
    CHECK(xray_oneform(CovectorField(g64), lines64).max_abs() == 0.0);
}

TEST_CASE("oneform transform weights the chord by the direction cosine") {
    PhantomSpec spec;
    spec.kind = PhantomKind::disk_indicator;
    spec.disk_radius = 0.5;
    const Grid g(128);
    const ScalarField disk = make_phantom(spec, g).scalar;
    const CovectorField f(g, disk.values, Array2::Zero(g.shape, g.shape));  // e1 * 1_disk
    const LineGrid lg(180, 128);
    const Sinogram sino = xray_oneform(f, lg);
    const int j0 = offset_index(lg, 0.0);
    const Scalar chord = 2.0 * std::sqrt(0.25 - lg.offset(j0) * lg.offset(j0));
    CHECK(std::abs(sino.values(0, j0) - chord) <= 2.0 * g.spacing());       // theta = e1
    CHECK(std::abs(sino.values(45, j0)) <= 2.0 * g.spacing());              // theta = e2

    const Sinogram perp = xray_transverse(f, lg);
    CHECK(std::abs(perp.values(0, j0)) <= 2.0 * g.spacing());
    CHECK(std::abs(perp.values(45, j0) + chord) <= 2.0 * g.spacing());  // -chord
}

TEST_CASE("parity under line reversal is exact to quadrature roundoff") {
    PhantomSpec spec;
    spec.kind = PhantomKind::mixed;
    const Phantom ph = make_phantom(spec, g64);
    const Sinogram s0 = xray_scalar(ph.potential, lines64);
    const Sinogram s1 = xray_oneform(ph.oneform, lines64);
    const Scalar scale0 = s0.max_abs();
    const Scalar scale1 = s1.max_abs();
    for (int k = 0; k < lines64.n_angles; ++k)
        for (int j = 0; j < lines64.n_offsets; ++j) {
            auto [rk, rj] = lines64.reverse_index(k, j);
            CHECK(std::abs(s0.values(k, j) - s0.values(rk, rj)) <= 1e-12 * scale0);
            CHECK(std::abs(s1.values(k, j) + s1.values(rk, rj)) <= 1e-12 * scale1);
        }
}

TEST_CASE("gradients are invisible to the oneform transform") {
    PhantomSpec spec;
    spec.kind = PhantomKind::mixed;
    const Phantom ph = make_phantom(spec, Grid(128));
    const LineGrid lg(180, 128);
    const Scalar grad_sup = xray_oneform(ph.grad_part, lg).max_abs();
    const Scalar curl_sup = xray_oneform(ph.curl_part, lg).max_abs();
    CHECK(grad_sup <= 1e-3 * curl_sup);

    // solenoidal fields are invisible to the transverse transform
    const Scalar perp_sup = xray_transverse(ph.curl_part, lg).max_abs();
    CHECK(perp_sup <= 1e-3 * curl_sup);
}

TEST_CASE("forward operators are linear") {
    const CovectorField f(g64, random_array(64, 64, 1), random_array(64, 64, 2));
    const CovectorField w(g64, random_array(64, 64, 3), random_array(64, 64, 4));
    const CovectorField combo(g64, 2.0 * f.comp[0] - 0.5 * w.comp[0],
                              2.0 * f.comp[1] - 0.5 * w.comp[1]);
    const Sinogram sf = xray_oneform(f, lines64);
    const Sinogram sw = xray_oneform(w, lines64);
    const Sinogram sc = xray_oneform(combo, lines64);
    const Scalar err = (sc.values - (2.0 * sf.values - 0.5 * sw.values)).abs().maxCoeff();
    CHECK(err <= 1e-12 * sc.max_abs());
}

TEST_CASE("matrix transform specializations") {
    const CovectorField f(g64, random_array(64, 64, 5), random_array(64, 64, 6));
    const Sinogram s1 = xray_oneform(f, lines64);
    const Sinogram sid = xray_matrix(MatrixField::identity(g64), f, lines64);
    CHECK((sid.values == s1.values).all());  // bit exact

    const Sinogram sb = xray_matrix(MatrixField::rotation_clockwise(g64), f, lines64);
    const Sinogram sp = xray_transverse(f, lines64);
    CHECK((sb.values == sp.values).all());  // bit exact

    Eigen::Matrix2d two = 2.0 * Eigen::Matrix2d::Identity();
    const Sinogram s2 = xray_matrix(MatrixField(g64, two), f, lines64);
    CHECK(((s2.values - 2.0 * s1.values).abs() <= 1e-12 * s2.max_abs()).all());
}

TEST_CASE("backprojection is the exact adjoint") {
    std::mt19937 seeds(99);
    for (int trial = 0; trial < 5; ++trial) {
        const unsigned a = seeds(), b = seeds(), c = seeds();
        Sinogram sigma(lines64, SinogramKind::scalar);
        sigma.values = random_array(lines64.n_angles, lines64.n_offsets, c);
        const Scalar wl = lines64.d_alpha() * lines64.d_offset();
        const Scalar wp = g64.spacing() * g64.spacing();

        const ScalarField fs(g64, random_array(64, 64, a));
        const long double lhs0 = dot(xray_scalar(fs, lines64).values, sigma.values) * wl;
        const long double rhs0 = dot(fs.values, backproject_scalar(sigma, g64).values) * wp;
        CHECK(std::abs(static_cast<Scalar>(lhs0 - rhs0)) <=
              1e-10 * std::abs(static_cast<Scalar>(lhs0)));

        const CovectorField fv(g64, random_array(64, 64, a), random_array(64, 64, b));
        sigma.kind = SinogramKind::oneform;
        const long double lhs1 = dot(xray_oneform(fv, lines64).values, sigma.values) * wl;
        const CovectorField bp = backproject_oneform(sigma, g64);
        const long double rhs1 =
            (dot(fv.comp[0], bp.comp[0]) + dot(fv.comp[1], bp.comp[1])) * wp;
        CHECK(std::abs(static_cast<Scalar>(lhs1 - rhs1)) <=
              1e-10 * std::abs(static_cast<Scalar>(lhs1)));
    }
}

TEST_CASE("masked bins contribute zero to the adjoint") {
    Sinogram sigma(lines64, SinogramKind::scalar);
    sigma.values = random_array(lines64.n_angles, lines64.n_offsets, 7);
    Sinogram masked = sigma;
    std::vector<std::uint8_t> mask(lines64.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = i % 2;
    masked.apply_mask(mask);
    // adjoint of the masked sinogram equals the adjoint of its zeroed values
    Sinogram zeroed(lines64, SinogramKind::scalar);
    zeroed.values = masked.values;
    const ScalarField b1 = backproject_scalar(masked, g64);
    const ScalarField b2 = backproject_scalar(zeroed, g64);
    CHECK((b1.values == b2.values).all());
}

TEST_CASE("backprojection of constant data cancels at the center by symmetry") {
    Sinogram sigma(lines64, SinogramKind::oneform);
    sigma.values = Array2::Constant(lines64.n_angles, lines64.n_offsets, 1.0);
    const CovectorField bp = backproject_oneform(sigma, g64);
    const int c = g64.shape / 2;
    // odd integrand over a reversal-closed angle set
    CHECK(std::abs(bp.comp[0](c, c)) <= 1e-10);
    CHECK(std::abs(bp.comp[1](c, c)) <= 1e-10);
}

TEST_CASE("NaN input names the offending line") {
    ScalarField f(g64);
    f.values(30, 30) = std::numeric_limits<Scalar>::quiet_NaN();
    CHECK_THROWS_AS(xray_scalar(f, lines64), numerical_error);
}
