#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace vtomo {

using Scalar = double;
// Row-major so the memory layout matches the on-disk order (x slow, y fast).
using Array2 = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec2 = Eigen::Vector2d;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform cell-centered N x N grid on a square domain, default [-1,1]^2.
struct Grid {
    int n = 2;        // spatial dimension; only 2 is implemented
    int shape = 0;    // samples per axis
    Scalar lo = -1.0;
    Scalar hi = 1.0;

    Grid() = default;
    Grid(int shape_, Scalar lo_ = -1.0, Scalar hi_ = 1.0)
        : shape(shape_), lo(lo_), hi(hi_) {
        if (shape < 8) throw config_error("Grid: shape must be >= 8");
        if (!(hi > lo)) throw config_error("Grid: empty domain");
    }

    Scalar spacing() const { return (hi - lo) / shape; }
    Scalar extent() const { return hi - lo; }
    Scalar half_extent() const { return 0.5 * (hi - lo); }
    /// Coordinate of cell center i along either axis.
    Scalar coord(int i) const { return lo + (i + 0.5) * spacing(); }
    Vec2 center(int ix, int iy) const { return {coord(ix), coord(iy)}; }

    bool operator==(const Grid& o) const {
        return n == o.n && shape == o.shape && lo == o.lo && hi == o.hi;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

/// Scalar function sampled at cell centers; values(ix, iy).
struct ScalarField {
    Grid grid;
    Array2 values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g)
        : grid(g), values(Array2::Zero(g.shape, g.shape)) {}
    ScalarField(const Grid& g, Array2 v) : grid(g), values(std::move(v)) {
        if (values.rows() != grid.shape || values.cols() != grid.shape)
            throw config_error("ScalarField: value shape does not match grid");
    }

    bool finite() const { return values.isFinite().all(); }
    Scalar max_abs() const { return values.abs().maxCoeff(); }
};

/// One-form (covector field) with components (f1, f2) on a shared grid.
struct CovectorField {
    Grid grid;
    std::array<Array2, 2> comp;

    CovectorField() = default;
    explicit CovectorField(const Grid& g)
        : grid(g), comp{Array2::Zero(g.shape, g.shape), Array2::Zero(g.shape, g.shape)} {}
    CovectorField(const Grid& g, Array2 f1, Array2 f2)
        : grid(g), comp{std::move(f1), std::move(f2)} {
        for (const auto& c : comp)
            if (c.rows() != g.shape || c.cols() != g.shape)
                throw config_error("CovectorField: component shape does not match grid");
    }

    bool finite() const { return comp[0].isFinite().all() && comp[1].isFinite().all(); }
    Scalar max_abs() const {
        return std::max(comp[0].abs().maxCoeff(), comp[1].abs().maxCoeff());
    }
};

/// Pointwise-invertible 2x2 matrix field A(x); entries[i][j] = A_ij.
struct MatrixField {
    Grid grid;
    std::array<std::array<Array2, 2>, 2> entries;
    bool constant = false;

    static constexpr Scalar det_floor = 1e-8;

    MatrixField() = default;

    /// Spatially constant matrix.
    MatrixField(const Grid& g, const Eigen::Matrix2d& m) : grid(g), constant(true) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                entries[i][j] = Array2::Constant(g.shape, g.shape, m(i, j));
        check_invertible();
    }

    MatrixField(const Grid& g, std::array<std::array<Array2, 2>, 2> e)
        : grid(g), entries(std::move(e)) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (entries[i][j].rows() != g.shape || entries[i][j].cols() != g.shape)
                    throw config_error("MatrixField: entry shape does not match grid");
        check_invertible();
    }

    static MatrixField identity(const Grid& g) {
        return MatrixField(g, Eigen::Matrix2d::Identity());
    }
    /// Clockwise rotation by 90 degrees: B(v1, v2) = (v2, -v1).
    static MatrixField rotation_clockwise(const Grid& g) {
        Eigen::Matrix2d b;
        b << 0, 1, -1, 0;
        return MatrixField(g, b);
    }

    MatrixField transposed() const {
        MatrixField t;
        t.grid = grid;
        t.constant = constant;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                t.entries[i][j] = entries[j][i];
        return t;
    }

    CovectorField apply(const CovectorField& f) const {
        if (f.grid != grid) throw config_error("MatrixField::apply: grid mismatch");
        return CovectorField(grid,
                             entries[0][0] * f.comp[0] + entries[0][1] * f.comp[1],
                             entries[1][0] * f.comp[0] + entries[1][1] * f.comp[1]);
    }

  private:
    void check_invertible() const {
        Array2 det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        if ((det.abs() < det_floor).any())
            throw config_error("MatrixField: |det A| below floor at some sample");
    }
};

/// Index range [lo, hi) of the central `fraction` window along one axis.
inline std::pair<int, int> interior_window(int shape, double fraction = 0.6) {
    int margin = static_cast<int>(std::lround(0.5 * (1.0 - fraction) * shape));
    return {margin, shape - margin};
}

/// Relative L2 distance between a and b over the central interior window.
Scalar interior_rel_l2(const Array2& a, const Array2& b, double fraction = 0.6);
Scalar interior_l2(const Array2& a, double fraction = 0.6);
Scalar interior_rel_l2(const CovectorField& a, const CovectorField& b, double fraction = 0.6);
Scalar interior_l2(const CovectorField& a, double fraction = 0.6);

}  // namespace vtomo
