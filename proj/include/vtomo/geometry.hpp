#pragma once

#include "vtomo/field.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace vtomo {

/// Oriented line parameterized by angle alpha in [0, 2pi) and signed offset s:
/// direction theta = (cos a, sin a), normal theta_perp = (-sin a, cos a),
/// base point z = s * theta_perp, points p(t) = z + t * theta.
struct Line {
    Scalar alpha = 0.0;
    Scalar offset = 0.0;

    Line() = default;
    Line(Scalar alpha_, Scalar offset_) : alpha(alpha_), offset(offset_) {}

    Vec2 direction() const { return {std::cos(alpha), std::sin(alpha)}; }
    Vec2 normal() const { return {-std::sin(alpha), std::cos(alpha)}; }
    Vec2 base() const { return offset * normal(); }
    Vec2 point(Scalar t) const { return base() + t * direction(); }
};

/// Same point set, opposite orientation.
inline Line reverse(const Line& l) {
    Scalar a = l.alpha + std::numbers::pi;
    const Scalar two_pi = 2.0 * std::numbers::pi;
    if (a >= two_pi) a -= two_pi;
    return Line(a, -l.offset);
}

/// Product grid of equally spaced angles and offset bin centers.
struct LineGrid {
    int n_angles = 0;
    int n_offsets = 0;
    Scalar s_max = std::numbers::sqrt2;

    LineGrid() = default;
    LineGrid(int n_angles_, int n_offsets_, Scalar s_max_ = std::numbers::sqrt2)
        : n_angles(n_angles_), n_offsets(n_offsets_), s_max(s_max_) {
        if (n_angles < 16 || n_offsets < 16)
            throw config_error("LineGrid: need n_angles >= 16 and n_offsets >= 16");
        if (n_angles % 2 != 0)
            throw config_error("LineGrid: n_angles must be even (closure under reversal)");
        if (!(s_max > 0)) throw config_error("LineGrid: s_max must be positive");
    }

    Scalar d_alpha() const { return 2.0 * std::numbers::pi / n_angles; }
    Scalar d_offset() const { return 2.0 * s_max / n_offsets; }
    Scalar angle(int k) const { return k * d_alpha(); }
    Scalar offset(int j) const { return -s_max + (j + 0.5) * d_offset(); }
    Line line(int k, int j) const { return Line(angle(k), offset(j)); }
    int size() const { return n_angles * n_offsets; }

    /// Indices of the reversed line; exact because n_angles is even and
    /// offsets sit at bin centers.
    std::pair<int, int> reverse_index(int k, int j) const {
        return {(k + n_angles / 2) % n_angles, n_offsets - 1 - j};
    }

    bool operator==(const LineGrid& o) const {
        return n_angles == o.n_angles && n_offsets == o.n_offsets && s_max == o.s_max;
    }
    bool operator!=(const LineGrid& o) const { return !(*this == o); }
};

/// Open test set V or convex complement set C: a disk or an axis-aligned
/// rectangle.
struct Region {
    enum class Kind { disk, rect };
    enum class Role { open_set, convex_complement };

    Kind kind = Kind::disk;
    Role role = Role::open_set;
    Vec2 center{0, 0};   // disk
    Scalar radius = 0;   // disk
    Vec2 lo{0, 0};       // rect
    Vec2 hi{0, 0};       // rect

    static Region disk(Vec2 c, Scalar r, Role role = Role::open_set) {
        if (!(r > 0)) throw config_error("Region: disk radius must be positive");
        Region reg;
        reg.kind = Kind::disk;
        reg.role = role;
        reg.center = c;
        reg.radius = r;
        return reg;
    }
    static Region rect(Vec2 lo, Vec2 hi, Role role = Role::open_set) {
        if (!(lo.x() < hi.x() && lo.y() < hi.y()))
            throw config_error("Region: rect needs lo < hi per axis");
        Region reg;
        reg.kind = Kind::rect;
        reg.role = role;
        reg.lo = lo;
        reg.hi = hi;
        return reg;
    }

    bool contains(const Vec2& p) const {
        if (kind == Kind::disk) return (p - center).norm() < radius;
        return p.x() > lo.x() && p.x() < hi.x() && p.y() > lo.y() && p.y() < hi.y();
    }
};

/// Strict incidence (V is open): tangent lines do not count as meeting.
bool line_meets_region(const Line& line, const Region& region);

enum class MaskMode { through, avoiding };

/// One bit per line: mode through marks lines meeting the region, avoiding
/// marks their complement. Layout matches Sinogram values (angle-major).
std::vector<std::uint8_t> partial_mask(const LineGrid& grid, const Region& region,
                                       MaskMode mode);

}  // namespace vtomo
