#include "vtomo/geometry.hpp"

#include <algorithm>

namespace vtomo {

namespace {

// Segment-vs-rectangle test by slab clipping over |t| <= t_clip.
bool segment_meets_rect(const Line& line, const Vec2& lo, const Vec2& hi, Scalar t_clip) {
    const Vec2 z = line.base();
    const Vec2 d = line.direction();
    Scalar t0 = -t_clip, t1 = t_clip;
    for (int axis = 0; axis < 2; ++axis) {
        const Scalar p = z[axis], v = d[axis];
        if (std::abs(v) < 1e-15) {
            if (p <= lo[axis] || p >= hi[axis]) return false;
        } else {
            Scalar ta = (lo[axis] - p) / v;
            Scalar tb = (hi[axis] - p) / v;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 >= t1) return false;
        }
    }
    return true;
}

}  // namespace

bool line_meets_region(const Line& line, const Region& region) {
    if (region.kind == Region::Kind::disk) {
        // Signed distance of the disk center from the line.
        const Scalar d = region.center.dot(line.normal()) - line.offset;
        return std::abs(d) < region.radius;
    }
    const Scalar t_clip = (region.hi - region.lo).norm() +
                          region.lo.norm() + region.hi.norm() + 4.0;
    return segment_meets_rect(line, region.lo, region.hi, t_clip);
}

std::vector<std::uint8_t> partial_mask(const LineGrid& grid, const Region& region,
                                       MaskMode mode) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.size()));
    std::size_t idx = 0;
    for (int k = 0; k < grid.n_angles; ++k)
        for (int j = 0; j < grid.n_offsets; ++j, ++idx) {
            const bool meets = line_meets_region(grid.line(k, j), region);
            mask[idx] = (mode == MaskMode::through) ? meets : !meets;
        }
    return mask;
}

}  // namespace vtomo
