#pragma once

#include "vtomo/geometry.hpp"

#include <optional>
#include <vector>

namespace vtomo {

enum class SinogramKind { scalar, oneform };

/// Transform values over a LineGrid; values(k_angle, j_offset). Masked-out
/// bins carry value 0 by convention.
struct Sinogram {
    LineGrid grid;
    Array2 values;
    std::optional<std::vector<std::uint8_t>> mask;  // 1 = line measured
    SinogramKind kind = SinogramKind::scalar;

    Sinogram() = default;
    Sinogram(const LineGrid& g, SinogramKind kind_)
        : grid(g), values(Array2::Zero(g.n_angles, g.n_offsets)), kind(kind_) {}

    bool masked_out(int k, int j) const {
        return mask && !(*mask)[static_cast<std::size_t>(k) * grid.n_offsets + j];
    }

    /// Zero out bins not marked in the mask and attach it.
    void apply_mask(const std::vector<std::uint8_t>& m) {
        if (m.size() != static_cast<std::size_t>(grid.size()))
            throw config_error("Sinogram::apply_mask: mask size mismatch");
        mask = m;
        for (int k = 0; k < grid.n_angles; ++k)
            for (int j = 0; j < grid.n_offsets; ++j)
                if (!m[static_cast<std::size_t>(k) * grid.n_offsets + j]) values(k, j) = 0.0;
    }

    Scalar max_abs() const { return values.abs().maxCoeff(); }
};

}  // namespace vtomo
