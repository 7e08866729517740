#pragma once

#include "vtomo/sinogram.hpp"

#include <string>

namespace vtomo {

/// Affine min/max grayscale map to binary PGM (P5); the min/max used is
/// written to `path + ".json"`. Image rows follow the array rows.
void render_pgm(const Array2& values, const std::string& path);

/// Covector field as binary PPM (P6): red = component 1, green = component 2,
/// each affinely mapped over its own min/max; blue = 0.
void render_ppm(const CovectorField& f, const std::string& path);

}  // namespace vtomo
