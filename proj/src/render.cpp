#include "vtomo/render.hpp"

#include "vtomo/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace vtomo {

namespace {

std::uint8_t to_gray(Scalar v, Scalar lo, Scalar hi) {
    if (!(hi > lo)) return 0;
    const Scalar t = (v - lo) / (hi - lo);
    return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
}

void write_sidecar(const std::string& path, nlohmann::json extra) {
    std::ofstream side(path + ".json");
    side << extra.dump(2) << "\n";
}

}  // namespace

void render_pgm(const Array2& values, const std::string& path) {
    const int rows = static_cast<int>(values.rows());
    const int cols = static_cast<int>(values.cols());
    const Scalar lo = values.minCoeff();
    const Scalar hi = values.maxCoeff();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error_kind("open", "cannot open for writing: " + path);
    out << "P5\n" << cols << " " << rows << "\n255\n";
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const std::uint8_t g = to_gray(values(i, j), lo, hi);
            out.write(reinterpret_cast<const char*>(&g), 1);
        }
    write_sidecar(path, {{"format", "P5"},
                         {"width", cols},
                         {"height", rows},
                         {"min", lo},
                         {"max", hi}});
}

void render_ppm(const CovectorField& f, const std::string& path) {
    const int n = f.grid.shape;
    Scalar lo[2], hi[2];
    for (int c = 0; c < 2; ++c) {
        lo[c] = f.comp[c].minCoeff();
        hi[c] = f.comp[c].maxCoeff();
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error_kind("open", "cannot open for writing: " + path);
    out << "P6\n" << n << " " << n << "\n255\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::uint8_t rgb[3] = {to_gray(f.comp[0](i, j), lo[0], hi[0]),
                                         to_gray(f.comp[1](i, j), lo[1], hi[1]), 0};
            out.write(reinterpret_cast<const char*>(rgb), 3);
        }
    write_sidecar(path, {{"format", "P6"},
                         {"width", n},
                         {"height", n},
                         {"min", {lo[0], lo[1]}},
                         {"max", {hi[0], hi[1]}}});
}

}  // namespace vtomo
