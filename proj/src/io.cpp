#include "vtomo/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace vtomo {

static_assert(std::endian::native == std::endian::little,
              "on-disk format is little-endian; byte swapping not implemented");

namespace {

using nlohmann::json;

void write_container(const std::string& path, const json& header,
                     const std::vector<const Array2*>& payload,
                     const std::vector<std::uint8_t>* mask = nullptr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error_kind("open", "cannot open for writing: " + path);
    out.write(kFileMagic, 8);
    const std::string h = header.dump();
    const std::uint32_t len = static_cast<std::uint32_t>(h.size());
    out.write(reinterpret_cast<const char*>(&len), 4);
    out.write(h.data(), len);
    for (const Array2* a : payload)
        out.write(reinterpret_cast<const char*>(a->data()),
                  static_cast<std::streamsize>(a->size() * sizeof(Scalar)));
    if (mask)
        out.write(reinterpret_cast<const char*>(mask->data()),
                  static_cast<std::streamsize>(mask->size()));
    if (!out) throw io_error_kind("open", "write failed: " + path);
}

json grid_header(const char* kind, int components, const Grid& g) {
    return json{{"kind", kind},
                {"n", g.n},
                {"components", components},
                {"shape", {g.shape, g.shape}},
                {"domain", {{g.lo, g.hi}, {g.lo, g.hi}}},
                {"dtype", "f64le"},
                {"order", "row-major,component-major"}};
}

struct Container {
    json header;
    std::vector<char> payload;
};

Container read_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error_kind("open", "cannot open: " + path);
    char magic[8];
    in.read(magic, 8);
    if (in.gcount() != 8 || std::memcmp(magic, kFileMagic, 8) != 0)
        throw io_error_kind("bad-magic", "not a VTOMO01 file: " + path);
    std::uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 4);
    if (in.gcount() != 4) throw io_error_kind("bad-header", "truncated header length");
    std::string h(len, '\0');
    in.read(h.data(), len);
    if (in.gcount() != static_cast<std::streamsize>(len))
        throw io_error_kind("bad-header", "truncated header");
    Container c;
    try {
        c.header = json::parse(h);
    } catch (const json::exception& e) {
        throw io_error_kind("bad-header", std::string("header parse error: ") + e.what());
    }
    c.payload.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return c;
}

void expect_payload(const Container& c, std::size_t bytes) {
    if (c.payload.size() != bytes)
        throw io_error_kind("payload-length",
                            "payload length mismatch: expected " + std::to_string(bytes) +
                                " bytes, got " + std::to_string(c.payload.size()));
}

Array2 payload_array(const Container& c, std::size_t index, int rows, int cols) {
    Array2 a(rows, cols);
    std::memcpy(a.data(), c.payload.data() + index * std::size_t(rows) * cols * sizeof(Scalar),
                std::size_t(rows) * cols * sizeof(Scalar));
    if (!a.isFinite().all())
        throw io_error_kind("nan-payload", "non-finite values in payload");
    return a;
}

Grid header_grid(const json& h) {
    try {
        const int shape = h.at("shape").at(0).get<int>();
        const Scalar lo = h.at("domain").at(0).at(0).get<Scalar>();
        const Scalar hi = h.at("domain").at(0).at(1).get<Scalar>();
        return Grid(shape, lo, hi);
    } catch (const json::exception& e) {
        throw io_error_kind("bad-header", std::string("bad grid header: ") + e.what());
    }
}

std::string header_kind(const json& h) {
    try {
        return h.at("kind").get<std::string>();
    } catch (const json::exception&) {
        throw io_error_kind("bad-header", "missing kind");
    }
}

}  // namespace

void write_field(const ScalarField& f, const std::string& path) {
    write_container(path, grid_header("scalar", 1, f.grid), {&f.values});
}

void write_field(const CovectorField& f, const std::string& path) {
    write_container(path, grid_header("covector", 2, f.grid), {&f.comp[0], &f.comp[1]});
}

void write_field(const MatrixField& f, const std::string& path) {
    write_container(path, grid_header("matrix", 4, f.grid),
                    {&f.entries[0][0], &f.entries[0][1], &f.entries[1][0], &f.entries[1][1]});
}

void write_sinogram(const Sinogram& s, const std::string& path) {
    json h{{"kind", "sinogram"},
           {"n", 2},
           {"n_angles", s.grid.n_angles},
           {"n_offsets", s.grid.n_offsets},
           {"s_max", s.grid.s_max},
           {"data_kind", s.kind == SinogramKind::scalar ? "scalar" : "oneform"},
           {"has_mask", s.mask.has_value()},
           {"dtype", "f64le"},
           {"order", "row-major,component-major"}};
    write_container(path, h, {&s.values}, s.mask ? &*s.mask : nullptr);
}

FieldVariant read_any(const std::string& path) {
    const Container c = read_container(path);
    const std::string kind = header_kind(c.header);
    if (kind == "sinogram") {
        int na, no;
        Scalar smax;
        bool has_mask;
        std::string data_kind;
        try {
            na = c.header.at("n_angles").get<int>();
            no = c.header.at("n_offsets").get<int>();
            smax = c.header.at("s_max").get<Scalar>();
            has_mask = c.header.value("has_mask", false);
            data_kind = c.header.at("data_kind").get<std::string>();
        } catch (const json::exception& e) {
            throw io_error_kind("bad-header", std::string("bad sinogram header: ") + e.what());
        }
        const std::size_t bins = std::size_t(na) * no;
        expect_payload(c, bins * sizeof(Scalar) + (has_mask ? bins : 0));
        Sinogram s(LineGrid(na, no, smax),
                   data_kind == "oneform" ? SinogramKind::oneform : SinogramKind::scalar);
        s.values = payload_array(c, 0, na, no);
        if (has_mask) {
            std::vector<std::uint8_t> m(bins);
            std::memcpy(m.data(), c.payload.data() + bins * sizeof(Scalar), bins);
            s.mask = std::move(m);
        }
        return s;
    }
    const Grid g = header_grid(c.header);
    const std::size_t plane = std::size_t(g.shape) * g.shape * sizeof(Scalar);
    const int expected_comps = kind == "scalar" ? 1 : (kind == "covector" ? 2 : 4);
    if (c.header.contains("components") &&
        c.header.at("components").get<int>() != expected_comps)
        throw io_error_kind("kind-mismatch",
                            "kind " + kind + " does not match component count " +
                                c.header.at("components").dump());
    if (kind == "scalar") {
        expect_payload(c, plane);
        return ScalarField(g, payload_array(c, 0, g.shape, g.shape));
    }
    if (kind == "covector") {
        expect_payload(c, 2 * plane);
        return CovectorField(g, payload_array(c, 0, g.shape, g.shape),
                             payload_array(c, 1, g.shape, g.shape));
    }
    if (kind == "matrix") {
        expect_payload(c, 4 * plane);
        std::array<std::array<Array2, 2>, 2> e;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                e[i][j] = payload_array(c, std::size_t(2) * i + j, g.shape, g.shape);
        return MatrixField(g, std::move(e));
    }
    throw io_error_kind("bad-header", "unknown kind: " + kind);
}

ScalarField read_scalar(const std::string& path) {
    FieldVariant v = read_any(path);
    if (auto* f = std::get_if<ScalarField>(&v)) return std::move(*f);
    throw io_error_kind("kind-mismatch", "expected scalar field: " + path);
}

CovectorField read_covector(const std::string& path) {
    FieldVariant v = read_any(path);
    if (auto* f = std::get_if<CovectorField>(&v)) return std::move(*f);
    throw io_error_kind("kind-mismatch", "expected covector field: " + path);
}

Sinogram read_sinogram(const std::string& path) {
    FieldVariant v = read_any(path);
    if (auto* s = std::get_if<Sinogram>(&v)) return std::move(*s);
    throw io_error_kind("kind-mismatch", "expected sinogram: " + path);
}

nlohmann::json read_header(const std::string& path) {
    Container c = read_container(path);
    // Surface payload-length problems from `info` as well.
    const std::string kind = header_kind(c.header);
    if (kind == "sinogram") {
        const std::size_t bins = std::size_t(c.header.at("n_angles").get<int>()) *
                                 c.header.at("n_offsets").get<int>();
        expect_payload(c, bins * sizeof(Scalar) +
                              (c.header.value("has_mask", false) ? bins : 0));
    } else {
        const Grid g = header_grid(c.header);
        const std::size_t plane = std::size_t(g.shape) * g.shape * sizeof(Scalar);
        const std::size_t comps = kind == "scalar" ? 1 : (kind == "covector" ? 2 : 4);
        expect_payload(c, comps * plane);
    }
    return c.header;
}

}  // namespace vtomo
