#pragma once

#include "vtomo/sinogram.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <variant>

namespace vtomo {

/// I/O failure with a machine-readable kind: "open", "bad-magic",
/// "bad-header", "payload-length", "nan-payload", "kind-mismatch".
struct io_error_kind : io_error {
    std::string kind;
    io_error_kind(std::string kind_, const std::string& msg)
        : io_error(msg), kind(std::move(kind_)) {}
};

inline constexpr char kFileMagic[] = "VTOMO01\n";  // 8 bytes

using FieldVariant = std::variant<ScalarField, CovectorField, MatrixField, Sinogram>;

void write_field(const ScalarField& f, const std::string& path);
void write_field(const CovectorField& f, const std::string& path);
void write_field(const MatrixField& f, const std::string& path);
void write_sinogram(const Sinogram& s, const std::string& path);

FieldVariant read_any(const std::string& path);
ScalarField read_scalar(const std::string& path);
CovectorField read_covector(const std::string& path);
Sinogram read_sinogram(const std::string& path);

/// Parsed JSON header only (for `info`).
nlohmann::json read_header(const std::string& path);

}  // namespace vtomo
