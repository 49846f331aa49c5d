#pragma once

#include <stdexcept>
#include <string>

namespace hypergeom {

// Base class for every error thrown by this library.  Check *failures* are
// never exceptions: verification routines return reports.  Exceptions signal
// malformed input or violated preconditions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A factor collapsed to the identically-zero form (construction or substitution).
struct ZeroFactorError : Error {
    explicit ZeroFactorError(const std::string& what) : Error(what) {}
};

// Expression text rejected by the parser; `offset` is a byte position into the input.
struct ParseError : Error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : Error("parse error at byte " + std::to_string(off) + ": " + msg), offset(off) {}
};

// An alpha-expansion whose coefficients are not polynomial in the remaining variables.
struct NonLaurentError : Error {
    explicit NonLaurentError(const std::string& what) : Error(what) {}
};

// Structurally invalid input data (I-data files, report configs, degree vectors).
struct DataError : Error {
    explicit DataError(const std::string& what) : Error(what) {}
};

// Mirror transform residuals outside the scalar + S-linear span it can cancel.
struct NonNormalizableError : Error {
    explicit NonNormalizableError(const std::string& what) : Error(what) {}
};

}  // namespace hypergeom
