#pragma once

#include <stdexcept>
#include <string>

namespace vicinity {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (carries a 1-based line number where applicable).
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

// Violated precondition or domain constraint.
struct ValidationError : Error {
    using Error::Error;
};

// Underlying stream/file failure.
struct IoError : Error {
    using Error::Error;
};

// Index file rejected: bad magic, version, checksum, truncation, or
// graph fingerprint mismatch. `code` distinguishes the causes.
struct FormatError : Error {
    enum class Code { BadMagic, UnsupportedVersion, Truncated, ChecksumMismatch, GraphMismatch };
    FormatError(Code c, const std::string& what) : Error(what), code(c) {}
    Code code;
};

// Node id outside [0, n). Distinct from a NOT_FOUND query outcome.
struct NodeRangeError : Error {
    using Error::Error;
};

}  // namespace vicinity
