#pragma once

// Matrix document I/O and report serialization for the command-line tool.
// Documents are JSON objects {rows, cols, field, data}; reports are emitted
// through a fixed-order writer that prints every floating-point number with
// 17 significant digits, so identical inputs produce byte-identical output
// and every value round-trips bit-exactly.

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "matgeo/linalg.hpp"

namespace cliio {

using Json = nlohmann::ordered_json;

// Malformed document or unusable invocation: the exit-2 family, as opposed
// to domain errors (exit 1) raised by the library as matgeo::error.
class document_error : public std::runtime_error {
  public:
    explicit document_error(const std::string& what) : std::runtime_error(what) {}
};

// Whole file as bytes; throws document_error when unreadable.
std::string read_file(const std::string& path);

// Parse and validate one matrix document.  Syntax errors carry the parser's
// line/column annotation; structural errors name the offending key or entry.
// All messages are prefixed with `origin`.
matgeo::Matrix parse_matrix(const std::string& text, const std::string& origin);

// Interprets a 1xn or nxl document as a vector.
matgeo::Vector as_vector(const matgeo::Matrix& m, const std::string& origin);

Json matrix_document(const matgeo::Matrix& m);
Json vector_document(const matgeo::Vector& v);  // an nx1 document
Json complex_value(const matgeo::Cplx& z);      // [re, im]

// FNV-1a 64-bit digest of the raw bytes, as 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);

// Serialize with insertion-ordered keys and "%.17g" floats (non-finite
// values become null, which the document parser rejects anyway).
std::string dump(const Json& j);

}  // namespace cliio
