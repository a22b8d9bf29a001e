#include "cli_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cliio {

using matgeo::Cplx;
using matgeo::Field;
using matgeo::Matrix;
using matgeo::Vector;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& detail) {
    throw document_error(origin + ": " + detail);
}

double finite_number(const Json& j, const std::string& origin, size_t index) {
    if (!j.is_number()) fail(origin, "data entry " + std::to_string(index) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(origin, "data entry " + std::to_string(index) + " is not finite");
    return x;
}

void write_string(std::string& out, const std::string& s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_value(std::string& out, const Json& j) {
    switch (j.type()) {
        case nlohmann::detail::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                write_string(out, it.key());
                out += ':';
                write_value(out, it.value());
            }
            out += '}';
            break;
        }
        case nlohmann::detail::value_t::array: {
            out += '[';
            bool first = true;
            for (const Json& item : j) {
                if (!first) out += ',';
                first = false;
                write_value(out, item);
            }
            out += ']';
            break;
        }
        case nlohmann::detail::value_t::string:
            write_string(out, j.get<std::string>());
            break;
        case nlohmann::detail::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case nlohmann::detail::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            break;
        case nlohmann::detail::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            break;
        case nlohmann::detail::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                break;
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            std::string text(buf);
            // Keep the literal float-shaped so a reparse restores the exact
            // bits: "-0" would come back as the integer zero.
            if (text.find_first_of(".e") == std::string::npos) text += ".0";
            out += text;
            break;
        }
        default:
            out += "null";
    }
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw document_error(path + ": cannot read file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Matrix parse_matrix(const std::string& text, const std::string& origin) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        // Syntax errors carry the parser's own "at line L, column C" note;
        // out-of-range literals land here too.
        fail(origin, e.what());
    }
    if (!doc.is_object()) fail(origin, "document root must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key != "rows" && key != "cols" && key != "field" && key != "data")
            fail(origin, "unexpected key '" + key + "'");
    }
    for (const char* key : {"rows", "cols", "field", "data"})
        if (!doc.contains(key)) fail(origin, std::string("missing key '") + key + "'");

    if (!doc["rows"].is_number_integer() || doc["rows"].get<long long>() <= 0)
        fail(origin, "rows must be a positive integer");
    if (!doc["cols"].is_number_integer() || doc["cols"].get<long long>() <= 0)
        fail(origin, "cols must be a positive integer");
    const int rows = doc["rows"].get<int>();
    const int cols = doc["cols"].get<int>();

    if (!doc["field"].is_string()) fail(origin, "field must be \"R\" or \"C\"");
    const std::string field_tag = doc["field"].get<std::string>();
    if (field_tag != "R" && field_tag != "C") fail(origin, "field must be \"R\" or \"C\"");
    const Field field = field_tag == "R" ? Field::Real : Field::Complex;

    const Json& data = doc["data"];
    if (!data.is_array()) fail(origin, "data must be an array");
    const size_t expected = static_cast<size_t>(rows) * static_cast<size_t>(cols);
    if (data.size() != expected)
        fail(origin, "shape mismatch: expected " + std::to_string(expected) +
                         " data entries, found " + std::to_string(data.size()));

    Matrix m(rows, cols, field);
    for (size_t k = 0; k < expected; ++k) {
        const Json& entry = data[k];
        Cplx value;
        if (field == Field::Real) {
            value = Cplx(finite_number(entry, origin, k), 0.0);
        } else {
            if (!entry.is_array() || entry.size() != 2)
                fail(origin, "data entry " + std::to_string(k) + " must be a pair [re, im]");
            value = Cplx(finite_number(entry[0], origin, k), finite_number(entry[1], origin, k));
        }
        m(static_cast<int>(k) / cols, static_cast<int>(k) % cols) = value;
    }
    return m;
}

Vector as_vector(const Matrix& m, const std::string& origin) {
    if (m.cols() == 1) return m.column(0);
    if (m.rows() == 1) return m.row(0);
    fail(origin, "expected a vector document (1xn or nx1)");
}

Json matrix_document(const Matrix& m) {
    Json doc = Json::object();
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    doc["field"] = m.field() == Field::Real ? "R" : "C";
    Json data = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m.field() == Field::Real)
                data.push_back(m(i, j).real());
            else
                data.push_back(complex_value(m(i, j)));
        }
    }
    doc["data"] = std::move(data);
    return doc;
}

Json vector_document(const Vector& v) {
    Matrix m(v.dim(), 1, v.field());
    for (int i = 0; i < v.dim(); ++i) m(i, 0) = v[i];
    return matrix_document(m);
}

Json complex_value(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string dump(const Json& j) {
    std::string out;
    write_value(out, j);
    return out;
}

}  // namespace cliio
