#include "epkit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace epkit {

namespace {

void dump_value(const Json& v, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (v.type()) {
        case Json::value_t::null:
            out += "null";
            break;
        case Json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case Json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case Json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            if (!std::isfinite(d))
                throw std::invalid_argument("dump_json: non-finite number");
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            out += buf;
            break;
        }
        case Json::value_t::string:
            out += Json(v.get<std::string>()).dump();  // reuse nlohmann escaping
            break;
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad_in;
                dump_value(v[i], out, indent, depth + 1);
                if (i + 1 < v.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            break;
        }
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_value(it.value(), out, indent, depth + 1);
                if (i + 1 < v.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            break;
        }
        default:
            throw std::invalid_argument("dump_json: unsupported value type");
    }
}

}  // namespace

std::string dump_json(const Json& v, int indent) {
    std::string out;
    dump_value(v, out, indent, 0);
    out += "\n";
    return out;
}

Json matrix_to_json(const ComplexMatrix& a) {
    Json rows = Json::array();
    for (Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < a.cols(); ++j)
            row.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix_from_json: expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const Json& first = j[0];
    if (!first.is_array() || first.empty())
        throw std::invalid_argument("matrix_from_json: rows must be non-empty arrays");
    const std::size_t cols = first.size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw std::invalid_argument("matrix_from_json: entries must be [re, im] pairs");
            m(static_cast<Index>(i), static_cast<Index>(k)) =
                Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    require_finite(m, "matrix_from_json");
    return m;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace epkit
