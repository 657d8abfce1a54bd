#pragma once

#include "epkit/types.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace epkit {

using Json = nlohmann::json;

/// Serializer used for every file this project writes: like json::dump(2)
/// but with all floating-point values rendered via printf "%.17g", which
/// round-trips doubles exactly. Keys come out in nlohmann's sorted order,
/// so output is deterministic. Throws on non-finite numbers.
std::string dump_json(const Json& v, int indent = 2);

/// Matrix entry encoding shared by corpus files, classify input and
/// reports: row-major array of rows, each entry an [re, im] pair.
Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);  // throws std::invalid_argument

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace epkit
