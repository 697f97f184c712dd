#pragma once

#include <string>

#include <json.hpp>

#include "newtongraph/polynomial.hpp"

namespace newtongraph {

/// {"coeffs": [[re, im], ...]} lowest degree first, or {"roots": [...]}
/// for the monic product. A bare number stands for a real value.
Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& p);

Complex complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(Complex z);

/// Throws Error(Parse) on unreadable or malformed files.
nlohmann::json read_json_file(const std::string& path);
Polynomial read_polynomial(const std::string& path);

/// Throws Error(InvalidArgument) if the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

}  // namespace newtongraph
