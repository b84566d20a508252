#pragma once

#include <string>

#include <json.hpp>

#include "nlpm/capacity.hpp"
#include "nlpm/report.hpp"
#include "nlpm/scalar_function.hpp"

namespace nlpm {

// Matrix schema: {"dim": n, "re": [[...]], "im": [[...]]} with "im" optional
// on input and omitted on output when the matrix is real.
nlohmann::json matrix_to_json(const CMatrix& m);
nlohmann::json matrix_to_json(const HermMatrix& m);
CMatrix cmatrix_from_json(const nlohmann::json& j);
HermMatrix herm_from_json(const nlohmann::json& j);

// Capacity schema: {"n": k, "values": [...]} indexed by bitmask; the
// operator-valued form carries "out_dim" and matrix JSON values.
nlohmann::json capacity_to_json(const Capacity& c);
Capacity capacity_from_json(const nlohmann::json& j);
nlohmann::json opcapacity_to_json(const OperatorCapacity& c);
OperatorCapacity opcapacity_from_json(const nlohmann::json& j);
bool is_operator_capacity_json(const nlohmann::json& j);

// Function schema: {"builtin": name, "param": x} or
// {"table": [[t, F(t)], ...], "jump": k}.
ScalarFunctionSpec function_from_json(const nlohmann::json& j);

// Parse a file; syntax errors are rethrown with the file path and the byte
// offset nlohmann reports.
nlohmann::json load_json_file(const std::string& path);

}  // namespace nlpm
