#pragma once

#include <string>

#include <json.hpp>

#include "spintomo/tomography.hpp"

namespace spintomo {

// File schemas
// ------------
// Symbol table / tomogram (JSON): { "type": "symbol_table", "twice_j",
//   "is_probability", "quad": {"polar", "azimuthal"}, "rows": [ {"twice_m",
//   "theta", "phi", "weight", "re", "im"}, ... ] }. Rows are ordered node by
//   node, projections descending. The quadrature geometry is rebuilt from
//   the orders on read and cross-checked against the stored angles.
// The CSV rendering carries the same columns:
//   twice_m,theta,phi,weight,re,im.
//
// Density matrix (JSON): { "type": "density_matrix", "dim",
//   "basis": "descending_m", "re": [...], "im": [...] } with row-major
//   arrays.

nlohmann::json to_json(const SymbolTable &table);
SymbolTable symbol_table_from_json(const nlohmann::json &js);
std::string to_csv(const SymbolTable &table);

nlohmann::json to_json(const DensityMatrix &rho);
DensityMatrix density_matrix_from_json(const nlohmann::json &js);

// Formats a double with 17 significant digits (lossless round trip).
std::string format_full(double v);

void write_text_file(const std::string &path, const std::string &content);
nlohmann::json read_json_file(const std::string &path);

} // namespace spintomo
