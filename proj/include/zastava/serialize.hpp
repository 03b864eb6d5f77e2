// Module interchange format: a single JSON document
//   { "shape": {"kind","N","k"}, "dims": {index: int},
//     "arrows": {"A": {index: matrix}, "B": ..., "p": ..., "q": ...,
//                "e": ..., "delta": ...} }
// with matrices as arrays of arrays of rational strings ("p/q" or "p").
// Indices are "l" for ungraded shapes and "l,r" for graded ones; the dent
// arrows e/delta serialize as a single matrix on the dented chainsaw and as
// an "r"-indexed map on the rift. Serialization is deterministic, so equal
// modules produce byte-identical documents.
#pragma once

#include "zastava/errors.hpp"
#include "zastava/quiver.hpp"

#include <json.hpp>

#include <string>

namespace zastava {

nlohmann::json module_to_json(const QuiverModule& m);
QuiverModule module_from_json(const nlohmann::json& j);

std::string serialize_module(const QuiverModule& m);
QuiverModule deserialize_module(const std::string& text);

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j, int expect_rows, int expect_cols);

QuiverModule load_module_file(const std::string& path);
void save_module_file(const std::string& path, const QuiverModule& m);

} // namespace zastava
