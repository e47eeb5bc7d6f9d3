#pragma once

#include <string>

#include "vicinity/query.hpp"

namespace vicinity {

// One serializer for every surface (CLI, HTTP) so answers compare
// byte-identical apart from the measured micros field.
std::string query_result_json(const QueryResult& r, double micros, bool include_path);

}  // namespace vicinity
