#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gdnls/core.hpp"
#include "gdnls/criterion.hpp"

namespace gdnls {

using Json = nlohmann::json;

/// {"L": ..., "N": ..., "re": [...], "im": [...]}
Json field_to_json(const Field& f);
/// Throws InvalidArgument on a malformed document or a length mismatch.
Field field_from_json(const Json& j);

void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

Json params_to_json(const Params& p);
Json certificate_to_json(const Certificate& c);
Json scan_row_to_json(const ScanRow& r);

/// Writes to path.tmp in the same directory, then renames over path.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace gdnls
