#pragma once

#include <string>

#include "json.hpp"

#include "ahm/report.hpp"

namespace ahm {

/// %.17g; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double v);

/// Header plus one line per row:
/// claim_id,lattice,params,quantity,lhs,rhs,margin,verdict,seconds
std::string to_csv(const Report& rows);

/// {"config": ..., "rows": [...]} with the CSV fields and number formatting.
std::string report_json(const Report& rows, const nlohmann::json& config);

/// Writes through a temporary file and renames it into place.
/// Throws ConfigError when the path is not writable.
void write_file(const std::string& path, const std::string& content);

}  // namespace ahm
