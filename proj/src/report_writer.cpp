#include "ahm/report_writer.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ahm/errors.hpp"

namespace ahm {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Report& rows) {
  std::string out = "claim_id,lattice,params,quantity,lhs,rhs,margin,verdict,seconds\n";
  for (const auto& r : rows) {
    out += csv_field(r.claim_id) + ',' + csv_field(r.lattice) + ',' + csv_field(r.params) + ',' +
           csv_field(r.quantity) + ',' + format_number(r.lhs) + ',' + format_number(r.rhs) + ',' +
           format_number(r.margin) + ',' + (r.pass ? "pass" : "fail") + ',' + format_number(r.seconds) + '\n';
  }
  return out;
}

std::string report_json(const Report& rows, const nlohmann::json& config) {
  using nlohmann::json;
  std::string out = "{\n  \"config\": " + config.dump() + ",\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += i ? ",\n    {" : "\n    {";
    out += "\"claim_id\": " + json(r.claim_id).dump();
    out += ", \"lattice\": " + json(r.lattice).dump();
    out += ", \"params\": " + json(r.params).dump();
    out += ", \"quantity\": " + json(r.quantity).dump();
    out += ", \"lhs\": " + json_number(r.lhs);
    out += ", \"rhs\": " + json_number(r.rhs);
    out += ", \"margin\": " + json_number(r.margin);
    out += std::string(", \"verdict\": ") + (r.pass ? "\"pass\"" : "\"fail\"");
    out += ", \"seconds\": " + json_number(r.seconds) + "}";
  }
  out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write report to " + path);
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("cannot write report to " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot write report to " + path);
  }
}

}  // namespace ahm
