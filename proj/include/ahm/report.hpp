#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace ahm {

/// One verified claim. Pass iff margin >= -tolerance.
struct ReportRow {
  std::string claim_id;
  std::string lattice;
  std::string params;
  std::string quantity;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  double seconds = 0.0;
  double tolerance = 0.0;
  std::string note;
};

using Report = std::vector<ReportRow>;

/// lhs >= rhs.
inline ReportRow inequality_row(std::string claim, std::string lattice, std::string params, std::string quantity,
                                double lhs, double rhs, double tol) {
  ReportRow r;
  r.claim_id = std::move(claim);
  r.lattice = std::move(lattice);
  r.params = std::move(params);
  r.quantity = std::move(quantity);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = tol;
  r.pass = std::isfinite(r.margin) && r.margin >= -tol;
  return r;
}

/// lhs == rhs; margin is -|lhs - rhs|.
inline ReportRow equality_row(std::string claim, std::string lattice, std::string params, std::string quantity,
                              double lhs, double rhs, double tol) {
  ReportRow r = inequality_row(std::move(claim), std::move(lattice), std::move(params), std::move(quantity), lhs,
                               rhs, tol);
  r.margin = 0.0 - std::abs(lhs - rhs);
  r.pass = std::isfinite(r.margin) && r.margin >= -tol;
  return r;
}

inline bool all_pass(const Report& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Stamps the elapsed time on rows appended since `first`.
inline void stamp(Report& rows, std::size_t first, const Stopwatch& sw) {
  const double s = sw.seconds();
  for (std::size_t i = first; i < rows.size(); ++i) rows[i].seconds = s;
}

}  // namespace ahm
