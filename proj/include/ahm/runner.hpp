#pragma once

#include <iosfwd>
#include <string>

#include "ahm/config.hpp"
#include "ahm/report.hpp"

namespace ahm {

/// Runs the configured task; `cfg` is updated with the resolved defaults.
/// Warnings go to `log`.
Report execute(RunConfig& cfg, const LatticeGraph& g, std::ostream& log);

/// Full batch run: validate, compute, then write the report. Returns 0 when
/// every row passes, 1 when one fails and 2 on configuration, size-guard or
/// convergence errors (nothing is written in that case).
int run(RunConfig cfg, std::ostream& out, std::ostream& err);
int run_file(const std::string& config_path, std::ostream& out, std::ostream& err,
             const std::string& output_override = "");

}  // namespace ahm
