#pragma once

#include <iosfwd>
#include <set>
#include <string>

#include "magbil/config.hpp"
#include "magbil/report.hpp"

namespace magbil {

/// Exit codes shared by all subcommands: 0 success / all checks pass,
/// 1 runtime or check failure, 2 configuration or build error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

inline const std::set<std::string> kAllChecks = {
    "santalo", "mirror", "beta-independence", "defect", "symplectic", "gauss-bonnet"};

int cmd_table_info(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_orbit(const RunConfig& cfg, double x0, double phi0, long n,
              const std::string& csv_path, std::ostream& err);

int cmd_phase_portrait(const RunConfig& cfg, int seeds, long iterations, double x0,
                       const std::string& csv_path, const std::string& svg_path,
                       std::ostream& err);

/// Runs the selected checks, prints one line per check, writes the
/// machine-readable report JSON next to the other outputs.
int cmd_verify(const RunConfig& cfg, const std::set<std::string>& which,
               const std::string& report_path, std::ostream& out, std::ostream& err);

/// Core of cmd_verify without I/O; exposed for tests.
std::vector<VerificationReport> run_checks(const RunConfig& cfg,
                                           const std::set<std::string>& which);

} // namespace magbil
