/// @file commands.hpp
/// @brief The batch commands behind the axicyl tool. Each writes its
/// artifacts into the configured output directory and returns a process exit
/// code.
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "axicyl/audit_report.hpp"
#include "axicyl/config.hpp"
#include "axicyl/error.hpp"
#include "axicyl/simulation.hpp"

namespace axicyl {

enum ExitCode : int {
    exit_ok = 0,
    exit_audit_failure = 1,
    exit_config_error = 2,
    exit_numerical_failure = 3,
};

/// Configuration and I/O problems map to 2, solver and blow-up failures to 3.
int exit_code_for(const Error& error);

/// Runs `body`, printing any library error to `err` and mapping it to an exit code.
int guarded(const std::function<int()>& body, std::ostream& err);

/// Simulates the configured preset from its initial state.
Trajectory simulate_config(const RunConfig& config, const std::function<void(const Snapshot&)>& on_snapshot = {});

/// Trajectory audits plus the stream-ratio audits of the final state,
/// filtered by config.audits.
std::vector<AuditReport> run_audits(const Trajectory& run, const RunConfig& config);

/// Every elliptic audit on both seeded families at the given grid. Each
/// report carries the member index and family in its metadata.
std::vector<AuditReport> elliptic_family_reports(const GridPtr& grid, std::uint64_t seed, double mu, int count = 20);

/// Largest finite ratio per report id, ignoring inapplicable reports.
std::map<std::string, double> worst_ratios(const std::vector<AuditReport>& reports);

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;
    double l2_error = 0.0;
    double order = 0.0;  ///< against the previous row; 0 on the first
};

/// Stream-ratio manufactured solution (R^2 - r^2) cos(pi z / a) at n, 2n, 4n
/// cells per direction with the differenced z-scheme.
std::vector<ConvergenceRow> elliptic_convergence(double radius, double half_height, int n);

/// 1 when any report has verdict fail.
int audit_exit_code(const std::vector<AuditReport>& reports);

int run_simulate(const RunConfig& config, std::ostream& out);
int run_audit(const RunConfig& config, std::ostream& out);
/// Audits a directory written by run_simulate. Reports go to `out_dir` when
/// given, else into the run directory.
int run_audit_saved(const std::filesystem::path& run_dir, const std::optional<std::string>& out_dir, std::ostream& out);
int run_elliptic_verify(const RunConfig& config, std::ostream& out);
int run_mellin(const RunConfig& config, std::ostream& out);
int run_exponents(int d, const std::string& eps1, const std::string& eps2, const std::string& eps0,
                  const std::string& out_dir, std::ostream& out);
int run_riccati(const RunConfig& config, std::ostream& out);
/// One SVG per series column in <run>/plots, or in `out_dir` when given.
int run_plot(const std::filesystem::path& run_dir, const std::optional<std::string>& out_dir, std::ostream& out);

}  // namespace axicyl
