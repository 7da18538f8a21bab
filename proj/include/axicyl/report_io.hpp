/// @file report_io.hpp
/// @brief On-disk formats of a run: series and field CSVs, the manifest, audit
/// report records and the text summary. Numbers are written with 17
/// significant digits so reading a file back reproduces every double.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "axicyl/audit_report.hpp"
#include "axicyl/auditor.hpp"
#include "axicyl/config.hpp"
#include "axicyl/simulation.hpp"

namespace axicyl {

/// File names inside a run directory.
namespace run_files {
inline constexpr const char* manifest = "manifest.json";
inline constexpr const char* config = "config.ini";
inline constexpr const char* series = "series.csv";
inline constexpr const char* d_constants = "d_constants.csv";
inline constexpr const char* final_state = "final_state.csv";
inline constexpr const char* snapshots = "snapshots";
inline constexpr const char* report = "report.csv";
inline constexpr const char* summary = "summary.txt";
inline constexpr const char* plots = "plots";
}  // namespace run_files

/// "%.17g"
std::string format_number(double value);

/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);
std::string quote_csv(const std::string& field);

/// Sample columns followed by the running X. Header cells read "name [unit]".
std::string series_csv(const Trajectory& run);
std::vector<Sample> parse_series_csv(const std::string& text);

std::string d_constants_csv(const DConstants& d);

/// Nodal fields with a "# t=..., grid=..." preamble. With `with_duals` the
/// swirl, Phi and Gamma columns follow the primary fields.
std::string snapshot_csv(const Snapshot& s, bool with_duals);

/// Record per report: id, verdict, lhs, rhs, ratio, explicit constant and
/// the term lists and metadata as JSON.
std::string reports_csv(const std::vector<AuditReport>& reports);
std::vector<AuditReport> parse_reports_csv(const std::string& text);
/// Fixed-width table for humans.
std::string summary_table(const std::vector<AuditReport>& reports);

std::string manifest_json(const RunConfig& config, const Trajectory& run, const std::string& status);

/// Throws Error(io_error).
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Writes config, series, D constants, final state and manifest into
/// config.output_dir.
void save_run(const RunConfig& config, const Trajectory& run, const DConstants& d);

struct SavedRun {
    RunConfig config;
    Trajectory run;
};

/// Reads a directory written by save_run. Throws Error(io_error) when files
/// are missing or malformed.
SavedRun load_run(const std::filesystem::path& dir);

}  // namespace axicyl
