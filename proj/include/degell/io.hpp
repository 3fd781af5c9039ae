#ifndef DEGELL_IO_HPP
#define DEGELL_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "degell/fd_solver.hpp"
#include "degell/fichera.hpp"
#include "degell/moving_plane.hpp"
#include "degell/norms.hpp"

namespace degell {

/// Writes via a temp file in the same directory followed by rename, so
/// readers never observe a half-written artifact.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// ---- grid fields ------------------------------------------------------------

/// Rows of (x_1..x_n, y, value).
void write_grid_csv(const std::filesystem::path& path, const GridField& u);

/// Compact binary: 32-byte header (magic, version, axis count, node count),
/// one axis record (count, lo, hi) per axis, then the little-endian payload.
/// Round-trips bit-exactly.
void write_grid_binary(const std::filesystem::path& path, const GridField& u);
GridField read_grid_binary(const std::filesystem::path& path);

// ---- report serialization ----------------------------------------------------

std::string fichera_report_json(const FicheraReport& rep);
std::string fichera_report_csv(const FicheraReport& rep);
std::string plane_scan_json(const PlaneScanResult& res);
std::string plane_scan_csv(const PlaneScanResult& res);  // two columns: lambda, gap
std::string norm_report_json(const NormReport& rep);

}  // namespace degell

#endif
