#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uhw::experiment {

enum class PlotKind { tail_overlay, phase_diagram, moment_growth };

std::string to_string(PlotKind kind);
/// Throws std::invalid_argument for an unknown tag.
PlotKind plot_kind_from_string(const std::string& tag);

/// The CSV lacks a column the requested figure reads.
class ColumnMismatchError : public std::runtime_error {
 public:
  explicit ColumnMismatchError(const std::string& column)
      : std::runtime_error("missing column '" + column + "'"), column_(column) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

/// Columns a CSV must provide for `kind`.
const std::vector<std::string>& required_columns(PlotKind kind);

/// First line of a CSV file split on commas.
std::vector<std::string> read_csv_header(const std::filesystem::path& csv);

/// Writes a standalone matplotlib script that renders `kind` from `csv`
/// (default location: the CSV path with suffix .<kind>.py). Nothing is
/// rendered here. Returns the script path.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv, PlotKind kind,
                                       std::optional<std::filesystem::path> script = std::nullopt);

}  // namespace uhw::experiment
