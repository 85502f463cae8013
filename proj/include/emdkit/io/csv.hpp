#ifndef EMDKIT_IO_CSV_HPP
#define EMDKIT_IO_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "emdkit/core.hpp"

namespace emdkit::io {

/// Relative jitter allowed in the time column.
inline constexpr double kTimeJitterTolerance = 1e-9;

/// A parsed time-series CSV: time column first, then one column per series.
struct CsvTable {
  std::vector<std::string> header;  // empty when the file has no header row
  std::vector<std::string> comments;  // '#' lines without the leading '#', trimmed
  Vector<double> time;
  Matrix<double> values;  // rows = samples

  double sample_rate() const;  // inferred, validated uniform
  Index column_count() const noexcept { return values.cols(); }
  std::string column_name(Index j) const;
  Signal<double> column(Index j) const;
  std::vector<Signal<double>> columns() const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

/// Value of a "# key=value" comment line, empty if absent.
std::string comment_value(const CsvTable& t, const std::string& key);

/// %.17g, round-trip exact for doubles.
std::string format_double(double v);

/// Writes "time,<names...>" followed by one row per sample.
std::string to_csv(const Vector<double>& time, const std::vector<std::string>& names,
                   const std::vector<const Vector<double>*>& columns,
                   const std::vector<std::string>& comments = {});

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace emdkit::io

#endif  // EMDKIT_IO_CSV_HPP
