#include "emdkit/io/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace emdkit::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size();
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      t.comments.push_back(trim(line.substr(1)));
      continue;
    }
    const auto cells = split(line);
    std::vector<double> row;
    row.reserve(cells.size());
    bool numeric = true;
    for (const auto& c : cells) {
      double v;
      if (!parse_number(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && t.header.empty()) {
        t.header = cells;
        width = cells.size();
        continue;
      }
      throw ParseError("non-numeric value", line_no);
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!std::isfinite(row[j])) {
        throw InvalidSignalError("non-finite value at line " + std::to_string(line_no) +
                                 ", column " + std::to_string(j + 1));
      }
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, got " +
                           std::to_string(row.size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", line_no);
  if (width < 2) throw ParseError("need a time column and at least one value column", line_no);
  const auto n = static_cast<Index>(rows.size());
  t.time.resize(n);
  t.values.resize(n, static_cast<Index>(width - 1));
  for (Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    t.time[i] = r[0];
    for (std::size_t j = 1; j < width; ++j) t.values(i, static_cast<Index>(j - 1)) = r[j];
  }
  return t;
}

double CsvTable::sample_rate() const {
  const Index n = time.size();
  if (n < 2) throw InsufficientDataError("need at least 2 samples to infer the sample rate");
  const double step = (time[n - 1] - time[0]) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw InvalidSignalError("time column must be strictly increasing");
  for (Index i = 1; i < n; ++i) {
    const double d = time[i] - time[i - 1];
    if (std::abs(d - step) > kTimeJitterTolerance * step + 1e-15 * std::abs(time[i])) {
      throw InvalidSignalError("non-uniform sampling at row " + std::to_string(i + 1));
    }
  }
  return 1.0 / step;
}

std::string CsvTable::column_name(Index j) const {
  const auto k = static_cast<std::size_t>(j + 1);
  if (k < header.size() && !header[k].empty()) return header[k];
  return "ch" + std::to_string(j + 1);
}

Signal<double> CsvTable::column(Index j) const {
  return Signal<double>(values.col(j), sample_rate(), time[0]);
}

std::vector<Signal<double>> CsvTable::columns() const {
  std::vector<Signal<double>> out;
  for (Index j = 0; j < values.cols(); ++j) out.push_back(column(j));
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

std::string comment_value(const CsvTable& t, const std::string& key) {
  const std::string prefix = key + "=";
  for (const auto& c : t.comments) {
    if (c.rfind(prefix, 0) == 0) return c.substr(prefix.size());
  }
  return {};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Vector<double>& time, const std::vector<std::string>& names,
                   const std::vector<const Vector<double>*>& columns,
                   const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "time";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (Index i = 0; i < time.size(); ++i) {
    out += format_double(time[i]);
    for (const auto* c : columns) {
      out += ',';
      out += format_double((*c)[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace emdkit::io
