#include "copula_order/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "copula_order/errors.hpp"

namespace copord {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_columns(std::ostream& os, std::span<const std::string> header,
                   std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) throw RangeError("CSV header and column counts differ");
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw RangeError("CSV columns differ in length");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << format_double(columns[c][r]);
    os << '\n';
  }
}

namespace {

bool parse_number(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Baseline load_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open tabulated baseline file '" + path.string() + "'");
  std::vector<double> xs;
  std::vector<double> Fs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    double x = 0.0;
    double F = 0.0;
    const bool ok = comma != std::string::npos && parse_number(std::string_view(line).substr(0, comma), x) &&
                    parse_number(std::string_view(line).substr(comma + 1), F);
    if (!ok) {
      if (xs.empty() && lineno == 1) continue;  // header
      throw UsageError(path.string() + ", line " + std::to_string(lineno) + ": expected 'x,F'");
    }
    xs.push_back(x);
    Fs.push_back(F);
  }
  return Baseline::tabulated(std::move(xs), std::move(Fs));
}

}  // namespace copord
