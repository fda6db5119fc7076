#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "unimix/errors.hpp"

namespace unimix {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, long line = 0) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  std::size_t end = text.find_last_not_of(" \t\r");
  if (begin == std::string_view::npos)
    throw parse_error("empty field where a number was expected", line);
  const std::string_view trimmed = text.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (res.ec != std::errc{} || res.ptr != trimmed.data() + trimmed.size())
    throw parse_error("cannot parse '" + std::string(trimmed) + "' as a number", line);
  return value;
}

/// Newline-delimited decimal reals; blank lines are ignored.  Parse failures
/// carry the 1-based line number.
inline std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open data file '" + path + "'", 0);
  std::vector<double> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    values.push_back(parse_double(line, line_no));
  }
  return values;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace unimix
