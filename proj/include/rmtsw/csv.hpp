#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmtsw {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double v);

/// Strict full-string numeric parsers; `where` names the file/column/line in
/// the error message.
double parse_double(std::string_view s, const std::string& where);
std::uint64_t parse_uint(std::string_view s, const std::string& where);

/// Minimal RFC 4180 writer: fields containing a comma, quote, or newline are
/// quoted, embedded quotes doubled.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void write_row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream file_;
  std::string path_;
};

/// Reader matching CsvWriter's dialect, including newlines inside quoted
/// fields. The constructor consumes and validates the header row.
class CsvReader {
 public:
  CsvReader(const std::string& path, const std::vector<std::string>& expected_header);

  /// Next data row, or nullopt at end of file.
  std::optional<std::vector<std::string>> next_row();

  /// 1-based line number where the last returned row started.
  std::size_t row_line() const { return row_line_; }
  const std::string& path() const { return path_; }

 private:
  std::optional<std::vector<std::string>> read_record();

  std::ifstream file_;
  std::string path_;
  std::size_t line_ = 0;
  std::size_t row_line_ = 0;
  std::size_t n_columns_ = 0;
};

}  // namespace rmtsw
