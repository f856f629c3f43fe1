#include "rmtsw/csv.hpp"

#include <charconv>
#include <system_error>

namespace rmtsw {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return {buf, p};
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw CsvError(where + ": not a number: \"" + std::string(s) + "\"");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view s, const std::string& where) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw CsvError(where + ": not a nonnegative integer: \"" + std::string(s) + "\"");
  }
  return v;
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path) : file_(path, std::ios::binary), path_(path) {
  if (!file_) throw CsvError("cannot open " + path + " for writing");
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) file_ << ',';
    const std::string& f = fields[i];
    if (needs_quoting(f)) {
      file_ << '"';
      for (char c : f) {
        if (c == '"') file_ << '"';
        file_ << c;
      }
      file_ << '"';
    } else {
      file_ << f;
    }
  }
  file_ << '\n';
}

void CsvWriter::close() {
  if (file_.is_open()) {
    file_.flush();
    if (!file_) throw CsvError("write failed for " + path_);
    file_.close();
  }
}

CsvReader::CsvReader(const std::string& path, const std::vector<std::string>& expected_header)
    : file_(path, std::ios::binary), path_(path) {
  if (!file_) throw CsvError("cannot open " + path);
  auto header = read_record();
  if (!header) throw CsvError(path + ": empty file, expected a header row");
  if (*header != expected_header) {
    std::string want;
    for (std::size_t i = 0; i < expected_header.size(); ++i) {
      if (i > 0) want += ',';
      want += expected_header[i];
    }
    throw CsvError(path + ":1: unexpected header, want \"" + want + "\"");
  }
  n_columns_ = expected_header.size();
}

std::optional<std::vector<std::string>> CsvReader::next_row() {
  auto row = read_record();
  if (row && row->size() != n_columns_) {
    throw CsvError(path_ + ":" + std::to_string(row_line_) + ": expected " +
                   std::to_string(n_columns_) + " fields, got " + std::to_string(row->size()));
  }
  return row;
}

// One logical record; quoted fields may span physical lines.
std::optional<std::vector<std::string>> CsvReader::read_record() {
  std::string line;
  if (!std::getline(file_, line)) return std::nullopt;
  ++line_;
  row_line_ = line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  std::size_t i = 0;
  while (true) {
    if (i >= line.size()) {
      if (!in_quotes) break;
      // Embedded newline: pull the next physical line into this record.
      std::string more;
      if (!std::getline(file_, more)) {
        throw CsvError(path_ + ":" + std::to_string(row_line_) + ": unterminated quoted field");
      }
      ++line_;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
    ++i;
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace rmtsw
