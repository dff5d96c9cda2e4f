#include "cfma/cli/output.hpp"

#include <charconv>
#include <cmath>

namespace cfma::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::string_view name) {
  text_ = "# cfma-";
  text_ += name;
  text_ += " v" + std::to_string(kFormatVersion) + " (cfma ";
  text_ += kToolVersion;
  text_ += ")\n";
}

void CsvWriter::comment(std::string_view text) {
  text_ += "# ";
  text_ += text;
  text_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) cell(std::string_view(c));
  end_row();
}

void CsvWriter::separator() {
  if (row_open_) text_ += ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  text_ += format_number(value);
  return *this;
}

CsvWriter& CsvWriter::cell(std::int64_t value) {
  separator();
  text_ += std::to_string(value);
  return *this;
}

CsvWriter& CsvWriter::cell(bool value) {
  separator();
  text_ += value ? "true" : "false";
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    text_ += text;
    return *this;
  }
  text_ += '"';
  for (char c : text) {
    if (c == '"') text_ += '"';
    text_ += c;
  }
  text_ += '"';
  return *this;
}

CsvWriter& CsvWriter::empty() {
  separator();
  return *this;
}

void CsvWriter::end_row() {
  text_ += '\n';
  row_open_ = false;
}

}  // namespace cfma::cli
