#pragma once

// Locale-free, byte-reproducible writers. CSV files open with '#' comment
// lines (format name and version first), then one header row, then data.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cfma::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kFormatVersion = 1;

// 9 significant digits, '.' decimal point, shortest %g-style form; -0 prints
// as 0 and non-finite values as nan / inf / -inf.
std::string format_number(double value);

class CsvWriter {
 public:
  // Writes "# cfma-<name> v<kFormatVersion> (cfma <kToolVersion>)".
  explicit CsvWriter(std::string_view name);

  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(int value) { return cell(static_cast<std::int64_t>(value)); }
  CsvWriter& cell(bool value);
  CsvWriter& cell(std::string_view text);  // quoted when it holds , " or newline
  CsvWriter& cell(const char* text) { return cell(std::string_view(text)); }
  CsvWriter& empty();
  void end_row();

  const std::string& str() const noexcept { return text_; }

 private:
  void separator();

  std::string text_;
  bool row_open_ = false;
};

}  // namespace cfma::cli
