#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace coopsim {

/// Shortest round-trip decimal form; "nan" for NaN, "" is never produced.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

/// Row-oriented CSV text builder. Fields are numbers or bare tokens, so no
/// quoting is needed.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::string_view header);

  CsvBuilder& field(double value);
  CsvBuilder& field(std::uint64_t value);
  CsvBuilder& field(std::string_view token);
  CsvBuilder& empty_field();
  void end_row();

  const std::string& text() const { return text_; }

 private:
  void separator();

  std::string text_;
  bool row_open_ = false;
};

/// Writes `content` to a sibling temp file, then renames it over `path`, so
/// readers never see a truncated file. Throws io_error.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace coopsim
