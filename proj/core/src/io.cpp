#include "coopsim/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "coopsim/errors.hpp"

namespace coopsim {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string format_number(std::uint64_t value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

CsvBuilder::CsvBuilder(std::string_view header) : text_(header) { text_ += '\n'; }

void CsvBuilder::separator() {
  if (row_open_) text_ += ',';
  row_open_ = true;
}

CsvBuilder& CsvBuilder::field(double value) {
  separator();
  text_ += format_number(value);
  return *this;
}

CsvBuilder& CsvBuilder::field(std::uint64_t value) {
  separator();
  text_ += format_number(value);
  return *this;
}

CsvBuilder& CsvBuilder::field(std::string_view token) {
  separator();
  text_ += token;
  return *this;
}

CsvBuilder& CsvBuilder::empty_field() {
  separator();
  return *this;
}

void CsvBuilder::end_row() {
  text_ += '\n';
  row_open_ = false;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target = fs::absolute(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  if (ec) throw io_error("cannot create directory " + target.parent_path().string() + ": " + ec.message());
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + temp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(temp, ec);
      throw io_error("write to " + temp.string() + " failed");
    }
  }
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw io_error("cannot move " + temp.string() + " to " + target.string() + ": " + ec.message());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace coopsim
