#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace limitlab::cli {

using ordered_json = nlohmann::ordered_json;

// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double v);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// JSON text with every floating-point value printed by format_double.
// Non-finite values become strings. Two-space indentation, trailing newline.
std::string dump_json(const ordered_json& j);

struct Metadata {
  std::string version;
  std::string config_hash;
  std::string subcommand;
  long long seed = 0;
  ordered_json truncation = ordered_json::object();
  std::vector<std::string> notes;

  ordered_json to_json() const;
  // "# key=value" lines for CSV and PGM headers.
  std::vector<std::string> header_lines() const;
};

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::vector<std::string> row_;
};

void write_json(const std::filesystem::path& path, const Metadata& meta, ordered_json body);

// Binary greyscale PGM (P5), 8 bits per pixel, row-major from the top.
void write_pgm(const std::filesystem::path& path, const Metadata& meta, int width, int height,
               const std::vector<std::uint8_t>& pixels);

}  // namespace limitlab::cli
