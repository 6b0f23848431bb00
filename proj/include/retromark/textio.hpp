#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace retromark {

// Shortest round-trippable decimal for CSV/report output.
std::string fmt(double value);
std::string fmt_fixed(double value, int decimals);

std::string hex16(uint64_t value);
// "# config_hash=<hex>\n" — stamped at the top of every output file.
std::string hash_header(uint64_t config_hash);

std::string read_text_file(const std::string& path);   // throws std::runtime_error
void write_text_file(const std::string& path, const std::string& content);

// 8-bit binary PGM. Values are linear power; the image is log-scaled over the
// top `span_db` below the maximum so weak returns stay visible.
void write_pgm8(const std::string& path, int width, int height,
                const std::vector<double>& power, double span_db = 60.0,
                const std::string& comment = "");

}  // namespace retromark
