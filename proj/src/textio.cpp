#include "retromark/textio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace retromark {

std::string fmt(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("fmt: number formatting failed");
    return std::string(buf, end);
}

std::string fmt_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string hex16(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string hash_header(uint64_t config_hash) {
    return "# config_hash=" + hex16(config_hash) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_pgm8(const std::string& path, int width, int height,
                const std::vector<double>& power, double span_db, const std::string& comment) {
    if (width < 1 || height < 1 || power.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("write_pgm8: size mismatch");
    if (!(span_db > 0.0)) throw std::invalid_argument("write_pgm8: span must be > 0 dB");

    double peak = 0.0;
    for (double p : power) peak = std::max(peak, p);

    std::string body;
    body.reserve(power.size());
    for (double p : power) {
        double db = (peak > 0.0 && p > 0.0) ? 10.0 * std::log10(p / peak) : -span_db;
        db = std::max(db, -span_db);
        body.push_back(static_cast<char>(
            static_cast<unsigned char>(std::lround(255.0 * (db + span_db) / span_db))));
    }

    std::string head = "P5\n";
    if (!comment.empty()) head += "# " + comment + "\n";
    head += std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    write_text_file(path, head + body);
}

}  // namespace retromark
