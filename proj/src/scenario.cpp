#include "retromark/scenario.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "retromark/textio.hpp"

namespace retromark {
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Cut a trailing comment: '#' at line start or preceded by whitespace.
std::string strip_comment(const std::string& s) {
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t'))
            return s.substr(0, i);
    return s;
}

double parse_double(const std::string& section, const std::string& key, const std::string& value) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw std::invalid_argument("config [" + section + "] " + key + ": bad number '" + value +
                                    "'");
    return v;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

}  // namespace

bool ConfigDoc::has(const std::string& section, const std::string& key) const {
    for (const ConfigEntry& e : entries)
        if (e.section == section && e.key == key) return true;
    return false;
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key) const {
    const ConfigEntry* found = nullptr;
    for (const ConfigEntry& e : entries)
        if (e.section == section && e.key == key) found = &e;
    if (!found)
        throw std::invalid_argument("config: missing required key [" + section + "] " + key);
    return found->value;
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigDoc::get_double(const std::string& section, const std::string& key) const {
    return parse_double(section, key, get_string(section, key));
}

double ConfigDoc::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigDoc::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const double v = get_double(section, key);
    const int i = static_cast<int>(v);
    if (v != i)
        throw std::invalid_argument("config [" + section + "] " + key + ": expected an integer");
    return i;
}

bool ConfigDoc::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = lower(get_string(section, key));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config [" + section + "] " + key + ": bad boolean '" + v + "'");
}

cdouble ConfigDoc::get_complex(const std::string& section, const std::string& key,
                               cdouble fallback) const {
    if (!has(section, key)) return fallback;
    const std::vector<std::string> parts = split_commas(get_string(section, key));
    if (parts.size() == 1) return {parse_double(section, key, parts[0]), 0.0};
    if (parts.size() == 2)
        return {parse_double(section, key, parts[0]), parse_double(section, key, parts[1])};
    throw std::invalid_argument("config [" + section + "] " + key +
                                ": expected 're' or 're,im'");
}

std::vector<std::string> ConfigDoc::get_all(const std::string& section,
                                            const std::string& key) const {
    std::vector<std::string> out;
    for (const ConfigEntry& e : entries)
        if (e.section == section && e.key == key) out.push_back(e.value);
    return out;
}

std::string ConfigDoc::resolve_path(const std::string& value) const {
    if (value.empty()) throw std::invalid_argument("config: empty path");
    if (value[0] == '/') return value;
    return (base_dir.empty() ? std::string(".") : base_dir) + "/" + value;
}

ConfigDoc parse_config_text(const std::string& text, const std::string& base_dir) {
    ConfigDoc doc;
    doc.source_text = text;
    doc.base_dir = base_dir;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": bad section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + line + "'");
        ConfigEntry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        doc.entries.push_back(e);
    }
    return doc;
}

ConfigDoc parse_config_file(const std::string& path) {
    const std::string text = read_text_file(path);  // runtime_error if unreadable
    const size_t slash = path.find_last_of('/');
    const std::string dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return parse_config_text(text, dir);
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

LensSpec lens_spec_from(const ConfigDoc& doc) {
    LensSpec spec;
    spec.focal_mm = doc.get_double("lens", "focal_length_mm", spec.focal_mm);
    spec.cell_pitch_mm = doc.get_double("lens", "cell_pitch_mm", spec.cell_pitch_mm);
    spec.cells = doc.get_int("lens", "cells", spec.cells);
    spec.frequency_ghz = doc.get_double("lens", "frequency_ghz", spec.frequency_ghz);
    spec.validate();
    return spec;
}

UnitCellLibrary library_from(const ConfigDoc& doc) {
    return load_library_csv(doc.resolve_path(doc.get_string("lens", "library_csv")));
}

MaskMode mask_mode_from(const ConfigDoc& doc) {
    const std::string mode = lower(doc.get_string("lens", "mask_mode", "quantized"));
    if (mode == "quantized") return MaskMode::Quantized;
    if (mode == "ideal") return MaskMode::Ideal;
    throw std::invalid_argument("config [lens] mask_mode: expected 'ideal' or 'quantized', got '" +
                                mode + "'");
}

int samples_per_cell_from(const ConfigDoc& doc) {
    const int spc = doc.get_int("lens", "samples_per_cell", 4);
    if (spc < 1) throw std::invalid_argument("config [lens] samples_per_cell: must be >= 1");
    return spc;
}

PatchPlaneSpec patch_spec_from(const ConfigDoc& doc) {
    PatchPlaneSpec spec;
    spec.patch_length_mm = doc.get_double("patch", "patch_length_mm", spec.patch_length_mm);
    spec.patch_width_mm = doc.get_double("patch", "patch_width_mm", spec.patch_width_mm);
    spec.period_mm = doc.get_double("patch", "period_mm", spec.period_mm);
    spec.extent_x_mm = doc.get_double("patch", "extent_x_mm", spec.extent_x_mm);
    spec.extent_y_mm = doc.get_double("patch", "extent_y_mm", spec.extent_y_mm);
    spec.patch_reflection = doc.get_complex("patch", "patch_reflection", spec.patch_reflection);
    spec.ground_reflection = doc.get_complex("patch", "ground_reflection", spec.ground_reflection);
    spec.validate();
    return spec;
}

TagAssembly assembly_from(const ConfigDoc& doc) {
    TagAssembly tag;
    const LensSpec spec = lens_spec_from(doc);
    const QuantizedLens lens = build_quantized_lens(spec, library_from(doc));
    tag.lens = lens_to_mask(lens, samples_per_cell_from(doc), mask_mode_from(doc));
    tag.patch = patch_spec_from(doc);
    tag.separation_mm = doc.get_double("assembly", "separation_mm", tag.separation_mm);
    tag.board_x_mm = doc.get_double("assembly", "board_x_mm", tag.board_x_mm);
    tag.board_y_mm = doc.get_double("assembly", "board_y_mm", tag.board_y_mm);
    tag.frequency_ghz = spec.frequency_ghz;
    tag.validate();
    return tag;
}

SimulationWindow window_from(const ConfigDoc& doc) {
    SimulationWindow win;
    win.window_factor = doc.get_double("sweep", "window_factor", win.window_factor);
    if (!(win.window_factor >= 1.0))
        throw std::invalid_argument("config [sweep] window_factor: must be >= 1");
    return win;
}

ChirpConfig chirp_from(const ConfigDoc& doc) {
    ChirpConfig c;
    c.start_ghz = doc.get_double("chirp", "start_ghz", c.start_ghz);
    c.slope_mhz_per_us = doc.get_double("chirp", "slope_mhz_per_us", c.slope_mhz_per_us);
    c.duration_us = doc.get_double("chirp", "duration_us", c.duration_us);
    c.adc_start_us = doc.get_double("chirp", "adc_start_us", c.adc_start_us);
    c.sample_rate_msps = doc.get_double("chirp", "sample_rate_msps", c.sample_rate_msps);
    c.samples_per_chirp = doc.get_int("chirp", "samples_per_chirp", c.samples_per_chirp);
    c.tx_count = doc.get_int("chirp", "tx", c.tx_count);
    c.rx_count = doc.get_int("chirp", "rx", c.rx_count);
    c.chirps_per_tx = doc.get_int("chirp", "chirps_per_tx", c.chirps_per_tx);
    c.complex_adc = doc.get_bool("chirp", "complex_adc", c.complex_adc);
    c.validate();
    return c;
}

VirtualArray array_from(const ConfigDoc& doc) {
    const ChirpConfig c = chirp_from(doc);
    return VirtualArray::uniform_ula(c.tx_count, c.rx_count);
}

std::vector<PointTarget> targets_from(const ConfigDoc& doc, const std::string& section) {
    std::vector<PointTarget> targets;
    for (const std::string& line : doc.get_all(section, "target")) {
        const std::vector<std::string> f = split_commas(line);
        if (f.size() != 3 && f.size() != 4)
            throw std::invalid_argument("config [" + section +
                                        "] target: expected 'range_m, azimuth_deg, rcs_dbsm[, "
                                        "amplitude]', got '" +
                                        line + "'");
        PointTarget t;
        t.range_m = parse_double(section, "target", f[0]);
        t.azimuth_deg = parse_double(section, "target", f[1]);
        t.rcs_dbsm = parse_double(section, "target", f[2]);
        if (f.size() == 4) t.amplitude = parse_double(section, "target", f[3]);
        targets.push_back(t);
    }
    return targets;
}

double noise_level_from(const ConfigDoc& doc) {
    const std::string v = lower(doc.get_string("noise", "level_db", "off"));
    if (v == "off") return -std::numeric_limits<double>::infinity();
    return parse_double("noise", "level_db", v);
}

uint64_t seed_from(const ConfigDoc& doc, std::optional<uint64_t> override_seed) {
    if (override_seed) return *override_seed;
    const double v = doc.get_double("noise", "seed", 1.0);
    if (v < 0 || v != std::floor(v))
        throw std::invalid_argument("config [noise] seed: expected a non-negative integer");
    return static_cast<uint64_t>(v);
}

}  // namespace retromark
