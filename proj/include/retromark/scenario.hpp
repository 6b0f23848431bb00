#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retromark/fmcw.hpp"
#include "retromark/lens.hpp"
#include "retromark/scatter.hpp"

namespace retromark {

// One key = value line of a sectioned config file.
struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

// Flat sectioned text: `[section]` headers, `key = value` lines, `#` comments.
// Keys carry explicit unit suffixes (focal_length_mm, ...) by convention.
struct ConfigDoc {
    std::string source_text;  // raw bytes, the basis of the config hash
    std::string base_dir;     // directory of the file, for relative paths
    std::vector<ConfigEntry> entries;

    bool has(const std::string& section, const std::string& key) const;
    // Last occurrence wins; throws std::invalid_argument naming section.key.
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    // "re" or "re,im"
    cdouble get_complex(const std::string& section, const std::string& key, cdouble fallback) const;
    // All occurrences in file order (repeatable keys like target lists).
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

    // Relative paths resolve against the config file's directory.
    std::string resolve_path(const std::string& value) const;
};

ConfigDoc parse_config_text(const std::string& text, const std::string& base_dir);
ConfigDoc parse_config_file(const std::string& path);

// FNV-1a 64-bit, used to stamp outputs with the resolved config's hash.
uint64_t fnv1a64(const std::string& bytes);

// --- Config -> domain objects (shared by the CLI and the acceptance runner).

LensSpec lens_spec_from(const ConfigDoc& doc);
// Loads the library named by lens.library_csv (resolved relative to the file).
UnitCellLibrary library_from(const ConfigDoc& doc);
MaskMode mask_mode_from(const ConfigDoc& doc);         // lens.mask_mode, default quantized
int samples_per_cell_from(const ConfigDoc& doc);       // lens.samples_per_cell, default 4

PatchPlaneSpec patch_spec_from(const ConfigDoc& doc);
TagAssembly assembly_from(const ConfigDoc& doc);       // builds the lens mask too
SimulationWindow window_from(const ConfigDoc& doc);

ChirpConfig chirp_from(const ConfigDoc& doc);
VirtualArray array_from(const ConfigDoc& doc);
// Repeatable `target = range_m, azimuth_deg, rcs_dbsm[, amplitude]` lines.
std::vector<PointTarget> targets_from(const ConfigDoc& doc, const std::string& section);
double noise_level_from(const ConfigDoc& doc);         // noise.level_db, "off" -> -inf
uint64_t seed_from(const ConfigDoc& doc, std::optional<uint64_t> override_seed);

}  // namespace retromark
