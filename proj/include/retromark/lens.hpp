#pragma once

#include <string>
#include <vector>

#include "retromark/grid.hpp"

namespace retromark {

// One row of the unit-cell library: a fabricated split-ring geometry together
// with its measured transmission phase and magnitude at the design frequency.
struct UnitCellEntry {
    std::string cell_id;
    double r_mm = 0.0;
    double w_mm = 0.0;
    double g_mm = 0.0;
    double alpha_deg = 0.0;
    double phase_deg = 0.0;   // transmission phase, degrees
    double magnitude = 1.0;   // |t|, 0 < magnitude <= 1
};

struct UnitCellLibrary {
    std::vector<UnitCellEntry> entries;

    // Throws std::invalid_argument on empty library or out-of-range magnitude.
    void validate() const;
};

// Columns: cell_id,r_mm,w_mm,g_mm,alpha_deg,phase_deg,magnitude
UnitCellLibrary load_library_csv(const std::string& path);

struct LensSpec {
    double focal_mm = 20.0;
    double cell_pitch_mm = 1.728;
    int cells = 21;             // per side, odd so the lens has a centre cell
    double frequency_ghz = 78.5;

    void validate() const;
    double wavelength_mm() const;
    double half_span() const { return (cells - 1) / 2.0; }
    // Centre of cell index i in [-(cells-1)/2, +(cells-1)/2].
    double cell_center_mm(int i) const { return i * cell_pitch_mm; }
};

// Hyperbolic focusing profile: the extra path from (x,y) to the focus,
// expressed in degrees and wrapped to [0, 360).
double required_phase(double x_mm, double y_mm, double focal_mm, double wavelength_mm);

struct ProfileSample {
    int i = 0;  // centred x index
    int j = 0;  // centred y index
    double phase_deg = 0.0;
};

// Required phase at every cell centre, row-major in j then i.
std::vector<ProfileSample> sample_profile(const LensSpec& spec);

// Library row whose phase is circularly closest to the target. Ties go to the
// larger magnitude, then to the earlier row.
int nearest_match_index(const UnitCellLibrary& library, double phase_deg);
const UnitCellEntry& nearest_match(const UnitCellLibrary& library, double phase_deg);

// A synthesised lens: per cell, the ideal phase and the assigned library row.
struct QuantizedLens {
    LensSpec spec;
    UnitCellLibrary library;
    std::vector<double> ideal_phase_deg;  // row-major, j*cells + i
    std::vector<int> cell_index;          // index into library.entries

    int half() const { return (spec.cells - 1) / 2; }
    size_t flat(int i, int j) const;  // centred indices, throws std::out_of_range
    double ideal_at(int i, int j) const { return ideal_phase_deg[flat(i, j)]; }
    const UnitCellEntry& entry_at(int i, int j) const { return library.entries[cell_index[flat(i, j)]]; }
};

QuantizedLens build_quantized_lens(const LensSpec& spec, const UnitCellLibrary& library);

enum class MaskMode {
    Ideal,      // continuous profile evaluated at each sample, unit magnitude
    Quantized,  // per-cell constant: assigned library phase and magnitude
};

// Transmission mask over the bare aperture, cells*samples_per_cell on a side.
ApertureMask lens_to_mask(const QuantizedLens& lens, int samples_per_cell, MaskMode mode);

// Export body (no comment header). Columns:
// i,j,ideal_phase_deg,assigned_phase_deg,magnitude,r_mm,w_mm,g_mm,alpha_deg
std::string lens_export_csv(const QuantizedLens& lens);

}  // namespace retromark
