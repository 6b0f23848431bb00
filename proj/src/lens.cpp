#include "retromark/lens.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "retromark/textio.hpp"
#include "retromark/units.hpp"

namespace retromark {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        size_t a = field.find_first_not_of(" \t\r");
        size_t b = field.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    return out;
}

double parse_field(const std::string& s, const std::string& path, int line) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(path + ":" + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

void UnitCellLibrary::validate() const {
    if (entries.empty()) throw std::invalid_argument("unit-cell library is empty");
    for (size_t i = 0; i < entries.size(); ++i) {
        const UnitCellEntry& e = entries[i];
        if (!(e.magnitude > 0.0) || e.magnitude > 1.0)
            throw std::invalid_argument("library entry '" + e.cell_id + "' (row " +
                                        std::to_string(i) + "): magnitude " +
                                        std::to_string(e.magnitude) + " outside (0, 1]");
        if (!std::isfinite(e.phase_deg))
            throw std::invalid_argument("library entry '" + e.cell_id + "': non-finite phase");
    }
}

UnitCellLibrary load_library_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open unit-cell library: " + path);

    static const std::string kHeader = "cell_id,r_mm,w_mm,g_mm,alpha_deg,phase_deg,magnitude";
    UnitCellLibrary lib;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kHeader)
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": expected header '" + kHeader + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = split_csv(line);
        if (f.size() != 7)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 7 fields, got " +
                                        std::to_string(f.size()));
        UnitCellEntry e;
        e.cell_id = f[0];
        e.r_mm = parse_field(f[1], path, lineno);
        e.w_mm = parse_field(f[2], path, lineno);
        e.g_mm = parse_field(f[3], path, lineno);
        e.alpha_deg = parse_field(f[4], path, lineno);
        e.phase_deg = parse_field(f[5], path, lineno);
        e.magnitude = parse_field(f[6], path, lineno);
        lib.entries.push_back(e);
    }
    if (!header_seen) throw std::invalid_argument(path + ": missing header line");
    lib.validate();
    return lib;
}

void LensSpec::validate() const {
    if (!(focal_mm > 0.0))
        throw std::invalid_argument("lens: focal length must be > 0 mm (got " +
                                    std::to_string(focal_mm) + ")");
    if (!(cell_pitch_mm > 0.0))
        throw std::invalid_argument("lens: cell pitch must be > 0 mm");
    if (cells < 1 || cells % 2 == 0)
        throw std::invalid_argument("lens: cells per side must be a positive odd count (got " +
                                    std::to_string(cells) + ")");
    if (!(frequency_ghz > 0.0))
        throw std::invalid_argument("lens: frequency must be > 0 GHz");
}

double LensSpec::wavelength_mm() const { return wavelength_of(frequency_ghz); }

double required_phase(double x_mm, double y_mm, double focal_mm, double wavelength_mm) {
    if (!(focal_mm > 0.0))
        throw std::domain_error("required_phase: focal length must be > 0 mm");
    if (!(wavelength_mm > 0.0))
        throw std::domain_error("required_phase: wavelength must be > 0 mm");
    const double path = std::sqrt(x_mm * x_mm + y_mm * y_mm + focal_mm * focal_mm) - focal_mm;
    return wrap_deg(360.0 / wavelength_mm * path);
}

std::vector<ProfileSample> sample_profile(const LensSpec& spec) {
    spec.validate();
    const int h = (spec.cells - 1) / 2;
    const double lambda = spec.wavelength_mm();
    std::vector<ProfileSample> out;
    out.reserve(static_cast<size_t>(spec.cells) * spec.cells);
    for (int j = -h; j <= h; ++j)
        for (int i = -h; i <= h; ++i)
            out.push_back({i, j,
                           required_phase(spec.cell_center_mm(i), spec.cell_center_mm(j),
                                          spec.focal_mm, lambda)});
    return out;
}

int nearest_match_index(const UnitCellLibrary& library, double phase_deg) {
    library.validate();
    int best = 0;
    double best_d = circular_distance_deg(phase_deg, library.entries[0].phase_deg);
    for (int i = 1; i < static_cast<int>(library.entries.size()); ++i) {
        const double d = circular_distance_deg(phase_deg, library.entries[i].phase_deg);
        if (d < best_d ||
            (d == best_d && library.entries[i].magnitude > library.entries[best].magnitude)) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

const UnitCellEntry& nearest_match(const UnitCellLibrary& library, double phase_deg) {
    return library.entries[nearest_match_index(library, phase_deg)];
}

size_t QuantizedLens::flat(int i, int j) const {
    const int h = half();
    if (i < -h || i > h || j < -h || j > h)
        throw std::out_of_range("lens cell (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside +/-" + std::to_string(h));
    return static_cast<size_t>(j + h) * spec.cells + (i + h);
}

QuantizedLens build_quantized_lens(const LensSpec& spec, const UnitCellLibrary& library) {
    spec.validate();
    library.validate();
    QuantizedLens lens;
    lens.spec = spec;
    lens.library = library;
    const std::vector<ProfileSample> profile = sample_profile(spec);
    lens.ideal_phase_deg.reserve(profile.size());
    lens.cell_index.reserve(profile.size());
    for (const ProfileSample& s : profile) {
        lens.ideal_phase_deg.push_back(s.phase_deg);
        lens.cell_index.push_back(nearest_match_index(library, s.phase_deg));
    }
    return lens;
}

ApertureMask lens_to_mask(const QuantizedLens& lens, int samples_per_cell, MaskMode mode) {
    lens.spec.validate();
    if (samples_per_cell < 1)
        throw std::invalid_argument("lens_to_mask: samples_per_cell must be >= 1");
    const int n = lens.spec.cells;
    const int spc = samples_per_cell;
    const int m = n * spc;
    const int h = lens.half();
    const double lambda = lens.spec.wavelength_mm();

    ApertureMask mask(m, m, lens.spec.cell_pitch_mm / spc);
    for (int iy = 0; iy < m; ++iy) {
        const int cj = iy / spc - h;
        for (int ix = 0; ix < m; ++ix) {
            const int ci = ix / spc - h;
            cdouble t;
            if (mode == MaskMode::Ideal) {
                const double ph = deg2rad(required_phase(mask.x_mm(ix), mask.y_mm(iy),
                                                         lens.spec.focal_mm, lambda));
                t = cdouble(std::cos(ph), std::sin(ph));
            } else {
                const UnitCellEntry& e = lens.entry_at(ci, cj);
                const double ph = deg2rad(e.phase_deg);
                t = e.magnitude * cdouble(std::cos(ph), std::sin(ph));
            }
            mask.at(ix, iy) = t;
        }
    }
    return mask;
}

std::string lens_export_csv(const QuantizedLens& lens) {
    std::string out = "i,j,ideal_phase_deg,assigned_phase_deg,magnitude,r_mm,w_mm,g_mm,alpha_deg\n";
    const int h = lens.half();
    for (int j = -h; j <= h; ++j) {
        for (int i = -h; i <= h; ++i) {
            const UnitCellEntry& e = lens.entry_at(i, j);
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + fmt(lens.ideal_at(i, j)) +
                   ',' + fmt(e.phase_deg) + ',' + fmt(e.magnitude) + ',' + fmt(e.r_mm) + ',' +
                   fmt(e.w_mm) + ',' + fmt(e.g_mm) + ',' + fmt(e.alpha_deg) + '\n';
        }
    }
    return out;
}

}  // namespace retromark
