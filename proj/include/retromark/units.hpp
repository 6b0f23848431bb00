#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Shared constants and unit conversions. Geometry is carried in millimetres
// and frequencies in gigahertz throughout the toolkit; metres appear only
// inside RCS / link-budget formulas. The speed of light is the exact SI
// value, never 3e8.
namespace retromark {

inline constexpr double kSpeedOfLight_m_per_s = 299792458.0;

// c expressed so that wavelength_mm = kSpeedOfLight_mm_GHz / frequency_GHz.
inline constexpr double kSpeedOfLight_mm_GHz = 299.792458;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kMetersPerInch = 0.0254;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Free-space wavelength in mm for a frequency in GHz.
inline double wavelength_of(double frequency_ghz) {
    if (!(frequency_ghz > 0.0))
        throw std::domain_error("wavelength_of: frequency must be > 0 GHz (got " +
                                std::to_string(frequency_ghz) + ")");
    return kSpeedOfLight_mm_GHz / frequency_ghz;
}

// Power-like quantities (RCS, SNR, spectral power): 10*log10.
inline double db_from_power(double linear) { return 10.0 * std::log10(linear); }
inline double power_from_db(double db) { return std::pow(10.0, db / 10.0); }

// Field-like quantities (complex amplitudes): 20*log10.
inline double db_from_amplitude(double linear) { return 20.0 * std::log10(linear); }
inline double amplitude_from_db(double db) { return std::pow(10.0, db / 20.0); }

/// Wrap an angle in degrees to [0, 360).
inline double wrap_deg(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    // fmod of a tiny negative value can round back up to exactly 360.
    if (w >= 360.0) w = 0.0;
    return w;
}

/// Circular distance between two phases in degrees, in [0, 180].
inline double circular_distance_deg(double a_deg, double b_deg) {
    double d = std::fabs(wrap_deg(a_deg) - wrap_deg(b_deg));
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace retromark
