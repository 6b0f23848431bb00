#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "retromark/grid.hpp"

// Scalar Fourier-optics engine: angular-spectrum propagation between parallel
// planes, far-field patterns and focal-scan diagnostics.
//
// Conventions (fixed project-wide): time dependence e^{+jwt}; a forward
// plane wave is e^{-jkz}; propagation over dz multiplies the angular spectrum
// by e^{-j*dz*kz} with kz = sqrt(k^2 - kx^2 - ky^2). Evanescent components
// decay as e^{-|dz|*kappa} forward and are zeroed on back-propagation (dz < 0)
// rather than exponentially amplified.
namespace retromark {

namespace detail {
// FFTW's planner is process-global and not thread safe; every plan create and
// destroy in the project goes through this lock. Executing a plan is safe.
std::mutex& fftw_planner_mutex();
}  // namespace detail

struct PropagationPlan {
    /// FFT zero-padding factor; padded size = next fast FFT size >= n * factor.
    /// 1.0 transforms the grid as-is (caller has already provided guard band).
    double padding_factor = 2.0;
};

/// Angular-spectrum propagation of `field` by dz_mm (negative = backwards).
/// The output grid has the same geometry as the input.
FieldGrid propagate(const FieldGrid& field, double dz_mm, const PropagationPlan& plan = {});

/// Sum of |angular spectrum|^2 restricted to propagating components
/// (kx^2 + ky^2 < k^2), normalised so it is invariant under propagate().
double propagating_spectrum_power(const FieldGrid& field);

/// Far-field azimuth-cut pattern F(theta) = sum over samples of
/// field * e^{+j*k*sin(theta)*x} * pitch^2 (units mm^2); |theta| <= 90 deg.
cdouble far_field(const FieldGrid& field, double theta_deg);
std::vector<cdouble> far_field(const FieldGrid& field, const std::vector<double>& theta_deg);

/// Two-dimensional generalisation: direction (sin t cos p, sin t sin p).
cdouble far_field_2d(const FieldGrid& field, double theta_deg, double phi_deg);

/// What surrounds the masked aperture in a focal scan: Transparent keeps the
/// unit plane wave outside the mask (device floating in free space), Opaque
/// blocks it (device mounted in a screen).
enum class Surround { Transparent, Opaque };

struct FocalScanResult {
    std::vector<double> z_mm;
    std::vector<double> on_axis_intensity;  // normalised to incident intensity
    double peak_z_mm = 0.0;
    double peak_intensity = 0.0;

    // x-z intensity slice through the aperture centre row, one row per z
    // (slice_intensity[iz * slice_nx + ix]); for field-distribution plots.
    int slice_nx = 0;
    double slice_pitch_mm = 0.0;
    std::vector<double> slice_intensity;
};

/// Illuminate `mask` with a unit plane wave and record on-axis intensity at
/// `steps` evenly spaced planes z in [z_min, z_max] mm beyond the mask.
FocalScanResult focal_scan(const ApertureMask& mask, double wavelength_mm,
                           double z_min_mm, double z_max_mm, int steps,
                           const PropagationPlan& plan = {},
                           Surround surround = Surround::Transparent);

}  // namespace retromark
