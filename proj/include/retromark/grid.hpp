#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace retromark {

using cdouble = std::complex<double>;

/// Complex scalar field sampled on a uniform 2-D grid at a fixed wavelength.
/// Samples are row-major (iy * nx + ix); the grid is centred on the optical
/// axis: sample (ix, iy) sits at ((ix - (nx-1)/2) * pitch, (iy - (ny-1)/2) * pitch).
/// Incident plane waves are normalised to unit amplitude, so |sample|^2 is the
/// intensity relative to the incident intensity.
struct FieldGrid {
    int nx = 0;
    int ny = 0;
    double pitch_mm = 0.0;
    double wavelength_mm = 0.0;
    std::vector<cdouble> samples;

    FieldGrid() = default;
    FieldGrid(int nx_, int ny_, double pitch, double wavelength)
        : nx(nx_), ny(ny_), pitch_mm(pitch), wavelength_mm(wavelength) {
        if (nx < 1 || ny < 1)
            throw std::invalid_argument("FieldGrid: dimensions must be >= 1");
        if (!(pitch_mm > 0.0))
            throw std::invalid_argument("FieldGrid: pitch must be > 0 mm");
        if (!(wavelength_mm > 0.0))
            throw std::invalid_argument("FieldGrid: wavelength must be > 0 mm");
        samples.assign(static_cast<size_t>(nx) * ny, cdouble(0.0, 0.0));
    }

    cdouble& at(int ix, int iy) { return samples[static_cast<size_t>(iy) * nx + ix]; }
    const cdouble& at(int ix, int iy) const { return samples[static_cast<size_t>(iy) * nx + ix]; }

    double x_mm(int ix) const { return (ix - 0.5 * (nx - 1)) * pitch_mm; }
    double y_mm(int iy) const { return (iy - 0.5 * (ny - 1)) * pitch_mm; }

    /// Half the propagating-spectrum Nyquist criterion: pitch <= lambda/2.
    bool nyquist_ok() const { return pitch_mm <= 0.5 * wavelength_mm; }

    /// Sum of |sample|^2 * pitch^2 (mm^2 units of area times intensity).
    double total_power() const {
        double acc = 0.0;
        for (const cdouble& s : samples) acc += std::norm(s);
        return acc * pitch_mm * pitch_mm;
    }
};

/// Complex transmission (or reflection) coefficient on a uniform grid; same
/// layout and centring conventions as FieldGrid but carries no wavelength.
struct ApertureMask {
    int nx = 0;
    int ny = 0;
    double pitch_mm = 0.0;
    std::vector<cdouble> transmission;

    ApertureMask() = default;
    ApertureMask(int nx_, int ny_, double pitch)
        : nx(nx_), ny(ny_), pitch_mm(pitch) {
        if (nx < 1 || ny < 1)
            throw std::invalid_argument("ApertureMask: dimensions must be >= 1");
        if (!(pitch_mm > 0.0))
            throw std::invalid_argument("ApertureMask: pitch must be > 0 mm");
        transmission.assign(static_cast<size_t>(nx) * ny, cdouble(0.0, 0.0));
    }

    cdouble& at(int ix, int iy) { return transmission[static_cast<size_t>(iy) * nx + ix]; }
    const cdouble& at(int ix, int iy) const {
        return transmission[static_cast<size_t>(iy) * nx + ix];
    }

    double x_mm(int ix) const { return (ix - 0.5 * (nx - 1)) * pitch_mm; }
    double y_mm(int iy) const { return (iy - 0.5 * (ny - 1)) * pitch_mm; }

    /// Field after a unit plane wave at normal incidence passes the mask.
    FieldGrid illuminate(double wavelength_mm) const {
        FieldGrid f(nx, ny, pitch_mm, wavelength_mm);
        f.samples = transmission;
        return f;
    }
};

}  // namespace retromark
