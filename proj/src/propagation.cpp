#include "retromark/propagation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "retromark/units.hpp"

namespace retromark {

namespace detail {
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

namespace {

using detail::fftw_planner_mutex;

// Smallest 2^a*3^b*5^c >= n. FFTW handles any size, but 5-smooth sizes keep
// the transforms fast and the padded grids predictable.
int next_fast_size(int n) {
    for (int s = n;; ++s) {
        int r = s;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return s;
    }
}

struct Fft2 {
    int nx, ny;
    std::vector<cdouble> buf;
    fftw_plan fwd, inv;

    Fft2(int nx_, int ny_) : nx(nx_), ny(ny_), buf(static_cast<size_t>(nx_) * ny_) {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_2d(ny, nx, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        inv = fftw_plan_dft_2d(ny, nx, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !inv) throw std::runtime_error("propagate: FFTW plan creation failed");
    }
    ~Fft2() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    Fft2(const Fft2&) = delete;
    Fft2& operator=(const Fft2&) = delete;

    void forward() { fftw_execute(fwd); }
    void inverse() { fftw_execute(inv); }  // unnormalised; caller divides by nx*ny
};

// Signed frequency index for FFT bin i of an n-point transform.
inline int freq_index(int i, int n) { return (i <= n / 2) ? i : i - n; }

// Multiply an FFT-ordered spectrum by the free-space transfer function for a
// step of dz_mm. Propagating components get the exact phase e^{-j*dz*kz};
// evanescent ones decay forward and are zeroed on back-propagation.
void apply_transfer(std::vector<cdouble>& spec, int nx, int ny, double pitch_mm,
                    double wavelength_mm, double dz_mm) {
    const double k = 2.0 * kPi / wavelength_mm;
    const double k2 = k * k;
    const double dfx = 1.0 / (nx * pitch_mm);
    const double dfy = 1.0 / (ny * pitch_mm);
    for (int iy = 0; iy < ny; ++iy) {
        const double ky = 2.0 * kPi * freq_index(iy, ny) * dfy;
        const double ky2 = ky * ky;
        for (int ix = 0; ix < nx; ++ix) {
            const double kx = 2.0 * kPi * freq_index(ix, nx) * dfx;
            const double kz2 = k2 - kx * kx - ky2;
            cdouble h;
            if (kz2 > 0.0) {
                const double ph = -dz_mm * std::sqrt(kz2);
                h = cdouble(std::cos(ph), std::sin(ph));
            } else if (dz_mm >= 0.0) {
                h = cdouble(std::exp(-dz_mm * std::sqrt(-kz2)), 0.0);
            } else {
                h = cdouble(0.0, 0.0);
            }
            spec[static_cast<size_t>(iy) * nx + ix] *= h;
        }
    }
}

int padded_size(int n, double factor) {
    int p = next_fast_size(static_cast<int>(std::ceil(n * factor)));
    while ((p - n) % 2 != 0) p = next_fast_size(p + 1);  // keep the embed centred
    return p;
}

void check_field(const FieldGrid& field) {
    if (field.nx < 1 || field.ny < 1 || field.samples.size() != static_cast<size_t>(field.nx) * field.ny)
        throw std::invalid_argument("propagation: malformed field grid");
    if (!field.nyquist_ok())
        throw std::domain_error("propagation: grid pitch exceeds lambda/2 (" +
                                std::to_string(field.pitch_mm) + " mm at lambda " +
                                std::to_string(field.wavelength_mm) + " mm)");
}

}  // namespace

FieldGrid propagate(const FieldGrid& field, double dz_mm, const PropagationPlan& plan) {
    check_field(field);
    if (!(plan.padding_factor >= 1.0))
        throw std::invalid_argument("propagate: padding factor must be >= 1");

    const int px = padded_size(field.nx, plan.padding_factor);
    const int py = padded_size(field.ny, plan.padding_factor);
    const int ox = (px - field.nx) / 2;
    const int oy = (py - field.ny) / 2;

    Fft2 fft(px, py);
    if (px == field.nx && py == field.ny) {
        fft.buf = field.samples;
    } else {
        std::fill(fft.buf.begin(), fft.buf.end(), cdouble(0.0, 0.0));
        for (int iy = 0; iy < field.ny; ++iy)
            std::copy_n(field.samples.begin() + static_cast<size_t>(iy) * field.nx, field.nx,
                        fft.buf.begin() + (static_cast<size_t>(iy + oy) * px + ox));
    }

    fft.forward();
    apply_transfer(fft.buf, px, py, field.pitch_mm, field.wavelength_mm, dz_mm);
    fft.inverse();

    FieldGrid out(field.nx, field.ny, field.pitch_mm, field.wavelength_mm);
    const double scale = 1.0 / (static_cast<double>(px) * py);
    for (int iy = 0; iy < field.ny; ++iy)
        for (int ix = 0; ix < field.nx; ++ix)
            out.at(ix, iy) = fft.buf[static_cast<size_t>(iy + oy) * px + ox + ix] * scale;
    return out;
}

double propagating_spectrum_power(const FieldGrid& field) {
    check_field(field);
    Fft2 fft(field.nx, field.ny);
    fft.buf = field.samples;
    fft.forward();

    const double k2 = std::pow(2.0 * kPi / field.wavelength_mm, 2);
    const double dfx = 1.0 / (field.nx * field.pitch_mm);
    const double dfy = 1.0 / (field.ny * field.pitch_mm);
    double acc = 0.0;
    for (int iy = 0; iy < field.ny; ++iy) {
        const double ky = 2.0 * kPi * freq_index(iy, field.ny) * dfy;
        for (int ix = 0; ix < field.nx; ++ix) {
            const double kx = 2.0 * kPi * freq_index(ix, field.nx) * dfx;
            if (k2 - kx * kx - ky * ky > 0.0)
                acc += std::norm(fft.buf[static_cast<size_t>(iy) * field.nx + ix]);
        }
    }
    return acc / (static_cast<double>(field.nx) * field.ny);
}

namespace {

void check_far_field_args(const FieldGrid& field, double theta_deg) {
    check_field(field);
    if (!(std::fabs(theta_deg) <= 90.0))
        throw std::domain_error("far_field: |theta| must be <= 90 deg (got " +
                                std::to_string(theta_deg) + ")");
}

// Column sums over y collapse the azimuth-cut pattern to a 1-D phase sum.
std::vector<cdouble> column_sums(const FieldGrid& field) {
    std::vector<cdouble> col(field.nx, cdouble(0.0, 0.0));
    for (int iy = 0; iy < field.ny; ++iy)
        for (int ix = 0; ix < field.nx; ++ix) col[ix] += field.at(ix, iy);
    return col;
}

cdouble pattern_from_columns(const std::vector<cdouble>& col, const FieldGrid& field,
                             double theta_deg) {
    const double ks = 2.0 * kPi / field.wavelength_mm * std::sin(deg2rad(theta_deg));
    cdouble acc(0.0, 0.0);
    for (int ix = 0; ix < field.nx; ++ix) {
        const double ph = ks * field.x_mm(ix);
        acc += col[ix] * cdouble(std::cos(ph), std::sin(ph));
    }
    return acc * (field.pitch_mm * field.pitch_mm);
}

}  // namespace

cdouble far_field(const FieldGrid& field, double theta_deg) {
    check_far_field_args(field, theta_deg);
    return pattern_from_columns(column_sums(field), field, theta_deg);
}

std::vector<cdouble> far_field(const FieldGrid& field, const std::vector<double>& theta_deg) {
    check_field(field);
    for (double t : theta_deg)
        if (!(std::fabs(t) <= 90.0))
            throw std::domain_error("far_field: |theta| must be <= 90 deg");
    const std::vector<cdouble> col = column_sums(field);
    std::vector<cdouble> out;
    out.reserve(theta_deg.size());
    for (double t : theta_deg) out.push_back(pattern_from_columns(col, field, t));
    return out;
}

cdouble far_field_2d(const FieldGrid& field, double theta_deg, double phi_deg) {
    check_far_field_args(field, theta_deg);
    const double k = 2.0 * kPi / field.wavelength_mm;
    const double st = std::sin(deg2rad(theta_deg));
    const double kx = k * st * std::cos(deg2rad(phi_deg));
    const double ky = k * st * std::sin(deg2rad(phi_deg));
    cdouble acc(0.0, 0.0);
    for (int iy = 0; iy < field.ny; ++iy) {
        const double phy = ky * field.y_mm(iy);
        const cdouble ey(std::cos(phy), std::sin(phy));
        cdouble row(0.0, 0.0);
        for (int ix = 0; ix < field.nx; ++ix) {
            const double phx = kx * field.x_mm(ix);
            row += field.at(ix, iy) * cdouble(std::cos(phx), std::sin(phx));
        }
        acc += row * ey;
    }
    return acc * (field.pitch_mm * field.pitch_mm);
}

FocalScanResult focal_scan(const ApertureMask& mask, double wavelength_mm, double z_min_mm,
                           double z_max_mm, int steps, const PropagationPlan& plan,
                           Surround surround) {
    if (mask.nx < 1 || mask.ny < 1)
        throw std::invalid_argument("focal_scan: empty mask");
    if (!(z_min_mm > 0.0) || !(z_max_mm > z_min_mm))
        throw std::invalid_argument("focal_scan: need 0 < z_min < z_max (got " +
                                    std::to_string(z_min_mm) + ".." + std::to_string(z_max_mm) + ")");
    if (steps < 2) throw std::invalid_argument("focal_scan: steps must be >= 2");
    if (!(plan.padding_factor >= 1.0))
        throw std::invalid_argument("focal_scan: padding factor must be >= 1");
    if (!(mask.pitch_mm <= 0.5 * wavelength_mm))
        throw std::domain_error("focal_scan: mask pitch exceeds lambda/2");

    const int px = padded_size(mask.nx, plan.padding_factor);
    const int py = padded_size(mask.ny, plan.padding_factor);
    const int ox = (px - mask.nx) / 2;
    const int oy = (py - mask.ny) / 2;

    // Unit plane wave through the mask; the surround is either the untouched
    // incident wave (free-standing device) or an opaque screen.
    Fft2 fft(px, py);
    const cdouble fill = (surround == Surround::Transparent) ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
    std::fill(fft.buf.begin(), fft.buf.end(), fill);
    for (int iy = 0; iy < mask.ny; ++iy)
        std::copy_n(mask.transmission.begin() + static_cast<size_t>(iy) * mask.nx, mask.nx,
                    fft.buf.begin() + (static_cast<size_t>(iy + oy) * px + ox));
    fft.forward();
    const std::vector<cdouble> spectrum = fft.buf;

    FocalScanResult res;
    res.z_mm.resize(steps);
    res.on_axis_intensity.resize(steps);
    res.slice_nx = mask.nx;
    res.slice_pitch_mm = mask.pitch_mm;
    res.slice_intensity.resize(static_cast<size_t>(steps) * mask.nx);

    const int cx = ox + mask.nx / 2;  // grid centre sample, no interpolation
    const int cy = oy + mask.ny / 2;
    const double scale = 1.0 / (static_cast<double>(px) * py);
    res.peak_intensity = -1.0;
    for (int iz = 0; iz < steps; ++iz) {
        const double z = z_min_mm + (z_max_mm - z_min_mm) * iz / (steps - 1);
        fft.buf = spectrum;
        apply_transfer(fft.buf, px, py, mask.pitch_mm, wavelength_mm, z);
        fft.inverse();

        const double inten = std::norm(fft.buf[static_cast<size_t>(cy) * px + cx] * scale);
        res.z_mm[iz] = z;
        res.on_axis_intensity[iz] = inten;
        for (int ix = 0; ix < mask.nx; ++ix)
            res.slice_intensity[static_cast<size_t>(iz) * mask.nx + ix] =
                std::norm(fft.buf[static_cast<size_t>(cy) * px + ox + ix] * scale);
        if (inten > res.peak_intensity) {
            res.peak_intensity = inten;
            res.peak_z_mm = z;
        }
    }
    return res;
}

}  // namespace retromark
