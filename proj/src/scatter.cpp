#include "retromark/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "retromark/units.hpp"

namespace retromark {

void PatchPlaneSpec::validate() const {
    if (!(patch_length_mm > 0.0) || !(patch_width_mm > 0.0))
        throw std::invalid_argument("patch plane: patch dimensions must be > 0 mm");
    if (!(period_mm > std::max(patch_length_mm, patch_width_mm)))
        throw std::invalid_argument("patch plane: period " + std::to_string(period_mm) +
                                    " mm must exceed the patch dimensions");
    if (!(extent_x_mm > 0.0) || !(extent_y_mm > 0.0))
        throw std::invalid_argument("patch plane: extents must be > 0 mm");
}

cdouble patch_reflection_at(const PatchPlaneSpec& spec, double x_mm, double y_mm) {
    if (std::fabs(x_mm) > 0.5 * spec.extent_x_mm || std::fabs(y_mm) > 0.5 * spec.extent_y_mm)
        return {0.0, 0.0};
    const double dx = x_mm - spec.period_mm * std::round(x_mm / spec.period_mm);
    const double dy = y_mm - spec.period_mm * std::round(y_mm / spec.period_mm);
    const bool on_patch =
        std::fabs(dx) <= 0.5 * spec.patch_length_mm && std::fabs(dy) <= 0.5 * spec.patch_width_mm;
    return on_patch ? spec.patch_reflection : spec.ground_reflection;
}

void TagAssembly::validate() const {
    patch.validate();
    if (!(separation_mm > 0.0))
        throw std::invalid_argument("assembly: separation must be > 0 mm");
    if (!(board_x_mm > 0.0) || !(board_y_mm > 0.0))
        throw std::invalid_argument("assembly: board extents must be > 0 mm");
    if (!(frequency_ghz > 0.0))
        throw std::invalid_argument("assembly: frequency must be > 0 GHz");
    if (lens.nx < 1 || lens.ny < 1)
        throw std::invalid_argument("assembly: empty lens mask");
    const double eps = 1e-9;
    if (lens.nx * lens.pitch_mm > board_x_mm + eps || lens.ny * lens.pitch_mm > board_y_mm + eps)
        throw std::invalid_argument("assembly: lens aperture (" +
                                    std::to_string(lens.nx * lens.pitch_mm) + " x " +
                                    std::to_string(lens.ny * lens.pitch_mm) +
                                    " mm) does not fit the board");
}

double TagAssembly::wavelength_mm() const { return wavelength_of(frequency_ghz); }

TagAssembly make_plate_oracle(double size_mm, double pitch_mm, double frequency_ghz) {
    if (!(size_mm > 0.0) || !(pitch_mm > 0.0))
        throw std::invalid_argument("plate oracle: size and pitch must be > 0 mm");
    const int n = static_cast<int>(std::lround(size_mm / pitch_mm));
    if (n < 1) throw std::invalid_argument("plate oracle: size smaller than one sample");

    TagAssembly tag;
    tag.lens = ApertureMask(n, n, pitch_mm);
    std::fill(tag.lens.transmission.begin(), tag.lens.transmission.end(), cdouble(1.0, 0.0));
    // Snap the board to the realised aperture so the covered area is exact.
    tag.board_x_mm = tag.board_y_mm = n * pitch_mm;
    tag.patch.extent_x_mm = tag.patch.extent_y_mm = n * pitch_mm;
    tag.patch.patch_reflection = tag.patch.ground_reflection = cdouble(1.0, 0.0);
    tag.frequency_ghz = frequency_ghz;
    return tag;
}

namespace {

// Window-sized masks shared by every angle of a sweep.
struct ChainContext {
    int n = 0;  // square window, n x n samples
    double pitch_mm = 0.0;
    double wavelength_mm = 0.0;
    double separation_mm = 0.0;
    ChainMode mode = ChainMode::FullTag;
    std::vector<cdouble> lens_win;
    std::vector<cdouble> patch_win;
};

int next_fast_size(int n) {
    for (int s = n;; ++s) {
        int r = s;
        while (r % 2 == 0) r /= 2;
        while (r % 3 == 0) r /= 3;
        while (r % 5 == 0) r /= 5;
        if (r == 1) return s;
    }
}

ChainContext make_context(const TagAssembly& tag, ChainMode mode, const SimulationWindow& window) {
    tag.validate();
    if (!(window.window_factor >= 1.0))
        throw std::invalid_argument("sweep window: window_factor must be >= 1");
    const double lambda = tag.wavelength_mm();
    const double pitch = tag.lens.pitch_mm;
    if (!(pitch <= 0.5 * lambda))
        throw std::domain_error("sweep window: lens mask pitch exceeds lambda/2");

    const double span = std::max(tag.board_x_mm, tag.board_y_mm) * window.window_factor;
    int n = std::max({static_cast<int>(std::ceil(span / pitch)), tag.lens.nx, tag.lens.ny});
    // Keep the embed centred: window parity must match the lens grid's.
    n = next_fast_size(n);
    while ((n - tag.lens.nx) % 2 != 0 || (n - tag.lens.ny) % 2 != 0)
        n = next_fast_size(n + 1);

    ChainContext ctx;
    ctx.n = n;
    ctx.pitch_mm = pitch;
    ctx.wavelength_mm = lambda;
    ctx.separation_mm = tag.separation_mm;
    ctx.mode = mode;

    ctx.lens_win.assign(static_cast<size_t>(n) * n, cdouble(0.0, 0.0));
    const int ox = (n - tag.lens.nx) / 2;
    const int oy = (n - tag.lens.ny) / 2;
    for (int iy = 0; iy < tag.lens.ny; ++iy)
        std::copy_n(tag.lens.transmission.begin() + static_cast<size_t>(iy) * tag.lens.nx,
                    tag.lens.nx, ctx.lens_win.begin() + (static_cast<size_t>(iy + oy) * n + ox));

    ctx.patch_win.resize(static_cast<size_t>(n) * n);
    ApertureMask coords(n, n, pitch);  // for the centred coordinate convention
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            ctx.patch_win[static_cast<size_t>(iy) * n + ix] =
                patch_reflection_at(tag.patch, coords.x_mm(ix), coords.y_mm(iy));
    return ctx;
}

cdouble amplitude_at(const ChainContext& ctx, double theta_deg) {
    if (!(std::fabs(theta_deg) <= 90.0))
        throw std::domain_error("monostatic_amplitude: |theta| must be <= 90 deg (got " +
                                std::to_string(theta_deg) + ")");

    FieldGrid u(ctx.n, ctx.n, ctx.pitch_mm, ctx.wavelength_mm);
    const double ks = 2.0 * kPi / ctx.wavelength_mm * std::sin(deg2rad(theta_deg));
    std::vector<cdouble> row(ctx.n);
    for (int ix = 0; ix < ctx.n; ++ix) {
        const double ph = -ks * u.x_mm(ix);
        row[ix] = cdouble(std::cos(ph), std::sin(ph));
    }

    const PropagationPlan unpadded{1.0};  // the window margin is the guard band
    if (ctx.mode == ChainMode::PatchOnly) {
        for (int iy = 0; iy < ctx.n; ++iy)
            for (int ix = 0; ix < ctx.n; ++ix)
                u.at(ix, iy) = row[ix] * ctx.patch_win[static_cast<size_t>(iy) * ctx.n + ix];
        return far_field(u, -theta_deg);
    }

    for (int iy = 0; iy < ctx.n; ++iy)
        for (int ix = 0; ix < ctx.n; ++ix)
            u.at(ix, iy) = row[ix] * ctx.lens_win[static_cast<size_t>(iy) * ctx.n + ix];
    u = propagate(u, ctx.separation_mm, unpadded);
    for (size_t s = 0; s < u.samples.size(); ++s) u.samples[s] *= ctx.patch_win[s];
    // Return leg: the reflected wave re-crosses the same gap; the forward
    // transfer function with the far field read out at -theta keeps the
    // focal-plane-mirror configuration exactly retroreflective.
    u = propagate(u, ctx.separation_mm, unpadded);
    for (size_t s = 0; s < u.samples.size(); ++s) u.samples[s] *= ctx.lens_win[s];
    return far_field(u, -theta_deg);
}

}  // namespace

cdouble monostatic_amplitude(const TagAssembly& tag, double theta_deg, ChainMode mode,
                             const SimulationWindow& window) {
    return amplitude_at(make_context(tag, mode, window), theta_deg);
}

double rcs_from_amplitude(cdouble amplitude_mm2, double wavelength_mm) {
    if (!std::isfinite(amplitude_mm2.real()) || !std::isfinite(amplitude_mm2.imag()))
        throw std::invalid_argument("rcs_from_amplitude: non-finite amplitude");
    if (!(wavelength_mm > 0.0))
        throw std::domain_error("rcs_from_amplitude: wavelength must be > 0 mm");
    // |A|^2 in mm^4 over lambda^2 in mm^2 leaves mm^2; 1e-6 converts to m^2.
    const double sigma_m2 =
        4.0 * kPi / (wavelength_mm * wavelength_mm) * std::norm(amplitude_mm2) * 1e-6;
    if (sigma_m2 <= 0.0) return kRcsFloor_dbsm;
    return std::max(db_from_power(sigma_m2), kRcsFloor_dbsm);
}

RcsSweep sweep_rcs(const TagAssembly& tag, ChainMode mode, double theta_min_deg,
                   double theta_max_deg, double step_deg, const SimulationWindow& window,
                   int threads) {
    if (!(step_deg > 0.0)) throw std::invalid_argument("sweep_rcs: step must be > 0 deg");
    if (!(theta_max_deg >= theta_min_deg))
        throw std::invalid_argument("sweep_rcs: angle range is reversed");
    if (threads < 1) throw std::invalid_argument("sweep_rcs: threads must be >= 1");

    const ChainContext ctx = make_context(tag, mode, window);

    RcsSweep sweep;
    sweep.frequency_ghz = tag.frequency_ghz;
    for (int i = 0;; ++i) {
        const double theta = theta_min_deg + i * step_deg;
        if (theta > theta_max_deg + step_deg * 1e-9) break;
        sweep.theta_deg.push_back(theta);
    }
    sweep.rcs_dbsm.assign(sweep.theta_deg.size(), 0.0);

    const int count = static_cast<int>(sweep.theta_deg.size());
    const int workers = std::min(threads, count);
    auto run = [&](int first) {
        for (int i = first; i < count; i += workers)
            sweep.rcs_dbsm[i] =
                rcs_from_amplitude(amplitude_at(ctx, sweep.theta_deg[i]), ctx.wavelength_mm);
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (std::thread& t : pool) t.join();
    }
    return sweep;
}

std::vector<double> bragg_angles(double d_mm, double wavelength_mm,
                                 const std::vector<int>& orders) {
    if (!(d_mm > 0.0)) throw std::invalid_argument("bragg_angles: period must be > 0 mm");
    if (!(wavelength_mm > 0.0))
        throw std::invalid_argument("bragg_angles: wavelength must be > 0 mm");
    std::vector<double> out;
    for (int m : orders) {
        const double s = m * wavelength_mm / (2.0 * d_mm);
        if (std::fabs(s) <= 1.0) out.push_back(rad2deg(std::asin(s)));
    }
    return out;
}

SweepStats sweep_stats(const RcsSweep& sweep, double coverage_deg) {
    if (sweep.theta_deg.empty() || sweep.theta_deg.size() != sweep.rcs_dbsm.size())
        throw std::invalid_argument("sweep_stats: malformed sweep");
    if (!(coverage_deg > 0.0)) throw std::invalid_argument("sweep_stats: coverage must be > 0 deg");
    const double half = 0.5 * coverage_deg;
    const double eps = 1e-9;
    if (sweep.theta_deg.front() > -half + eps || sweep.theta_deg.back() < half - eps)
        throw std::invalid_argument("sweep_stats: coverage +/-" + std::to_string(half) +
                                    " deg exceeds the sweep range");

    std::vector<double> sel;
    for (size_t i = 0; i < sweep.theta_deg.size(); ++i)
        if (std::fabs(sweep.theta_deg[i]) <= half + eps) sel.push_back(sweep.rcs_dbsm[i]);
    if (sel.empty()) throw std::invalid_argument("sweep_stats: no samples inside the coverage");

    SweepStats st;
    st.peak_dbsm = *std::max_element(sel.begin(), sel.end());
    double sum = 0.0;
    for (double v : sel) sum += v;
    st.mean_dbsm = sum / sel.size();
    double dev = 0.0;
    for (double v : sel) dev = std::max(dev, std::fabs(v - st.mean_dbsm));
    st.variation_db = dev;
    std::sort(sel.begin(), sel.end());
    const size_t n = sel.size();
    st.median_dbsm = (n % 2 == 1) ? sel[n / 2] : 0.5 * (sel[n / 2 - 1] + sel[n / 2]);
    return st;
}

}  // namespace retromark
