#pragma once

#include <vector>

#include "retromark/grid.hpp"
#include "retromark/propagation.hpp"

namespace retromark {

// Periodic rectangular-patch reflector backed by ground plane, modeled as a
// scalar reflection mask: patch footprints reflect with one coefficient, the
// exposed ground in between with another.
struct PatchPlaneSpec {
    double patch_length_mm = 0.84;  // along x (E-plane, the sweep plane)
    double patch_width_mm = 1.28;   // along y
    double period_mm = 2.48;        // centre-to-centre, square lattice
    double extent_x_mm = 53.0;
    double extent_y_mm = 53.0;
    cdouble patch_reflection{1.0, 0.0};
    cdouble ground_reflection{1.0, 0.0};

    void validate() const;  // period > patch dims, extents positive
};

// Pointwise reflection coefficient of the patch plane; 0 outside the extent.
cdouble patch_reflection_at(const PatchPlaneSpec& spec, double x_mm, double y_mm);

// Lens layer in front of a patch plane at a fixed standoff. The lens mask is
// the bare-aperture transmission grid (its pitch sets the simulation pitch);
// everything on the board outside the lens aperture is treated as opaque.
struct TagAssembly {
    ApertureMask lens;
    PatchPlaneSpec patch;
    double separation_mm = 20.0;
    double board_x_mm = 53.0;
    double board_y_mm = 53.0;
    double frequency_ghz = 78.5;

    void validate() const;  // separation > 0, lens fits the board
    double wavelength_mm() const;
};

// Uniform reflecting plate of the given size: unity lens over the full board,
// patch plane with both coefficients 1. Closed-form RCS check target.
TagAssembly make_plate_oracle(double size_mm, double pitch_mm, double frequency_ghz);

enum class ChainMode {
    FullTag,    // lens -> patch plane -> lens round trip
    PatchOnly,  // bare patch board, single reflection
};

// Simulation window around the board; the margin doubles as the guard band,
// so the propagation steps inside run unpadded.
struct SimulationWindow {
    double window_factor = 2.0;  // window span = board extent * factor
};

// Complex monostatic backscatter amplitude (mm^2) at incidence angle theta.
// Tilted plane wave in, same direction out; |theta| >= 90 is a domain error.
cdouble monostatic_amplitude(const TagAssembly& tag, double theta_deg,
                             ChainMode mode = ChainMode::FullTag,
                             const SimulationWindow& window = {});

// sigma = (4*pi/lambda^2)|A|^2 converted to square metres, in dBsm.
// Zero amplitude maps to the -200 dBsm floor.
double rcs_from_amplitude(cdouble amplitude_mm2, double wavelength_mm);

constexpr double kRcsFloor_dbsm = -200.0;

struct RcsSweep {
    std::vector<double> theta_deg;  // strictly increasing
    std::vector<double> rcs_dbsm;
    double frequency_ghz = 0.0;
};

RcsSweep sweep_rcs(const TagAssembly& tag, ChainMode mode, double theta_min_deg,
                   double theta_max_deg, double step_deg,
                   const SimulationWindow& window = {}, int threads = 1);

// theta_m = arcsin(m*lambda/(2d)) in degrees for each order with
// |m*lambda/(2d)| <= 1; out-of-range orders are dropped.
std::vector<double> bragg_angles(double d_mm, double wavelength_mm,
                                 const std::vector<int>& orders);

struct SweepStats {
    double peak_dbsm = 0.0;
    double median_dbsm = 0.0;
    double variation_db = 0.0;  // max deviation from the mean
    double mean_dbsm = 0.0;
};

// Statistics over angles in [-coverage/2, +coverage/2]; the interval must lie
// within the sweep and select at least one sample.
SweepStats sweep_stats(const RcsSweep& sweep, double coverage_deg);

}  // namespace retromark
