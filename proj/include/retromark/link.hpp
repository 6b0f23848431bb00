#pragma once

namespace retromark {

// Conducting sphere of the given diameter: sigma = pi*a^2, in dBsm.
double sphere_rcs(double diameter_m);

// Additive factor turning received power (dB) into dBsm. Pinned to the range
// it was measured at; queries elsewhere must say so and get the R^4 term.
struct CalibrationFactor {
    double factor_db = 0.0;
    double reference_range_m = 0.0;
    double reference_diameter_m = 0.0;  // informational, 0 if not from a sphere

    double apply(double received_power_db) const;  // at the reference range
    double apply_at_range(double received_power_db, double range_m) const;
};

CalibrationFactor calibrate(double received_power_db, double known_rcs_dbsm, double range_m);

// Monostatic RCS <-> aperture gain, exact inverses of each other.
double gain_from_rcs(double rcs_dbsm, double wavelength_m);
double rcs_from_gain(double gain_dbi, double wavelength_m);

// Loaded-minus-reference transmission plus the receive antenna's gain.
double realized_gain(double loaded_s21_db, double reference_s21_db,
                     double receive_antenna_gain_dbi);

struct SnrSample {
    double range_m = 0.0;
    double snr_db = 0.0;

    void validate() const;  // range > 0
};

// Point-target R^-4 law: anchor.snr - 40*log10(range/anchor.range).
double snr_at_range(const SnrSample& anchor, double range_m);

struct DetectionRange {
    double range_m = 0.0;
    bool extrapolated = false;  // beyond 2x the anchor range
};

DetectionRange detection_range(const SnrSample& anchor, double threshold_db = 10.0);

// Detection-range ratio bought by an SNR improvement: 10^(delta/40).
double range_factor(double delta_db);

}  // namespace retromark
