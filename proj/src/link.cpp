#include "retromark/link.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "retromark/units.hpp"

namespace retromark {

double sphere_rcs(double diameter_m) {
    if (!(diameter_m > 0.0))
        throw std::domain_error("sphere_rcs: diameter must be > 0 m (got " +
                                std::to_string(diameter_m) + ")");
    const double a = 0.5 * diameter_m;
    return db_from_power(kPi * a * a);
}

double CalibrationFactor::apply(double received_power_db) const {
    return received_power_db + factor_db;
}

double CalibrationFactor::apply_at_range(double received_power_db, double range_m) const {
    if (!(range_m > 0.0) || !(reference_range_m > 0.0))
        throw std::domain_error("calibration: ranges must be > 0 m");
    // R^4 spreading: the same target returns 40*log10(R/R0) less power here.
    return received_power_db + factor_db + 40.0 * std::log10(range_m / reference_range_m);
}

CalibrationFactor calibrate(double received_power_db, double known_rcs_dbsm, double range_m) {
    if (!(range_m > 0.0)) throw std::domain_error("calibrate: range must be > 0 m");
    CalibrationFactor cal;
    cal.factor_db = known_rcs_dbsm - received_power_db;
    cal.reference_range_m = range_m;
    return cal;
}

double gain_from_rcs(double rcs_dbsm, double wavelength_m) {
    if (!(wavelength_m > 0.0))
        throw std::domain_error("gain_from_rcs: wavelength must be > 0 m");
    return 0.5 * (rcs_dbsm - 20.0 * std::log10(wavelength_m) + 10.0 * std::log10(4.0 * kPi));
}

double rcs_from_gain(double gain_dbi, double wavelength_m) {
    if (!(wavelength_m > 0.0))
        throw std::domain_error("rcs_from_gain: wavelength must be > 0 m");
    return 2.0 * gain_dbi + 20.0 * std::log10(wavelength_m) - 10.0 * std::log10(4.0 * kPi);
}

double realized_gain(double loaded_s21_db, double reference_s21_db,
                     double receive_antenna_gain_dbi) {
    return loaded_s21_db - reference_s21_db + receive_antenna_gain_dbi;
}

void SnrSample::validate() const {
    if (!(range_m > 0.0))
        throw std::invalid_argument("SNR sample: range must be > 0 m (got " +
                                    std::to_string(range_m) + ")");
}

double snr_at_range(const SnrSample& anchor, double range_m) {
    anchor.validate();
    if (!(range_m > 0.0)) throw std::domain_error("snr_at_range: range must be > 0 m");
    return anchor.snr_db - 40.0 * std::log10(range_m / anchor.range_m);
}

DetectionRange detection_range(const SnrSample& anchor, double threshold_db) {
    anchor.validate();
    if (!std::isfinite(threshold_db))
        throw std::invalid_argument("detection_range: threshold must be finite");
    DetectionRange dr;
    dr.range_m = anchor.range_m * std::pow(10.0, (anchor.snr_db - threshold_db) / 40.0);
    dr.extrapolated = dr.range_m > 2.0 * anchor.range_m;
    return dr;
}

double range_factor(double delta_db) { return std::pow(10.0, delta_db / 40.0); }

}  // namespace retromark
