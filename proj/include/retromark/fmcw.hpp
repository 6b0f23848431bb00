#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace retromark {

struct ChirpConfig {
    double start_ghz = 76.81;
    double slope_mhz_per_us = 10.235;
    double duration_us = 430.0;
    double adc_start_us = 6.0;
    double sample_rate_msps = 10.0;
    int samples_per_chirp = 4096;
    int tx_count = 4;
    int rx_count = 4;
    int chirps_per_tx = 128;
    bool complex_adc = false;  // default models a real-valued ADC (fs/2 usable)

    void validate() const;
    double sampling_window_us() const { return samples_per_chirp / sample_rate_msps; }
    double bandwidth_ghz() const;
};

struct DerivedParams {
    double bandwidth_ghz = 0.0;
    double range_resolution_m = 0.0;
    double range_bin_m = 0.0;  // equals the resolution for an unpadded FFT
    double max_range_m = 0.0;
};

DerivedParams derived_params(const ChirpConfig& config);

struct PointTarget {
    double range_m = 0.0;
    double azimuth_deg = 0.0;
    double rcs_dbsm = 0.0;
    // When set, bypasses the rcs/range amplitude model with a raw beat amplitude.
    std::optional<double> amplitude;
};

// TDM virtual array: element positions in units of lambda/2 along azimuth,
// one element per (tx slot, rx channel) pair at index tx*rx_count + rx.
struct VirtualArray {
    int tx_count = 0;
    int rx_count = 0;
    std::vector<double> positions;  // lambda/2 units, strictly increasing

    static VirtualArray uniform_ula(int tx_count, int rx_count);
    void validate() const;
    int elements() const { return tx_count * rx_count; }
    int virtual_index(int tx, int rx) const { return tx * rx_count + rx; }
};

// Raw ADC frame, laid out [tx slot][chirp repeat][rx][sample]. Real-ADC mode
// leaves the imaginary parts zero.
struct RadarFrame {
    ChirpConfig config;
    std::vector<std::complex<float>> samples;

    size_t flat(int tx, int chirp, int rx, int n) const {
        return ((static_cast<size_t>(tx) * config.chirps_per_tx + chirp) * config.rx_count + rx) *
                   config.samples_per_chirp +
               n;
    }
};

// Stretch-processing beat model: each target contributes a tone at
// f_beat = 2*S*R/c with per-virtual-element phase pi*position*sin(azimuth).
// Noise is white Gaussian at noise_db (dB power per sample); -inf disables it.
// Amplitude defaults to sqrt(sigma_linear)/R^2 unless the target overrides it.
RadarFrame synthesize_frame(const ChirpConfig& config, const VirtualArray& array,
                            const std::vector<PointTarget>& targets, double noise_db,
                            uint64_t seed);

// Complex range-FFT values at one range bin across the virtual array, for one
// chirp repeat. This is the snapshot the angle FFT sees (window not applied).
std::vector<std::complex<double>> virtual_snapshot(const RadarFrame& frame,
                                                   const VirtualArray& array, int chirp_repeat,
                                                   int range_bin);

struct RangeAzimuthMap {
    std::vector<double> range_m;      // monotone bin centres
    std::vector<double> azimuth_deg;  // monotone, asin-spaced
    std::vector<double> power;        // linear, row-major range*n_az + az
    double at(int range_bin, int az_bin) const {
        return power[static_cast<size_t>(range_bin) * azimuth_deg.size() + az_bin];
    }
};

// Range FFT per chirp (no fast-time window), TDM de-multiplex, Hamming window
// across the virtual elements, zero-padded angle FFT, magnitude average over
// chirp repeats; cell value is the squared average (linear power).
RangeAzimuthMap process_frame(const RadarFrame& frame, const VirtualArray& array,
                              int angle_bins = 181);

struct PeakReport {
    double range_m = 0.0;
    double azimuth_deg = 0.0;
    double power_db = 0.0;
    double snr_db = 0.0;
};

PeakReport peak_and_snr(const RangeAzimuthMap& map, double noise_floor_db);
// Noise floor taken as the mean linear power of a target-free map.
PeakReport peak_and_snr(const RangeAzimuthMap& map, const RangeAzimuthMap& noise_map);

// Peak power in the range window of map_with minus the same of map_without, dB.
double marker_delta(const RangeAzimuthMap& map_with, const RangeAzimuthMap& map_without,
                    double range_min_m, double range_max_m);

}  // namespace retromark
