#include "retromark/fmcw.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "retromark/propagation.hpp"
#include "retromark/units.hpp"

namespace retromark {
namespace {

using cd = std::complex<double>;

constexpr double kBandLow_ghz = 76.81;
constexpr double kBandHigh_ghz = 81.0;
constexpr double kBandGrace_ghz = 0.010;  // the nominal sweep overshoots by 2 MHz

double slope_hz_per_s(const ChirpConfig& c) { return c.slope_mhz_per_us * 1e12; }
double sample_rate_hz(const ChirpConfig& c) { return c.sample_rate_msps * 1e6; }

// RAII c2c plan on an owned buffer.
struct Fft1d {
    int n;
    std::vector<cd> buf;
    fftw_plan plan;

    explicit Fft1d(int n_) : n(n_), buf(n_) {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        plan = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fmcw: FFTW plan creation failed");
    }
    ~Fft1d() {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    Fft1d(const Fft1d&) = delete;
    Fft1d& operator=(const Fft1d&) = delete;
    void run() { fftw_execute(plan); }
};

// One forward FFT of length n over `howmany` contiguous rows.
struct FftRows {
    int n, howmany;
    std::vector<cd> buf;
    fftw_plan plan;

    FftRows(int n_, int howmany_) : n(n_), howmany(howmany_), buf(static_cast<size_t>(n_) * howmany_) {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        plan = fftw_plan_many_dft(1, &n, howmany, p, nullptr, 1, n, p, nullptr, 1, n,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fmcw: FFTW plan creation failed");
    }
    ~FftRows() {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    FftRows(const FftRows&) = delete;
    FftRows& operator=(const FftRows&) = delete;
    void run() { fftw_execute(plan); }
};

std::vector<double> hamming(int n) {
    std::vector<double> w(n, 1.0);
    if (n > 1)
        for (int i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (n - 1));
    return w;
}

bool unit_spaced(const VirtualArray& array) {
    for (int v = 0; v < array.elements(); ++v)
        if (std::fabs(array.positions[v] - v) > 1e-12) return false;
    return true;
}

}  // namespace

void ChirpConfig::validate() const {
    if (!(start_ghz > 0.0) || !(slope_mhz_per_us > 0.0) || !(duration_us > 0.0) ||
        !(sample_rate_msps > 0.0))
        throw std::invalid_argument("chirp: frequencies, slope and durations must be > 0");
    if (adc_start_us < 0.0) throw std::invalid_argument("chirp: ADC start delay must be >= 0");
    if (samples_per_chirp < 2) throw std::invalid_argument("chirp: need at least 2 samples");
    if (tx_count < 1 || rx_count < 1 || chirps_per_tx < 1)
        throw std::invalid_argument("chirp: channel and chirp counts must be >= 1");

    const double window = sampling_window_us();
    if (adc_start_us + window > duration_us + 1e-9)
        throw std::invalid_argument("chirp: sampling window " + std::to_string(window) +
                                    " us + delay " + std::to_string(adc_start_us) +
                                    " us exceeds the " + std::to_string(duration_us) +
                                    " us chirp");
    const double band_ghz = bandwidth_ghz();
    if (start_ghz < kBandLow_ghz - kBandGrace_ghz ||
        start_ghz + band_ghz > kBandHigh_ghz + kBandGrace_ghz)
        throw std::invalid_argument("chirp: sweep " + std::to_string(start_ghz) + " + " +
                                    std::to_string(band_ghz) + " GHz leaves the " +
                                    std::to_string(kBandLow_ghz) + "-" +
                                    std::to_string(kBandHigh_ghz) + " GHz band");
}

double ChirpConfig::bandwidth_ghz() const {
    return slope_mhz_per_us * sampling_window_us() * 1e-3;
}

DerivedParams derived_params(const ChirpConfig& config) {
    config.validate();
    DerivedParams dp;
    dp.bandwidth_ghz = config.bandwidth_ghz();
    dp.range_resolution_m = kSpeedOfLight_m_per_s / (2.0 * dp.bandwidth_ghz * 1e9);
    dp.range_bin_m = dp.range_resolution_m;  // c*fs/(2*S*N) collapses to c/(2B)
    const double usable_hz = sample_rate_hz(config) * (config.complex_adc ? 1.0 : 0.5);
    dp.max_range_m = usable_hz * kSpeedOfLight_m_per_s / (2.0 * slope_hz_per_s(config));
    return dp;
}

VirtualArray VirtualArray::uniform_ula(int tx_count, int rx_count) {
    VirtualArray a;
    a.tx_count = tx_count;
    a.rx_count = rx_count;
    a.positions.resize(static_cast<size_t>(std::max(tx_count, 0)) * std::max(rx_count, 0));
    for (size_t v = 0; v < a.positions.size(); ++v) a.positions[v] = static_cast<double>(v);
    a.validate();
    return a;
}

void VirtualArray::validate() const {
    if (tx_count < 1 || rx_count < 1)
        throw std::invalid_argument("virtual array: tx and rx counts must be >= 1");
    if (positions.size() != static_cast<size_t>(tx_count) * rx_count)
        throw std::invalid_argument("virtual array: expected " +
                                    std::to_string(tx_count * rx_count) + " positions, got " +
                                    std::to_string(positions.size()));
    for (size_t v = 1; v < positions.size(); ++v)
        if (!(positions[v] > positions[v - 1]))
            throw std::invalid_argument("virtual array: positions must be strictly increasing");
}

RadarFrame synthesize_frame(const ChirpConfig& config, const VirtualArray& array,
                            const std::vector<PointTarget>& targets, double noise_db,
                            uint64_t seed) {
    config.validate();
    array.validate();
    if (array.tx_count != config.tx_count || array.rx_count != config.rx_count)
        throw std::invalid_argument("synthesize_frame: array is " +
                                    std::to_string(array.tx_count) + "x" +
                                    std::to_string(array.rx_count) + " but the config expects " +
                                    std::to_string(config.tx_count) + "x" +
                                    std::to_string(config.rx_count));

    const DerivedParams dp = derived_params(config);
    std::string offenders;
    for (size_t k = 0; k < targets.size(); ++k) {
        const PointTarget& t = targets[k];
        if (!(t.range_m > 0.0) || t.range_m > dp.max_range_m)
            offenders += " target " + std::to_string(k) + " range " + std::to_string(t.range_m) +
                         " m outside (0, " + std::to_string(dp.max_range_m) + "];";
        if (!(std::fabs(t.azimuth_deg) < 90.0))
            offenders += " target " + std::to_string(k) + " azimuth " +
                         std::to_string(t.azimuth_deg) + " deg outside (-90, 90);";
    }
    if (!offenders.empty()) throw std::invalid_argument("synthesize_frame:" + offenders);

    const int n = config.samples_per_chirp;
    const int reps = config.chirps_per_tx;
    RadarFrame frame;
    frame.config = config;
    frame.samples.assign(
        static_cast<size_t>(config.tx_count) * reps * config.rx_count * n, {0.0f, 0.0f});

    // Static scene: every chirp repeat sees the same beat signal, so build one
    // waveform per virtual element and fan it out across the repeats.
    std::vector<cd> acc(n);
    for (int tx = 0; tx < config.tx_count; ++tx) {
        for (int rx = 0; rx < config.rx_count; ++rx) {
            const double pos = array.positions[array.virtual_index(tx, rx)];
            std::fill(acc.begin(), acc.end(), cd(0.0, 0.0));
            for (const PointTarget& t : targets) {
                const double sigma = power_from_db(t.rcs_dbsm);
                const double amp =
                    t.amplitude ? *t.amplitude : std::sqrt(sigma) / (t.range_m * t.range_m);
                const double f_beat =
                    2.0 * slope_hz_per_s(config) * t.range_m / kSpeedOfLight_m_per_s;
                const double step = 2.0 * kPi * f_beat / sample_rate_hz(config);
                const double ph0 = kPi * pos * std::sin(deg2rad(t.azimuth_deg));
                if (config.complex_adc) {
                    for (int s = 0; s < n; ++s) {
                        const double ph = step * s + ph0;
                        acc[s] += amp * cd(std::cos(ph), std::sin(ph));
                    }
                } else {
                    for (int s = 0; s < n; ++s) acc[s] += amp * std::cos(step * s + ph0);
                }
            }
            for (int chirp = 0; chirp < reps; ++chirp) {
                const size_t base = frame.flat(tx, chirp, rx, 0);
                for (int s = 0; s < n; ++s)
                    frame.samples[base + s] = {static_cast<float>(acc[s].real()),
                                               static_cast<float>(acc[s].imag())};
            }
        }
    }

    if (std::isfinite(noise_db)) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double sigma = std::sqrt(power_from_db(noise_db));
        if (config.complex_adc) {
            const double s = sigma / std::sqrt(2.0);
            for (auto& v : frame.samples)
                v += std::complex<float>(static_cast<float>(s * gauss(rng)),
                                         static_cast<float>(s * gauss(rng)));
        } else {
            for (auto& v : frame.samples)
                v += std::complex<float>(static_cast<float>(sigma * gauss(rng)), 0.0f);
        }
    }
    return frame;
}

std::vector<cd> virtual_snapshot(const RadarFrame& frame, const VirtualArray& array,
                                 int chirp_repeat, int range_bin) {
    const ChirpConfig& c = frame.config;
    array.validate();
    if (array.tx_count != c.tx_count || array.rx_count != c.rx_count)
        throw std::invalid_argument("virtual_snapshot: array does not match the frame");
    if (chirp_repeat < 0 || chirp_repeat >= c.chirps_per_tx)
        throw std::invalid_argument("virtual_snapshot: chirp repeat out of range");
    if (range_bin < 0 || range_bin >= c.samples_per_chirp)
        throw std::invalid_argument("virtual_snapshot: range bin out of range");

    Fft1d fft(c.samples_per_chirp);
    std::vector<cd> snap(array.elements());
    for (int tx = 0; tx < c.tx_count; ++tx) {
        for (int rx = 0; rx < c.rx_count; ++rx) {
            const size_t base = frame.flat(tx, chirp_repeat, rx, 0);
            for (int s = 0; s < c.samples_per_chirp; ++s)
                fft.buf[s] = cd(frame.samples[base + s].real(), frame.samples[base + s].imag());
            fft.run();
            snap[array.virtual_index(tx, rx)] = fft.buf[range_bin];
        }
    }
    return snap;
}

RangeAzimuthMap process_frame(const RadarFrame& frame, const VirtualArray& array,
                              int angle_bins) {
    const ChirpConfig& c = frame.config;
    c.validate();
    array.validate();
    if (array.tx_count != c.tx_count || array.rx_count != c.rx_count)
        throw std::invalid_argument("process_frame: array does not match the frame");
    if (frame.samples.size() !=
        static_cast<size_t>(c.tx_count) * c.chirps_per_tx * c.rx_count * c.samples_per_chirp)
        throw std::invalid_argument("process_frame: frame sample count does not match its config");
    const int elems = array.elements();
    if (angle_bins < elems)
        throw std::invalid_argument("process_frame: angle FFT of " + std::to_string(angle_bins) +
                                    " bins cannot hold " + std::to_string(elems) + " elements");
    if (!unit_spaced(array))
        throw std::invalid_argument(
            "process_frame: the FFT beamformer needs the unit-spaced lambda/2 virtual array");

    const int n = c.samples_per_chirp;
    const int n_range = c.complex_adc ? n : n / 2 + 1;
    const DerivedParams dp = derived_params(c);
    const std::vector<double> window = hamming(elems);

    Fft1d range_fft(n);
    FftRows angle_fft(angle_bins, n_range);
    std::vector<cd> spectra(static_cast<size_t>(elems) * n_range);
    std::vector<double> mag_sum(static_cast<size_t>(n_range) * angle_bins, 0.0);

    for (int rep = 0; rep < c.chirps_per_tx; ++rep) {
        for (int tx = 0; tx < c.tx_count; ++tx) {
            for (int rx = 0; rx < c.rx_count; ++rx) {
                const size_t base = frame.flat(tx, rep, rx, 0);
                for (int s = 0; s < n; ++s)
                    range_fft.buf[s] =
                        cd(frame.samples[base + s].real(), frame.samples[base + s].imag());
                range_fft.run();
                const int v = array.virtual_index(tx, rx);
                std::copy_n(range_fft.buf.begin(), n_range,
                            spectra.begin() + static_cast<size_t>(v) * n_range);
            }
        }
        std::fill(angle_fft.buf.begin(), angle_fft.buf.end(), cd(0.0, 0.0));
        for (int bin = 0; bin < n_range; ++bin) {
            cd* row = angle_fft.buf.data() + static_cast<size_t>(bin) * angle_bins;
            for (int v = 0; v < elems; ++v)
                row[v] = spectra[static_cast<size_t>(v) * n_range + bin] * window[v];
        }
        angle_fft.run();
        for (int bin = 0; bin < n_range; ++bin) {
            const cd* row = angle_fft.buf.data() + static_cast<size_t>(bin) * angle_bins;
            double* out = mag_sum.data() + static_cast<size_t>(bin) * angle_bins;
            for (int ia = 0; ia < angle_bins; ++ia) {
                const int m = ia - angle_bins / 2;  // sin(theta) = 2m/angle_bins
                const int k = (m % angle_bins + angle_bins) % angle_bins;
                out[ia] += std::abs(row[k]);
            }
        }
    }

    RangeAzimuthMap map;
    map.range_m.resize(n_range);
    for (int bin = 0; bin < n_range; ++bin) map.range_m[bin] = bin * dp.range_bin_m;
    map.azimuth_deg.resize(angle_bins);
    for (int ia = 0; ia < angle_bins; ++ia)
        map.azimuth_deg[ia] = rad2deg(std::asin(2.0 * (ia - angle_bins / 2) / angle_bins));
    map.power.resize(mag_sum.size());
    for (size_t i = 0; i < mag_sum.size(); ++i) {
        const double mean_mag = mag_sum[i] / c.chirps_per_tx;
        map.power[i] = mean_mag * mean_mag;
    }
    return map;
}

namespace {

PeakReport peak_report(const RangeAzimuthMap& map, double noise_floor_db) {
    if (map.power.empty() || map.range_m.empty() || map.azimuth_deg.empty() ||
        map.power.size() != map.range_m.size() * map.azimuth_deg.size())
        throw std::invalid_argument("peak_and_snr: malformed map");
    size_t best = 0;
    for (size_t i = 1; i < map.power.size(); ++i)
        if (map.power[i] > map.power[best]) best = i;
    PeakReport pr;
    const size_t n_az = map.azimuth_deg.size();
    pr.range_m = map.range_m[best / n_az];
    pr.azimuth_deg = map.azimuth_deg[best % n_az];
    pr.power_db = map.power[best] > 0.0 ? db_from_power(map.power[best]) : -200.0;
    pr.snr_db = pr.power_db - noise_floor_db;
    return pr;
}

}  // namespace

PeakReport peak_and_snr(const RangeAzimuthMap& map, double noise_floor_db) {
    if (!std::isfinite(noise_floor_db))
        throw std::invalid_argument("peak_and_snr: noise floor must be finite");
    return peak_report(map, noise_floor_db);
}

PeakReport peak_and_snr(const RangeAzimuthMap& map, const RangeAzimuthMap& noise_map) {
    if (noise_map.power.empty()) throw std::invalid_argument("peak_and_snr: empty noise map");
    double sum = 0.0;
    for (double p : noise_map.power) sum += p;
    const double mean = sum / noise_map.power.size();
    return peak_report(map, mean > 0.0 ? db_from_power(mean) : -200.0);
}

double marker_delta(const RangeAzimuthMap& map_with, const RangeAzimuthMap& map_without,
                    double range_min_m, double range_max_m) {
    if (map_with.range_m != map_without.range_m ||
        map_with.azimuth_deg != map_without.azimuth_deg)
        throw std::invalid_argument("marker_delta: maps do not share axes");
    if (!(range_max_m >= range_min_m))
        throw std::invalid_argument("marker_delta: range window is reversed");

    const size_t n_az = map_with.azimuth_deg.size();
    double pw = 0.0, pwo = 0.0;
    bool any = false;
    for (size_t bin = 0; bin < map_with.range_m.size(); ++bin) {
        if (map_with.range_m[bin] < range_min_m || map_with.range_m[bin] > range_max_m) continue;
        any = true;
        for (size_t ia = 0; ia < n_az; ++ia) {
            pw = std::max(pw, map_with.power[bin * n_az + ia]);
            pwo = std::max(pwo, map_without.power[bin * n_az + ia]);
        }
    }
    if (!any)
        throw std::invalid_argument("marker_delta: range window [" + std::to_string(range_min_m) +
                                    ", " + std::to_string(range_max_m) +
                                    "] m contains no range bins");
    const double dw = pw > 0.0 ? db_from_power(pw) : -200.0;
    const double dwo = pwo > 0.0 ? db_from_power(pwo) : -200.0;
    return dw - dwo;
}

}  // namespace retromark
