// retromark: design and verification toolkit for retrodirective metalens
// radar markers. Subcommands wrap the library modules; every output file is
// stamped with the hash of the resolved config for reproducibility.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "retromark/fmcw.hpp"
#include "retromark/lens.hpp"
#include "retromark/link.hpp"
#include "retromark/propagation.hpp"
#include "retromark/scatter.hpp"
#include "retromark/scenario.hpp"
#include "retromark/textio.hpp"
#include "retromark/units.hpp"

namespace rm = retromark;

namespace {

struct Context {
    rm::ConfigDoc doc;
    uint64_t hash = 0;
    std::string out_dir;
    std::optional<uint64_t> seed;
    int threads = 1;
};

Context make_context(const std::string& config_path, const std::string& out_dir,
                     std::optional<uint64_t> seed, int threads) {
    Context ctx;
    ctx.doc = rm::parse_config_file(config_path);
    std::string hashed = ctx.doc.source_text;
    if (seed) hashed += "\n# override seed=" + std::to_string(*seed) + "\n";
    ctx.hash = rm::fnv1a64(hashed);
    ctx.out_dir = out_dir;
    ctx.seed = seed;
    ctx.threads = threads;
    std::filesystem::create_directories(out_dir);
    return ctx;
}

std::string emit(const Context& ctx, const std::string& name, const std::string& body) {
    const std::string path = ctx.out_dir + "/" + name;
    rm::write_text_file(path, rm::hash_header(ctx.hash) + body);
    std::cout << "wrote " << path << "\n";
    return path;
}

void emit_pgm(const Context& ctx, const std::string& name, int width, int height,
              const std::vector<double>& power) {
    const std::string path = ctx.out_dir + "/" + name;
    rm::write_pgm8(path, width, height, power, 60.0, "config_hash=" + rm::hex16(ctx.hash));
    std::cout << "wrote " << path << "\n";
}

// --- synthesize ------------------------------------------------------------

void cmd_synthesize(const Context& ctx) {
    const rm::LensSpec spec = rm::lens_spec_from(ctx.doc);
    const rm::UnitCellLibrary library = rm::library_from(ctx.doc);
    const rm::QuantizedLens lens = rm::build_quantized_lens(spec, library);

    emit(ctx, "lens_quantized.csv", rm::lens_export_csv(lens));

    std::string profile = "i,j,ideal_phase_deg\n";
    for (const rm::ProfileSample& s : rm::sample_profile(spec))
        profile += std::to_string(s.i) + ',' + std::to_string(s.j) + ',' + rm::fmt(s.phase_deg) + '\n';
    emit(ctx, "lens_profile_N" + std::to_string(spec.cells) + ".csv", profile);

    std::string summary;
    summary += "cells = " + std::to_string(spec.cells) + "\n";
    summary += "focal_length_mm = " + rm::fmt(spec.focal_mm) + "\n";
    summary += "cell_pitch_mm = " + rm::fmt(spec.cell_pitch_mm) + "\n";
    summary += "frequency_ghz = " + rm::fmt(spec.frequency_ghz) + "\n";
    summary += "wavelength_mm = " + rm::fmt(spec.wavelength_mm()) + "\n";
    summary += "library_entries = " + std::to_string(library.entries.size()) + "\n";
    summary += "\ncentre-row assignments:\n";
    summary += "cell\tradius_mm\tideal_deg\tassigned_deg\tmagnitude\tcell_id\n";
    for (int j = 0; j <= lens.half(); ++j) {
        const rm::UnitCellEntry& e = lens.entry_at(0, j);
        summary += "(0," + std::to_string(j) + ")\t" + rm::fmt(spec.cell_center_mm(j)) + "\t" +
                   rm::fmt_fixed(lens.ideal_at(0, j), 2) + "\t" + rm::fmt(e.phase_deg) + "\t" +
                   rm::fmt(e.magnitude) + "\t" + e.cell_id + "\n";
    }
    emit(ctx, "synthesize_summary.txt", summary);
    std::cout << summary;
}

// --- focus-scan --------------------------------------------------------------

void cmd_focus_scan(const Context& ctx, bool slice_flag) {
    const rm::LensSpec spec = rm::lens_spec_from(ctx.doc);
    const rm::MaskMode mode = rm::mask_mode_from(ctx.doc);
    rm::QuantizedLens lens;
    if (mode == rm::MaskMode::Quantized) {
        lens = rm::build_quantized_lens(spec, rm::library_from(ctx.doc));
    } else {
        lens.spec = spec;  // ideal mode never touches the library fields
    }
    const rm::ApertureMask mask = rm::lens_to_mask(lens, rm::samples_per_cell_from(ctx.doc), mode);

    const double z_min = ctx.doc.get_double("focus_scan", "z_min_mm", 5.0);
    const double z_max = ctx.doc.get_double("focus_scan", "z_max_mm", 40.0);
    const int steps = ctx.doc.get_int("focus_scan", "steps", 141);
    rm::PropagationPlan plan;
    plan.padding_factor = ctx.doc.get_double("focus_scan", "padding_factor", plan.padding_factor);
    const std::string surround_key =
        ctx.doc.get_string("focus_scan", "surround", "transparent");
    rm::Surround surround;
    if (surround_key == "transparent")
        surround = rm::Surround::Transparent;
    else if (surround_key == "opaque")
        surround = rm::Surround::Opaque;
    else
        throw std::invalid_argument("config [focus_scan] surround: expected 'transparent' or "
                                    "'opaque', got '" + surround_key + "'");
    const bool want_slice = slice_flag || ctx.doc.get_bool("focus_scan", "slice", false);

    const rm::FocalScanResult scan =
        rm::focal_scan(mask, spec.wavelength_mm(), z_min, z_max, steps, plan, surround);

    std::string curve = "z_mm,on_axis_intensity\n";
    for (size_t i = 0; i < scan.z_mm.size(); ++i)
        curve += rm::fmt(scan.z_mm[i]) + ',' + rm::fmt(scan.on_axis_intensity[i]) + '\n';
    emit(ctx, "focal_scan.csv", curve);

    std::string summary;
    summary += "peak_z_mm = " + rm::fmt(scan.peak_z_mm) + "\n";
    summary += "peak_intensity = " + rm::fmt(scan.peak_intensity) + "\n";
    summary += "z_min_mm = " + rm::fmt(z_min) + "\n";
    summary += "z_max_mm = " + rm::fmt(z_max) + "\n";
    summary += "steps = " + std::to_string(steps) + "\n";
    summary += "mask_mode = " + std::string(mode == rm::MaskMode::Ideal ? "ideal" : "quantized") + "\n";
    summary += "surround = " + surround_key + "\n";
    summary += "grid = " + std::to_string(mask.nx) + "x" + std::to_string(mask.ny) +
               " at pitch_mm = " + rm::fmt(mask.pitch_mm) + "\n";
    emit(ctx, "focal_scan_summary.txt", summary);
    std::cout << summary;

    if (want_slice) {
        std::string sl = "z_mm,x_mm,intensity\n";
        for (size_t iz = 0; iz < scan.z_mm.size(); ++iz)
            for (int ix = 0; ix < scan.slice_nx; ++ix)
                sl += rm::fmt(scan.z_mm[iz]) + ',' +
                      rm::fmt((ix - 0.5 * (scan.slice_nx - 1)) * scan.slice_pitch_mm) + ',' +
                      rm::fmt(scan.slice_intensity[iz * scan.slice_nx + ix]) + '\n';
        emit(ctx, "field_slice.csv", sl);
    }
}

// --- rcs-sweep ---------------------------------------------------------------

std::string sweep_csv(const rm::RcsSweep& sweep) {
    std::string out = "theta_deg,rcs_dbsm\n";
    for (size_t i = 0; i < sweep.theta_deg.size(); ++i)
        out += rm::fmt(sweep.theta_deg[i]) + ',' + rm::fmt(sweep.rcs_dbsm[i]) + '\n';
    return out;
}

void cmd_rcs_sweep(const Context& ctx) {
    const rm::TagAssembly tag = rm::assembly_from(ctx.doc);
    const rm::SimulationWindow window = rm::window_from(ctx.doc);
    const double tmin = ctx.doc.get_double("sweep", "theta_min_deg", -90.0);
    const double tmax = ctx.doc.get_double("sweep", "theta_max_deg", 90.0);
    const double step = ctx.doc.get_double("sweep", "step_deg", 1.0);
    const double coverage = ctx.doc.get_double("sweep", "coverage_deg", 80.0);

    std::vector<std::pair<std::string, rm::ChainMode>> modes;
    for (const std::string& m :
         {ctx.doc.get_string("sweep", "modes", "tag,patch")}) {
        std::istringstream ss(m);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const size_t a = tok.find_first_not_of(" \t");
            const size_t b = tok.find_last_not_of(" \t");
            tok = a == std::string::npos ? "" : tok.substr(a, b - a + 1);
            if (tok == "tag")
                modes.emplace_back("tag", rm::ChainMode::FullTag);
            else if (tok == "patch")
                modes.emplace_back("patch", rm::ChainMode::PatchOnly);
            else
                throw std::invalid_argument("config [sweep] modes: expected 'tag' or 'patch', got '" +
                                            tok + "'");
        }
    }
    if (modes.empty()) throw std::invalid_argument("config [sweep] modes: none selected");

    const std::vector<double> bragg =
        rm::bragg_angles(tag.patch.period_mm, tag.wavelength_mm(), {-1, 1});

    std::string stats_txt;
    std::string stats_csv =
        "mode,board_x_mm,board_y_mm,coverage_deg,peak_dbsm,median_dbsm,mean_dbsm,variation_db\n";
    for (const auto& [name, mode] : modes) {
        const rm::RcsSweep sweep =
            rm::sweep_rcs(tag, mode, tmin, tmax, step, window, ctx.threads);
        emit(ctx, "rcs_" + name + ".csv", sweep_csv(sweep));
        const rm::SweepStats st = rm::sweep_stats(sweep, coverage);
        stats_txt += "[" + name + "]\n";
        stats_txt += "peak_dbsm = " + rm::fmt(st.peak_dbsm) + "\n";
        stats_txt += "median_dbsm = " + rm::fmt(st.median_dbsm) + "\n";
        stats_txt += "mean_dbsm = " + rm::fmt(st.mean_dbsm) + "\n";
        stats_txt += "variation_db = " + rm::fmt(st.variation_db) + "\n";
        stats_txt += "coverage_deg = " + rm::fmt(coverage) + "\n\n";
        stats_csv += name + ',' + rm::fmt(tag.board_x_mm) + ',' + rm::fmt(tag.board_y_mm) + ',' +
                     rm::fmt(coverage) + ',' + rm::fmt(st.peak_dbsm) + ',' +
                     rm::fmt(st.median_dbsm) + ',' + rm::fmt(st.mean_dbsm) + ',' +
                     rm::fmt(st.variation_db) + '\n';
    }
    stats_txt += "bragg_deg =";
    for (double b : bragg) stats_txt += " " + rm::fmt_fixed(b, 2);
    stats_txt += "\n";
    emit(ctx, "sweep_stats.txt", stats_txt);
    emit(ctx, "sweep_stats.csv", stats_csv);
    std::cout << stats_txt;
}

// --- link --------------------------------------------------------------------

void cmd_link(const Context& ctx) {
    const double freq_ghz = ctx.doc.get_double("link", "frequency_ghz", 78.5);
    const double lambda_m = rm::wavelength_of(freq_ghz) * 1e-3;

    std::string txt;
    std::string csv = "quantity,value,unit\n";
    auto put = [&](const std::string& key, double value, const std::string& unit) {
        txt += key + " = " + rm::fmt(value) + (unit.empty() ? "" : " " + unit) + "\n";
        csv += key + ',' + rm::fmt(value) + ',' + unit + '\n';
    };

    put("frequency", freq_ghz, "GHz");
    put("wavelength", lambda_m * 1e3, "mm");

    if (ctx.doc.has("link", "sphere_diameter_in") || ctx.doc.has("link", "sphere_diameter_mm")) {
        const double d_m = ctx.doc.has("link", "sphere_diameter_in")
                               ? ctx.doc.get_double("link", "sphere_diameter_in") * rm::kMetersPerInch
                               : ctx.doc.get_double("link", "sphere_diameter_mm") * 1e-3;
        put("sphere_diameter", d_m * 1e3, "mm");
        put("sphere_rcs", rm::sphere_rcs(d_m), "dBsm");
    }
    if (ctx.doc.has("link", "tag_rcs_dbsm")) {
        const double rcs = ctx.doc.get_double("link", "tag_rcs_dbsm");
        put("tag_rcs", rcs, "dBsm");
        put("tag_gain", rm::gain_from_rcs(rcs, lambda_m), "dBi");
    }
    if (ctx.doc.has("link", "patch_rcs_dbsm")) {
        const double rcs = ctx.doc.get_double("link", "patch_rcs_dbsm");
        put("patch_rcs", rcs, "dBsm");
        put("patch_gain", rm::gain_from_rcs(rcs, lambda_m), "dBi");
    }
    if (ctx.doc.has("link", "loaded_s21_db") && ctx.doc.has("link", "reference_s21_db")) {
        const double loaded = ctx.doc.get_double("link", "loaded_s21_db");
        const double ref = ctx.doc.get_double("link", "reference_s21_db");
        const double rx_gain = ctx.doc.get_double("link", "receive_antenna_gain_dbi", 5.0);
        put("gain_improvement", loaded - ref, "dB");
        put("realized_gain", rm::realized_gain(loaded, ref, rx_gain), "dBi");
    }

    rm::SnrSample anchor;
    anchor.range_m = ctx.doc.get_double("link", "anchor_range_m", 71.41);
    anchor.snr_db = ctx.doc.get_double("link", "anchor_snr_db", 10.73);
    const double threshold = ctx.doc.get_double("link", "threshold_db", 10.0);
    const rm::DetectionRange dr = rm::detection_range(anchor, threshold);
    put("anchor_range", anchor.range_m, "m");
    put("anchor_snr", anchor.snr_db, "dB");
    put("detection_threshold", threshold, "dB");
    put("detection_range", dr.range_m, "m");
    txt += std::string("detection_range_extrapolated = ") + (dr.extrapolated ? "true" : "false") + "\n";
    csv += std::string("detection_range_extrapolated,") + (dr.extrapolated ? "1" : "0") + ",\n";

    for (const std::string& v : ctx.doc.get_all("link", "improvement_db")) {
        const double delta = std::stod(v);
        put("range_factor_" + v + "dB", rm::range_factor(delta), "x");
    }

    emit(ctx, "link_report.txt", txt);
    emit(ctx, "link_report.csv", csv);

    const double cmin = ctx.doc.get_double("link", "curve_min_m", 10.0);
    const double cmax = ctx.doc.get_double("link", "curve_max_m", 100.0);
    const int cpts = ctx.doc.get_int("link", "curve_points", 25);
    if (cpts < 2 || !(cmin > 0.0) || !(cmax > cmin))
        throw std::invalid_argument("config [link] curve: need 0 < curve_min_m < curve_max_m and "
                                    ">= 2 points");
    std::string curve = "range_m,snr_db\n";
    for (int i = 0; i < cpts; ++i) {
        const double r = cmin + (cmax - cmin) * i / (cpts - 1);
        curve += rm::fmt(r) + ',' + rm::fmt(rm::snr_at_range(anchor, r)) + '\n';
    }
    emit(ctx, "snr_curve.csv", curve);
    std::cout << txt;
}

// --- calibrate -----------------------------------------------------------------

void cmd_calibrate(const Context& ctx) {
    double d_m = 0.0;
    if (ctx.doc.has("calibrate", "sphere_diameter_in"))
        d_m = ctx.doc.get_double("calibrate", "sphere_diameter_in") * rm::kMetersPerInch;
    else if (ctx.doc.has("calibrate", "sphere_diameter_mm"))
        d_m = ctx.doc.get_double("calibrate", "sphere_diameter_mm") * 1e-3;
    else
        throw std::invalid_argument(
            "config [calibrate]: need sphere_diameter_in or sphere_diameter_mm");
    const double received = ctx.doc.get_double("calibrate", "received_power_db");
    const double range = ctx.doc.get_double("calibrate", "reference_range_m");

    const double known = rm::sphere_rcs(d_m);
    rm::CalibrationFactor cal = rm::calibrate(received, known, range);
    cal.reference_diameter_m = d_m;

    std::string txt;
    std::string csv = "quantity,value,unit\n";
    auto put = [&](const std::string& key, double value, const std::string& unit) {
        txt += key + " = " + rm::fmt(value) + (unit.empty() ? "" : " " + unit) + "\n";
        csv += key + ',' + rm::fmt(value) + ',' + unit + '\n';
    };
    put("sphere_diameter", d_m * 1e3, "mm");
    put("sphere_rcs", known, "dBsm");
    put("received_power", received, "dB");
    put("reference_range", range, "m");
    put("calibration_factor", cal.factor_db, "dB");
    put("sphere_roundtrip_rcs", cal.apply(received), "dBsm");

    int q = 0;
    for (const std::string& line : ctx.doc.get_all("calibrate", "apply")) {
        std::istringstream ss(line);
        std::string f1, f2;
        std::getline(ss, f1, ',');
        const bool has_range = static_cast<bool>(std::getline(ss, f2, ','));
        const double p = std::stod(f1);
        const double rcs = has_range ? cal.apply_at_range(p, std::stod(f2)) : cal.apply(p);
        put("apply_" + std::to_string(q++) + "_rcs", rcs, "dBsm");
    }

    emit(ctx, "calibration.txt", txt);
    emit(ctx, "calibration.csv", csv);
    std::cout << txt;
}

// --- fmcw ------------------------------------------------------------------------

std::string map_csv(const rm::RangeAzimuthMap& map) {
    std::string out = "range_m,azimuth_deg,power_linear\n";
    const size_t n_az = map.azimuth_deg.size();
    for (size_t bin = 0; bin < map.range_m.size(); ++bin)
        for (size_t ia = 0; ia < n_az; ++ia)
            out += rm::fmt(map.range_m[bin]) + ',' + rm::fmt(map.azimuth_deg[ia]) + ',' +
                   rm::fmt(map.power[bin * n_az + ia]) + '\n';
    return out;
}

void cmd_fmcw(const Context& ctx) {
    const rm::ChirpConfig chirp = rm::chirp_from(ctx.doc);
    const rm::VirtualArray array = rm::array_from(ctx.doc);
    const rm::DerivedParams dp = rm::derived_params(chirp);
    const std::vector<rm::PointTarget> scene = rm::targets_from(ctx.doc, "targets");
    const std::vector<rm::PointTarget> marker = rm::targets_from(ctx.doc, "marker");
    const double noise_db = rm::noise_level_from(ctx.doc);
    const uint64_t seed = rm::seed_from(ctx.doc, ctx.seed);
    const int angle_bins = ctx.doc.get_int("fmcw", "angle_bins", 181);

    std::string txt;
    auto put = [&](const std::string& key, const std::string& value) {
        txt += key + " = " + value + "\n";
    };
    put("bandwidth_ghz", rm::fmt(dp.bandwidth_ghz));
    put("range_resolution_m", rm::fmt(dp.range_resolution_m));
    put("range_bin_m", rm::fmt(dp.range_bin_m));
    put("max_range_m", rm::fmt(dp.max_range_m));
    put("sampling_window_us", rm::fmt(chirp.sampling_window_us()));
    put("virtual_elements", std::to_string(array.elements()));
    put("noise_level_db", std::isfinite(noise_db) ? rm::fmt(noise_db) : "off");
    put("seed", std::to_string(seed));

    const rm::RadarFrame frame_scene = rm::synthesize_frame(chirp, array, scene, noise_db, seed);
    const rm::RangeAzimuthMap map_scene = rm::process_frame(frame_scene, array, angle_bins);
    emit(ctx, "map_scene.csv", map_csv(map_scene));
    emit_pgm(ctx, "map_scene.pgm", static_cast<int>(map_scene.azimuth_deg.size()),
             static_cast<int>(map_scene.range_m.size()), map_scene.power);

    double noise_floor_db = -200.0;
    if (ctx.doc.has("fmcw", "noise_floor_db")) {
        noise_floor_db = ctx.doc.get_double("fmcw", "noise_floor_db");
    } else if (std::isfinite(noise_db)) {
        // Sky-style estimate: a target-free frame through the same pipeline.
        const rm::RadarFrame sky = rm::synthesize_frame(chirp, array, {}, noise_db, seed);
        const rm::RangeAzimuthMap sky_map = rm::process_frame(sky, array, angle_bins);
        double sum = 0.0;
        for (double p : sky_map.power) sum += p;
        noise_floor_db = rm::db_from_power(sum / sky_map.power.size());
    }
    put("noise_floor_db", rm::fmt(noise_floor_db));

    const rm::PeakReport scene_peak = rm::peak_and_snr(map_scene, noise_floor_db);
    put("scene_peak_range_m", rm::fmt(scene_peak.range_m));
    put("scene_peak_azimuth_deg", rm::fmt(scene_peak.azimuth_deg));
    put("scene_peak_power_db", rm::fmt(scene_peak.power_db));
    put("scene_peak_snr_db", rm::fmt(scene_peak.snr_db));

    if (!marker.empty()) {
        std::vector<rm::PointTarget> with = scene;
        with.insert(with.end(), marker.begin(), marker.end());
        const rm::RadarFrame frame_with = rm::synthesize_frame(chirp, array, with, noise_db, seed);
        const rm::RangeAzimuthMap map_with = rm::process_frame(frame_with, array, angle_bins);
        emit(ctx, "map_marker.csv", map_csv(map_with));
        emit_pgm(ctx, "map_marker.pgm", static_cast<int>(map_with.azimuth_deg.size()),
                 static_cast<int>(map_with.range_m.size()), map_with.power);

        const rm::PeakReport marker_peak = rm::peak_and_snr(map_with, noise_floor_db);
        put("marker_peak_range_m", rm::fmt(marker_peak.range_m));
        put("marker_peak_azimuth_deg", rm::fmt(marker_peak.azimuth_deg));
        put("marker_peak_power_db", rm::fmt(marker_peak.power_db));
        put("marker_peak_snr_db", rm::fmt(marker_peak.snr_db));

        const double wmin = ctx.doc.get_double("marker", "range_window_min_m", 0.0);
        const double wmax = ctx.doc.get_double("marker", "range_window_max_m", dp.max_range_m);
        put("marker_window_m",
            "[" + rm::fmt(wmin) + ", " + rm::fmt(wmax) + "]");
        put("marker_delta_db", rm::fmt(rm::marker_delta(map_with, map_scene, wmin, wmax)));
    }

    emit(ctx, "fmcw_report.txt", txt);
    std::cout << txt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"design and verification toolkit for retrodirective metalens radar markers"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<uint64_t> seed;
    int threads = 1;
    app.add_option("--config", config_path, "experiment config file")->required();
    app.add_option("--out", out_dir, "output directory (default .)");
    app.add_option("--seed", seed, "override the config's RNG seed");
    app.add_option("--threads", threads, "worker threads for sweeps (default 1)")
        ->check(CLI::PositiveNumber);

    CLI::App* synthesize = app.add_subcommand("synthesize", "quantize a lens against a unit-cell library");
    CLI::App* focus_scan = app.add_subcommand("focus-scan", "on-axis intensity vs distance behind the lens");
    bool slice_flag = false;
    focus_scan->add_flag("--slice", slice_flag, "also write the x-z intensity slice");
    CLI::App* rcs_sweep = app.add_subcommand("rcs-sweep", "monostatic RCS vs azimuth for tag and patch layer");
    CLI::App* link = app.add_subcommand("link", "radar-equation link budget report");
    CLI::App* fmcw = app.add_subcommand("fmcw", "synthesize and process a TDM-MIMO radar frame");
    CLI::App* calibrate = app.add_subcommand("calibrate", "sphere calibration factor from received power");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const Context ctx = make_context(config_path, out_dir, seed, threads);
        if (synthesize->parsed()) cmd_synthesize(ctx);
        if (focus_scan->parsed()) cmd_focus_scan(ctx, slice_flag);
        if (rcs_sweep->parsed()) cmd_rcs_sweep(ctx);
        if (link->parsed()) cmd_link(ctx);
        if (fmcw->parsed()) cmd_fmcw(ctx);
        if (calibrate->parsed()) cmd_calibrate(ctx);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
