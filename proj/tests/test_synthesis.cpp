#include "doctest.h"

#include <cmath>
#include <random>

#include "retromark/lens.hpp"
#include "retromark/units.hpp"

using namespace retromark;

namespace {

const std::string kLibraryCsv = std::string(RETROMARK_DATA_DIR) + "/table1_library.csv";

// Independent re-statement of the hyperbolic profile for oracle checks.
double profile_oracle(double x, double y, double f, double lambda) {
    double deg = 360.0 / lambda * (std::sqrt(x * x + y * y + f * f) - f);
    deg = std::fmod(deg, 360.0);
    if (deg < 0.0) deg += 360.0;
    return deg;
}

double circ_dist(double a, double b) {
    double d = std::fabs(std::fmod(a - b, 360.0));
    if (d > 180.0) d = 360.0 - d;
    return d;
}

}  // namespace

TEST_CASE("required phase follows the extra-path formula") {
    const double f = 20.0;
    const double lambda = wavelength_of(78.5);
    CHECK(required_phase(0.0, 0.0, f, lambda) == 0.0);

    std::mt19937 rng(20260816);
    std::uniform_real_distribution<double> coord(-20.0, 20.0);
    for (int n = 0; n < 300; ++n) {
        const double x = coord(rng);
        const double y = coord(rng);
        const double got = required_phase(x, y, f, lambda);
        CHECK(got >= 0.0);
        CHECK(got < 360.0);
        CHECK(circ_dist(got, profile_oracle(x, y, f, lambda)) < 1e-9);
    }

    // First full-wave zone boundary: one wavelength of extra path wraps to 0.
    const double x1 = std::sqrt((f + lambda) * (f + lambda) - f * f);
    CHECK(circ_dist(required_phase(x1, 0.0, f, lambda), 0.0) < 1e-6);

    CHECK_THROWS_AS(required_phase(1.0, 1.0, 0.0, lambda), std::domain_error);
    CHECK_THROWS_AS(required_phase(1.0, 1.0, f, -1.0), std::domain_error);
}

TEST_CASE("unit-cell library loads from disk") {
    const UnitCellLibrary lib = load_library_csv(kLibraryCsv);
    REQUIRE(lib.entries.size() == 11);
    CHECK(lib.entries[0].cell_id == "0_10");
    CHECK(lib.entries[0].r_mm == 0.20);
    CHECK(lib.entries[0].alpha_deg == 115.0);
    CHECK(lib.entries[0].phase_deg == 243.44);
    CHECK(lib.entries[0].magnitude == 0.89);
    CHECK(lib.entries[10].cell_id == "0_0");
    for (const UnitCellEntry& e : lib.entries) {
        CHECK(e.magnitude > 0.0);
        CHECK(e.magnitude <= 1.0);
    }
    CHECK_THROWS_AS(load_library_csv(kLibraryCsv + ".missing"), std::runtime_error);
}

TEST_CASE("library validation rejects bad rows") {
    UnitCellLibrary lib;
    CHECK_THROWS_AS(lib.validate(), std::invalid_argument);
    lib.entries.push_back({"a", 0, 0, 0, 0, 10.0, 0.0});
    CHECK_THROWS_AS(lib.validate(), std::invalid_argument);
    lib.entries[0].magnitude = 1.5;
    CHECK_THROWS_AS(lib.validate(), std::invalid_argument);
    lib.entries[0].magnitude = 1.0;
    CHECK_NOTHROW(lib.validate());
}

TEST_CASE("nearest match uses circular distance with documented tie-breaks") {
    const UnitCellLibrary lib = load_library_csv(kLibraryCsv);

    SUBCASE("exact phases select their own row") {
        CHECK(nearest_match_index(lib, 243.44) == 0);
        CHECK(nearest_match_index(lib, 45.18) == 2);
        CHECK(nearest_match_index(lib, 313.86) == 3);
    }

    SUBCASE("distance is circular, not linear") {
        // 350 deg: 21.28 deg around the top to 11.28 beats 36.14 to 313.86.
        CHECK(lib.entries[nearest_match_index(lib, 350.0)].phase_deg == 11.28);
        CHECK(lib.entries[nearest_match_index(lib, 0.0)].phase_deg == 11.28);
    }

    SUBCASE("duplicate rows resolve to the earlier index") {
        // Rows 9 and 10 are identical (phase 11.28, magnitude 0.65).
        CHECK(nearest_match_index(lib, 11.28) == 9);
        CHECK(nearest_match(lib, 5.0).cell_id == "0_1");
    }

    SUBCASE("equidistant targets prefer the larger magnitude") {
        UnitCellLibrary two;
        two.entries.push_back({"lo", 0, 0, 0, 0, 10.0, 0.90});
        two.entries.push_back({"hi", 0, 0, 0, 0, 30.0, 0.95});
        CHECK(nearest_match_index(two, 20.0) == 1);
        std::swap(two.entries[0], two.entries[1]);
        CHECK(nearest_match_index(two, 20.0) == 0);
    }
}

TEST_CASE("quantized lens matches the brute-force assignment cell by cell") {
    LensSpec spec;  // 20 mm focus, 1.728 mm pitch, 21 cells, 78.5 GHz
    const UnitCellLibrary lib = load_library_csv(kLibraryCsv);
    const QuantizedLens lens = build_quantized_lens(spec, lib);
    REQUIRE(lens.cell_index.size() == 441);
    const double lambda = spec.wavelength_mm();

    for (int j = -10; j <= 10; ++j) {
        for (int i = -10; i <= 10; ++i) {
            const double want = profile_oracle(i * spec.cell_pitch_mm, j * spec.cell_pitch_mm,
                                               spec.focal_mm, lambda);
            CHECK(circ_dist(lens.ideal_at(i, j), want) < 1e-9);

            int best = 0;
            double best_d = circ_dist(want, lib.entries[0].phase_deg);
            for (int k = 1; k < static_cast<int>(lib.entries.size()); ++k) {
                const double d = circ_dist(want, lib.entries[k].phase_deg);
                if (d < best_d ||
                    (d == best_d && lib.entries[k].magnitude > lib.entries[best].magnitude)) {
                    best = k;
                    best_d = d;
                }
            }
            CHECK(lens.cell_index[lens.flat(i, j)] == best);
        }
    }

    // Centre cell: ideal 0 deg, closest library phase is the duplicate 11.28 pair.
    CHECK(lens.ideal_at(0, 0) == 0.0);
    CHECK(lens.entry_at(0, 0).cell_id == "0_1");
}

TEST_CASE("lens profile has four-fold mirror and transpose symmetry") {
    LensSpec spec;
    const QuantizedLens lens = build_quantized_lens(spec, load_library_csv(kLibraryCsv));
    for (int j = 0; j <= 10; ++j) {
        for (int i = 0; i <= 10; ++i) {
            const int idx = lens.cell_index[lens.flat(i, j)];
            CHECK(lens.cell_index[lens.flat(-i, j)] == idx);
            CHECK(lens.cell_index[lens.flat(i, -j)] == idx);
            CHECK(lens.cell_index[lens.flat(j, i)] == idx);
            CHECK(lens.ideal_at(-i, -j) == lens.ideal_at(i, j));
        }
    }
}

TEST_CASE("lens spec and flat() validation") {
    LensSpec spec;
    spec.cells = 20;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.cells = 21;
    spec.focal_mm = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.focal_mm = 20.0;
    CHECK_NOTHROW(spec.validate());

    const QuantizedLens lens = build_quantized_lens(spec, load_library_csv(kLibraryCsv));
    CHECK_THROWS_AS(lens.flat(11, 0), std::out_of_range);
    CHECK_THROWS_AS(lens.flat(0, -11), std::out_of_range);
    CHECK(lens.flat(-10, -10) == 0);
    CHECK(lens.flat(10, 10) == 440);
}

TEST_CASE("profile samples walk j-major over the full aperture") {
    LensSpec spec;
    spec.cells = 5;
    const std::vector<ProfileSample> prof = sample_profile(spec);
    REQUIRE(prof.size() == 25);
    CHECK(prof[0].i == -2);
    CHECK(prof[0].j == -2);
    CHECK(prof[1].i == -1);
    CHECK(prof[1].j == -2);
    CHECK(prof[24].i == 2);
    CHECK(prof[24].j == 2);
}

TEST_CASE("quantized mask carries the assigned complex transmission") {
    LensSpec spec;
    const QuantizedLens lens = build_quantized_lens(spec, load_library_csv(kLibraryCsv));
    const ApertureMask mask = lens_to_mask(lens, 4, MaskMode::Quantized);
    REQUIRE(mask.nx == 84);
    REQUIRE(mask.ny == 84);
    CHECK(mask.pitch_mm == doctest::Approx(0.432));

    // All 16 samples of the centre cell equal its library transmission.
    const UnitCellEntry& centre = lens.entry_at(0, 0);
    const cdouble want = centre.magnitude * std::polar(1.0, deg2rad(centre.phase_deg));
    for (int iy = 40; iy <= 43; ++iy)
        for (int ix = 40; ix <= 43; ++ix)
            CHECK(std::abs(mask.at(ix, iy) - want) < 1e-12);

    // A corner cell for good measure.
    const UnitCellEntry& corner = lens.entry_at(-10, 10);
    CHECK(std::abs(std::abs(mask.at(0, 83)) - corner.magnitude) < 1e-12);
}

TEST_CASE("ideal mask evaluates the continuous profile at sample centres") {
    LensSpec spec;
    const QuantizedLens lens = build_quantized_lens(spec, load_library_csv(kLibraryCsv));
    const ApertureMask mask = lens_to_mask(lens, 3, MaskMode::Ideal);
    const double lambda = spec.wavelength_mm();
    for (int iy : {0, 17, 31, 62}) {
        for (int ix : {5, 20, 44, 60}) {
            const cdouble t = mask.at(ix, iy);
            CHECK(std::abs(std::abs(t) - 1.0) < 1e-12);
            const double want =
                required_phase(mask.x_mm(ix), mask.y_mm(iy), spec.focal_mm, lambda);
            CHECK(circ_dist(rad2deg(std::arg(t)), want) < 1e-9);
        }
    }
}

TEST_CASE("export CSV shape") {
    LensSpec spec;
    const QuantizedLens lens = build_quantized_lens(spec, load_library_csv(kLibraryCsv));
    const std::string csv = lens_export_csv(lens);
    CHECK(csv.rfind("i,j,ideal_phase_deg,assigned_phase_deg,magnitude,r_mm,w_mm,g_mm,alpha_deg\n",
                    0) == 0);
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 442);  // header + one row per cell
    CHECK(csv.find("\n-10,-10,") != std::string::npos);
    CHECK(csv.find("\n0,0,0,11.28,0.65,") != std::string::npos);
}
