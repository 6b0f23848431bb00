#include "doctest.h"

#include <cmath>
#include <random>

#include "retromark/lens.hpp"
#include "retromark/propagation.hpp"
#include "retromark/units.hpp"

using namespace retromark;

namespace {

const double kLambda = wavelength_of(78.5);

FieldGrid random_field(int n, double pitch, uint32_t seed) {
    FieldGrid f(n, n, pitch, kLambda);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (cdouble& s : f.samples) s = cdouble(u(rng), u(rng));
    return f;
}

// Plane wave e^{-j*kx*x} with kx on an exact FFT bin of the unpadded grid.
FieldGrid bin_exact_wave(int n, double pitch, int bin) {
    FieldGrid f(n, n, pitch, kLambda);
    const double kx = 2.0 * kPi * bin / (n * pitch);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            f.at(ix, iy) = std::polar(1.0, -kx * f.x_mm(ix));
    return f;
}

double max_abs_diff(const FieldGrid& a, const FieldGrid& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.samples.size(); ++i)
        m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

}  // namespace

TEST_CASE("uniform plane wave picks up exactly e^{-jk dz}") {
    FieldGrid f(32, 32, 0.5 * kLambda, kLambda);
    for (cdouble& s : f.samples) s = cdouble(1.0, 0.0);
    const double dz = 7.3;
    const FieldGrid g = propagate(f, dz, {1.0});
    const cdouble want = std::polar(1.0, -2.0 * kPi / kLambda * dz);
    for (const cdouble& s : g.samples) CHECK(std::abs(s - want) < 1e-12);
}

TEST_CASE("tilted plane wave picks up the kz phase of its own spectral bin") {
    const int n = 64;
    const double pitch = 0.4 * kLambda;
    const int bin = 5;
    const FieldGrid f = bin_exact_wave(n, pitch, bin);
    const double dz = 11.0;
    const FieldGrid g = propagate(f, dz, {1.0});

    const double k = 2.0 * kPi / kLambda;
    const double kx = 2.0 * kPi * bin / (n * pitch);
    const cdouble factor = std::polar(1.0, -dz * std::sqrt(k * k - kx * kx));
    for (size_t i = 0; i < f.samples.size(); ++i)
        CHECK(std::abs(g.samples[i] - factor * f.samples[i]) < 1e-11);
}

TEST_CASE("propagating components round-trip; evanescent ones die") {
    const int n = 48;
    const double pitch = 0.25 * kLambda;  // bins out to 2k: half are evanescent

    SUBCASE("band-limited field comes back unchanged") {
        const FieldGrid f = bin_exact_wave(n, pitch, 3);
        const FieldGrid back = propagate(propagate(f, 9.0, {1.0}), -9.0, {1.0});
        CHECK(max_abs_diff(f, back) < 1e-11);
    }

    SUBCASE("evanescent bin decays forward at e^{-dz kappa}") {
        const int bin = 18;  // kx = 1.5k on this grid
        const FieldGrid f = bin_exact_wave(n, pitch, bin);
        const double k = 2.0 * kPi / kLambda;
        const double kx = 2.0 * kPi * bin / (n * pitch);
        REQUIRE(kx > k);
        const double dz = 2.0;
        const FieldGrid g = propagate(f, dz, {1.0});
        const double want = std::exp(-dz * std::sqrt(kx * kx - k * k));
        CHECK(std::abs(g.samples[0]) == doctest::Approx(want).epsilon(1e-9));
        CHECK(propagating_spectrum_power(f) == doctest::Approx(0.0));
    }

    SUBCASE("back-propagation zeroes evanescent content instead of amplifying") {
        const FieldGrid f = bin_exact_wave(n, pitch, 18);
        const FieldGrid g = propagate(f, -2.0, {1.0});
        for (const cdouble& s : g.samples) CHECK(std::abs(s) < 1e-13);
    }
}

TEST_CASE("two hops compose into one") {
    const FieldGrid f = random_field(40, 0.3 * kLambda, 99u);
    const FieldGrid two = propagate(propagate(f, 4.0, {1.0}), 9.5, {1.0});
    const FieldGrid one = propagate(f, 13.5, {1.0});
    CHECK(max_abs_diff(two, one) < 1e-11);
}

TEST_CASE("propagating spectrum power is a propagation invariant") {
    const FieldGrid f = random_field(36, 0.45 * kLambda, 7u);
    const double before = propagating_spectrum_power(f);
    CHECK(before > 0.0);
    const double after = propagating_spectrum_power(propagate(f, 17.0, {1.0}));
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("gaussian beam spreads at the paraxial rate") {
    // Waist 4*lambda, Rayleigh range z_R = pi*w0^2/lambda; on-axis intensity
    // at z = z_R is half the waist value. Coarse tolerance: the angular
    // spectrum solves the full scalar problem, the formula is paraxial.
    const double w0 = 4.0 * kLambda;
    const double zr = kPi * w0 * w0 / kLambda;
    const int n = 128;
    const double pitch = 0.5 * kLambda;
    FieldGrid f(n, n, pitch, kLambda);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const double r2 = f.x_mm(ix) * f.x_mm(ix) + f.y_mm(iy) * f.y_mm(iy);
            f.at(ix, iy) = std::exp(-r2 / (w0 * w0));
        }
    const FieldGrid g = propagate(f, zr, {2.0});
    const double i0 = std::norm(f.at(n / 2, n / 2));
    const double iz = std::norm(g.at(n / 2, n / 2));
    CHECK(iz / i0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("far field of a uniform square aperture") {
    const int n = 50;
    const double pitch = 0.45 * kLambda;
    FieldGrid f(n, n, pitch, kLambda);
    for (cdouble& s : f.samples) s = cdouble(1.0, 0.0);

    SUBCASE("boresight value is the coherent area sum") {
        const cdouble f0 = far_field(f, 0.0);
        CHECK(f0.real() == doctest::Approx(n * n * pitch * pitch).epsilon(1e-12));
        CHECK(std::abs(f0.imag()) < 1e-9);
    }

    SUBCASE("first array-factor null sits at sin(theta) = lambda/(n*pitch)") {
        const double theta = rad2deg(std::asin(kLambda / (n * pitch)));
        const cdouble fn = far_field(f, theta);
        CHECK(std::abs(fn) < 1e-8 * n * n * pitch * pitch);
    }

    SUBCASE("pattern of a real symmetric aperture is even") {
        for (double t : {3.7, 11.0, 28.5})
            CHECK(std::abs(far_field(f, t) - far_field(f, -t)) < 1e-9);
    }

    SUBCASE("vector overload agrees with pointwise calls") {
        const std::vector<double> angles = {-40.0, -7.5, 0.0, 13.2, 61.0};
        const std::vector<cdouble> batch = far_field(f, angles);
        REQUIRE(batch.size() == angles.size());
        for (size_t i = 0; i < angles.size(); ++i)
            CHECK(std::abs(batch[i] - far_field(f, angles[i])) < 1e-12);
    }

    SUBCASE("2-d cut reduces to the azimuth pattern and respects symmetry") {
        CHECK(std::abs(far_field_2d(f, 17.0, 0.0) - far_field(f, 17.0)) < 1e-9);
        CHECK(std::abs(far_field_2d(f, 17.0, 90.0) - far_field(f, 17.0)) < 1e-9);
    }

    CHECK_THROWS_AS(far_field(f, 90.5), std::domain_error);
    CHECK_THROWS_AS(far_field(f, std::vector<double>{0.0, -91.0}), std::domain_error);
}

TEST_CASE("grid validation") {
    FieldGrid coarse(16, 16, 0.6 * kLambda, kLambda);  // pitch > lambda/2
    for (cdouble& s : coarse.samples) s = 1.0;
    CHECK_THROWS_AS(propagate(coarse, 1.0, {1.0}), std::domain_error);

    FieldGrid ok(16, 16, 0.5 * kLambda, kLambda);
    CHECK_THROWS_AS(propagate(ok, 1.0, {0.5}), std::invalid_argument);

    FieldGrid broken = ok;
    broken.samples.pop_back();
    CHECK_THROWS_AS(propagate(broken, 1.0, {1.0}), std::invalid_argument);
}

TEST_CASE("focal scan finds the designed focus of an ideal lens") {
    LensSpec spec;  // f = 20 mm at 78.5 GHz
    UnitCellLibrary lib;
    lib.entries.push_back({"unit", 0, 0, 0, 0, 0.0, 1.0});
    const QuantizedLens lens = build_quantized_lens(spec, lib);
    const ApertureMask mask = lens_to_mask(lens, 2, MaskMode::Ideal);

    const FocalScanResult scan = focal_scan(mask, spec.wavelength_mm(), 10.0, 30.0, 81, {2.0});
    REQUIRE(scan.z_mm.size() == 81);
    REQUIRE(scan.on_axis_intensity.size() == 81);
    CHECK(scan.z_mm.front() == doctest::Approx(10.0));
    CHECK(scan.z_mm.back() == doctest::Approx(30.0));
    CHECK(scan.peak_z_mm == doctest::Approx(20.0).epsilon(0.1));
    CHECK(scan.peak_intensity > 20.0);  // strong focusing gain over the incident wave

    // The centre-row slice comes along for free and peaks on axis at the focus.
    REQUIRE(scan.slice_nx == mask.nx);
    REQUIRE(scan.slice_intensity.size() == size_t(81) * mask.nx);
    size_t brightest = 0;
    for (size_t k = 1; k < scan.slice_intensity.size(); ++k)
        if (scan.slice_intensity[k] > scan.slice_intensity[brightest]) brightest = k;
    const int iz = static_cast<int>(brightest) / mask.nx;
    const int ix = static_cast<int>(brightest) % mask.nx;
    CHECK(scan.z_mm[iz] == doctest::Approx(scan.peak_z_mm).epsilon(0.05));
    CHECK(std::abs(ix - mask.nx / 2) <= 1);
}

TEST_CASE("transparent surround leaves an all-pass mask invisible") {
    ApertureMask mask(21, 21, 0.45 * kLambda);
    for (cdouble& t : mask.transmission) t = 1.0;

    const FocalScanResult open =
        focal_scan(mask, kLambda, 5.0, 25.0, 11, {2.0}, Surround::Transparent);
    for (double v : open.on_axis_intensity) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

    // The same mask in a screen diffracts: intensity moves away from 1.
    const FocalScanResult screened =
        focal_scan(mask, kLambda, 5.0, 25.0, 11, {2.0}, Surround::Opaque);
    double dev = 0.0;
    for (double v : screened.on_axis_intensity) dev = std::max(dev, std::fabs(v - 1.0));
    CHECK(dev > 0.05);
}

TEST_CASE("focal scan validation") {
    ApertureMask mask(8, 8, 0.4 * kLambda);
    for (cdouble& t : mask.transmission) t = 1.0;
    CHECK_THROWS_AS(focal_scan(mask, kLambda, 0.0, 10.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(focal_scan(mask, kLambda, 10.0, 5.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(focal_scan(mask, kLambda, 1.0, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(focal_scan(ApertureMask{}, kLambda, 1.0, 10.0, 5), std::invalid_argument);
}
