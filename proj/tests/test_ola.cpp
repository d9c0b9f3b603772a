#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "core/ola.hpp"
#include "core/optimizer.hpp"
#include "core/window.hpp"

using olawin::FrameSet;
using olawin::Window;

TEST_CASE("segment: unit impulse lands in exactly the overlapping frames") {
    const Window w = olawin::half_sine(8);  // hop 4
    std::vector<double> x(32, 0.0);
    const std::int64_t p = 13;
    x[static_cast<std::size_t>(p)] = 1.0;
    const FrameSet fs = olawin::segment(x, w);
    REQUIRE(fs.frames.size() == 7);
    for (std::size_t h = 0; h < fs.frames.size(); ++h) {
        const std::int64_t base = fs.hop * static_cast<std::int64_t>(h);
        const std::int64_t off = p - base;
        for (std::int64_t i = 0; i < 8; ++i) {
            const double expected =
                i == off ? w.samples[static_cast<std::size_t>(i)] : 0.0;
            CHECK(fs.frames[h][static_cast<std::size_t>(i)] == expected);
        }
    }
}

TEST_CASE("segment: all-ones signal reproduces the window in every frame") {
    const Window w = olawin::half_sine(4);
    const std::vector<double> x(12, 1.0);
    const FrameSet fs = olawin::segment(x, w);
    REQUIRE(fs.frames.size() == 5);  // (12 - 4) / 2 + 1
    for (const auto& frame : fs.frames)
        for (std::size_t i = 0; i < 4; ++i) CHECK(frame[i] == w.samples[i]);
}

TEST_CASE("segment: frames are the pointwise product of window and signal") {
    const Window w = olawin::half_sine(64);
    const std::vector<double> x = olawin::noise_signal(99, 640);
    const FrameSet fs = olawin::segment(x, w);
    CHECK(fs.frames.size() == static_cast<std::size_t>((640 - 64) / 32 + 1));
    for (std::size_t h = 0; h < fs.frames.size(); ++h) {
        double frame_energy = 0.0;
        double windowed_energy = 0.0;
        for (std::size_t i = 0; i < 64; ++i) {
            const double direct =
                x[static_cast<std::size_t>(fs.hop) * h + i] * w.samples[i];
            CHECK(fs.frames[h][i] == direct);
            frame_energy += fs.frames[h][i] * fs.frames[h][i];
            windowed_energy += direct * direct;
        }
        CHECK(frame_energy <= windowed_energy + 1e-12);
    }
}

TEST_CASE("segment rejects short signals") {
    const Window w = olawin::half_sine(16);
    CHECK_THROWS_AS(olawin::segment(std::vector<double>(31, 1.0), w),
                    std::invalid_argument);
}

TEST_CASE("round trip with half-sine is exact on the interior") {
    const Window w = olawin::half_sine(64);
    const std::vector<double> x = olawin::noise_signal(7, 640);
    const olawin::ReconstructionReport rep = olawin::verify_reconstruction(x, w);
    CHECK(rep.max_abs_error <= 1e-12);
    CHECK(rep.square_sum_deviation <= 1e-12);
    CHECK(rep.interior_range.first == 32);
}

TEST_CASE("zero frames give zero output") {
    const Window w = olawin::half_sine(8);
    FrameSet fs = olawin::segment(std::vector<double>(32, 0.0), w);
    const std::vector<double> out = olawin::overlap_add(fs, w);
    for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("overlap_add validates the frame set") {
    const Window w = olawin::half_sine(8);
    FrameSet fs = olawin::segment(std::vector<double>(32, 1.0), w);
    FrameSet empty = fs;
    empty.frames.clear();
    CHECK_THROWS_AS(olawin::overlap_add(empty, w), std::invalid_argument);
    FrameSet bad_hop = fs;
    bad_hop.hop = 3;
    CHECK_THROWS_AS(olawin::overlap_add(bad_hop, w), std::invalid_argument);
    FrameSet ragged = fs;
    ragged.frames[1].pop_back();
    CHECK_THROWS_AS(olawin::overlap_add(ragged, w), std::invalid_argument);
}

TEST_CASE("low-overlap flat-extended window reconstructs exactly") {
    const Window w = olawin::extend_flat(olawin::half_sine(128), 256);  // T = 64
    const std::vector<double> x = olawin::noise_signal(21, 2560);
    const olawin::ReconstructionReport rep = olawin::verify_reconstruction(x, w);
    CHECK(rep.max_abs_error <= 1e-12);
    CHECK(rep.square_sum_deviation <= 1e-12);
    CHECK(rep.interior_range.first == 64);
}

TEST_CASE("rectangular window at hop L/2 double-covers the interior") {
    const Window r = olawin::rectangular(16, 8);
    const std::vector<double> x = olawin::noise_signal(3, 160);
    const olawin::ReconstructionReport rep = olawin::verify_reconstruction(x, r);
    CHECK(rep.square_sum_deviation == doctest::Approx(1.0));  // sums to 2
}

TEST_CASE("designed OLA-DPSS window reconstructs to 1e-10") {
    const auto [w, trace] = olawin::design_ola_dpss(128, 2.75);
    const std::vector<double> x = olawin::noise_signal(17, 1280);
    const olawin::ReconstructionReport rep = olawin::verify_reconstruction(x, w);
    CHECK(rep.max_abs_error <= 1e-10);
    CHECK(rep.square_sum_deviation <= 1e-10);
}

TEST_CASE("interior error is bounded by L * (PB residual) * max|signal|") {
    const std::vector<double> x = olawin::noise_signal(31, 320);
    double max_x = 0.0;
    for (double v : x) max_x = std::max(max_x, std::abs(v));
    for (const double eps : {1e-9, 1e-6, 1e-3}) {
        Window w = olawin::half_sine(32);
        // inject a pair-constraint violation of known size
        for (std::size_t k = 0; k < 16; k += 3) {
            const double a = w.samples[k];
            w.samples[k] = std::sqrt(a * a + eps);
        }
        const double resid = olawin::validate_princen_bradley(w).max_abs;
        CHECK(resid >= eps * 0.5);
        const olawin::ReconstructionReport rep = olawin::verify_reconstruction(x, w);
        CHECK(rep.max_abs_error <= 32.0 * resid * max_x);
        CHECK(rep.max_abs_error > 0.0);
    }
}

TEST_CASE("overlap_add is linear in the frames") {
    const Window w = olawin::half_sine(16);
    const std::vector<double> xa = olawin::noise_signal(5, 96);
    const std::vector<double> xb = olawin::noise_signal(6, 96);
    const FrameSet fa = olawin::segment(xa, w);
    const FrameSet fb = olawin::segment(xb, w);
    FrameSet combo = fa;
    const double ca = 2.5, cb = -1.25;
    for (std::size_t h = 0; h < combo.frames.size(); ++h)
        for (std::size_t i = 0; i < combo.frames[h].size(); ++i)
            combo.frames[h][i] = ca * fa.frames[h][i] + cb * fb.frames[h][i];
    const std::vector<double> oa = olawin::overlap_add(fa, w);
    const std::vector<double> ob = olawin::overlap_add(fb, w);
    const std::vector<double> oc = olawin::overlap_add(combo, w);
    for (std::size_t i = 0; i < oc.size(); ++i)
        CHECK(oc[i] == doctest::Approx(ca * oa[i] + cb * ob[i]).epsilon(1e-12));
}

TEST_CASE("noise injected into one frame spreads as the squared window") {
    const Window w = olawin::half_sine(64);
    const std::vector<double> x = olawin::noise_signal(11, 640);
    const std::int64_t target = 4;  // a frame with full interior coverage
    const int trials = 20000;
    const double sqrt3 = std::sqrt(3.0);

    std::vector<double> err2(64, 0.0);
    std::mt19937_64 rng(1234);
    for (int t = 0; t < trials; ++t) {
        FrameSet fs = olawin::segment(x, w);
        for (std::size_t i = 0; i < 64; ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            fs.frames[static_cast<std::size_t>(target)][i] +=
                sqrt3 * (2.0 * u - 1.0);  // unit-variance white noise
        }
        const std::vector<double> out = olawin::overlap_add(fs, w);
        const std::int64_t base = fs.hop * target;
        for (std::size_t i = 0; i < 64; ++i) {
            const double e = out[static_cast<std::size_t>(base) + i] -
                             x[static_cast<std::size_t>(base) + i];
            err2[i] += e * e;
        }
    }
    for (std::size_t i = 0; i < 64; ++i) {
        const double mean = err2[i] / trials;
        const double expected = w.samples[i] * w.samples[i];
        CHECK(std::abs(mean - expected) <= 0.05 * expected);
    }
}

TEST_CASE("noise_signal is deterministic and bounded") {
    const std::vector<double> a = olawin::noise_signal(42, 256);
    const std::vector<double> b = olawin::noise_signal(42, 256);
    CHECK(a == b);
    for (double v : a) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
    }
    const std::vector<double> c = olawin::noise_signal(43, 256);
    CHECK(a != c);
}
