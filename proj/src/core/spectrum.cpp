#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"

namespace olawin {

namespace {

constexpr double kDbFloor = -400.0;  // finite stand-in for log of exact zeros

bool nearly_symmetric(const std::vector<double>& w) {
    double peak = 0.0;
    for (double v : w) peak = std::max(peak, std::abs(v));
    const std::size_t n = w.size();
    for (std::size_t k = 0; k < n / 2; ++k)
        if (std::abs(w[k] - w[n - 1 - k]) > 1e-6 * peak) return false;
    return true;
}

// First null from the sign structure of the zero-phase spectrum; falls back
// to the first sufficiently deep local minimum of the dB response.
double find_first_null(const std::vector<double>& bins,
                       const std::vector<double>& zero_phase,
                       const std::vector<double>& mag_db, bool use_sign) {
    const std::size_t n = bins.size();
    if (use_sign) {
        const double scale = std::abs(zero_phase[0]);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            if (std::abs(zero_phase[j]) <= 1e-12 * scale) return bins[j];
            if (zero_phase[j] * zero_phase[j + 1] < 0.0) {
                const double t = zero_phase[j] / (zero_phase[j] - zero_phase[j + 1]);
                return bins[j] + t * (bins[j + 1] - bins[j]);
            }
        }
    }
    for (std::size_t j = 1; j + 1 < n; ++j)
        if (mag_db[j] < -60.0 && mag_db[j] <= mag_db[j - 1] && mag_db[j] < mag_db[j + 1])
            return bins[j];
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<SideLobe> extract_side_lobes(const std::vector<double>& bins,
                                         const std::vector<double>& mag_db,
                                         double first_null) {
    std::vector<SideLobe> lobes;
    if (std::isnan(first_null)) return lobes;
    const std::size_t n = bins.size();
    std::size_t start = 1;
    while (start < n && bins[start] <= first_null) ++start;
    const double df = bins[1] - bins[0];
    for (std::size_t j = std::max<std::size_t>(start, 1); j + 1 < n; ++j) {
        if (mag_db[j] >= mag_db[j - 1] && mag_db[j] > mag_db[j + 1]) {
            const double lm = mag_db[j - 1], l0 = mag_db[j], lp = mag_db[j + 1];
            double shift = 0.0;
            double level = l0;
            const double denom = lm - 2.0 * l0 + lp;
            if (denom < 0.0) {
                shift = std::clamp(0.5 * (lm - lp) / denom, -0.5, 0.5);
                level = l0 - 0.25 * (lm - lp) * shift;
            }
            lobes.push_back({bins[j] + shift * df, level});
        }
    }
    return lobes;
}

}  // namespace

SpectrumReport magnitude_response(const Window& w, int pad_factor) {
    if (pad_factor < 4) throw std::invalid_argument("pad_factor must be >= 4");
    const std::int64_t length = w.length();
    if (length < 1) throw std::invalid_argument("empty window");
    bool all_zero = true;
    for (double v : w.samples)
        if (v != 0.0) { all_zero = false; break; }
    if (all_zero) throw std::invalid_argument("all-zero window has no spectrum");

    const std::int64_t n_fft = static_cast<std::int64_t>(pad_factor) * length;
    const std::int64_t half = n_fft / 2;

    SpectrumReport rep;
    rep.window_label = w.label;
    rep.length = length;
    rep.pad_factor = pad_factor;
    rep.bins.resize(static_cast<std::size_t>(half + 1));
    rep.magnitude_db.resize(static_cast<std::size_t>(half + 1));

    // DFT of the zero-padded window, phase-centered so the real part carries
    // the sign structure of a symmetric window.
    const double center = 0.5 * static_cast<double>(length - 1);
    std::vector<double> magnitude(static_cast<std::size_t>(half + 1));
    std::vector<double> zero_phase(static_cast<std::size_t>(half + 1));
    for (std::int64_t j = 0; j <= half; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(n_fft);
        double re = 0.0, im = 0.0;
        for (std::int64_t k = 0; k < length; ++k) {
            const double phase =
                2.0 * std::numbers::pi * f * (static_cast<double>(k) - center);
            re += w.samples[static_cast<std::size_t>(k)] * std::cos(phase);
            im -= w.samples[static_cast<std::size_t>(k)] * std::sin(phase);
        }
        rep.bins[static_cast<std::size_t>(j)] = f;
        magnitude[static_cast<std::size_t>(j)] = std::hypot(re, im);
        zero_phase[static_cast<std::size_t>(j)] = re;
    }

    rep.peak_magnitude = *std::max_element(magnitude.begin(), magnitude.end());
    for (std::size_t j = 0; j < magnitude.size(); ++j)
        rep.magnitude_db[j] = magnitude[j] > 0.0
                                  ? 20.0 * std::log10(magnitude[j] / rep.peak_magnitude)
                                  : kDbFloor;

    rep.main_lobe_width = find_first_null(rep.bins, zero_phase, rep.magnitude_db,
                                          nearly_symmetric(w.samples));
    rep.side_lobes = extract_side_lobes(rep.bins, rep.magnitude_db, rep.main_lobe_width);
    return rep;
}

LobeComparison lobe_metrics(const SpectrumReport& a, const SpectrumReport& b,
                            int max_lobes) {
    if (a.length != b.length || a.pad_factor != b.pad_factor)
        throw std::invalid_argument("lobe_metrics requires equal length and pad factor");
    LobeComparison cmp;
    cmp.main_lobe_width_diff = a.main_lobe_width - b.main_lobe_width;
    const std::size_t n = std::min({a.side_lobes.size(), b.side_lobes.size(),
                                    static_cast<std::size_t>(max_lobes)});
    cmp.side_lobe_level_diff.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        cmp.side_lobe_level_diff.push_back(a.side_lobes[i].level_db -
                                           b.side_lobes[i].level_db);
    return cmp;
}

double attenuation_crossing(const SpectrumReport& report, double level_db) {
    const std::vector<double>& db = report.magnitude_db;
    for (std::size_t j = 1; j < db.size(); ++j) {
        if (db[j] < level_db && db[j - 1] >= level_db) {
            const double t = (level_db - db[j - 1]) / (db[j] - db[j - 1]);
            return report.bins[j - 1] + t * (report.bins[j] - report.bins[j - 1]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double match_main_lobe_alpha(const Window& reference, WindowFamily family,
                             std::int64_t length, double tol, int pad_factor,
                             const SolveOptions& solve_opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const SpectrumReport ref = magnitude_response(reference, pad_factor);
    const double target = attenuation_crossing(ref, match_crossing_level_db);
    if (std::isnan(target))
        throw calibration_error("reference window has no measurable main lobe", 0.0, 0.0);

    auto width_at = [&](double alpha) {
        Window cand = family == WindowFamily::kbd
                          ? kbd(length, alpha)
                          : design_ola_dpss(length, alpha, solve_opts).first;
        return attenuation_crossing(magnitude_response(cand, pad_factor),
                                    match_crossing_level_db);
    };

    // Locate the first sign change of width(alpha) - target on a coarse scan;
    // the width is not monotone near the top of the range, so bisection alone
    // is not safe over [0.1, 16].
    constexpr double kLo = 0.1, kHi = 16.0, kStep = 0.5;
    double prev_alpha = kLo;
    double prev_g = width_at(prev_alpha) - target;
    if (prev_g == 0.0) return prev_alpha;
    double lo = 0.0, hi = 0.0, g_lo = 0.0;
    bool bracketed = false;
    for (double a = kLo + kStep; a <= kHi + 1e-12; a += kStep) {
        const double g = width_at(a) - target;
        if (g == 0.0) return a;
        if (!std::isnan(prev_g) && !std::isnan(g) && prev_g * g < 0.0) {
            lo = prev_alpha;
            hi = a;
            g_lo = prev_g;
            bracketed = true;
            break;
        }
        prev_alpha = a;
        prev_g = g;
    }
    if (!bracketed)
        throw calibration_error("no main-lobe width crossing in the alpha bracket",
                                kLo, kHi);

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 80 && hi - lo > 1e-6; ++it) {
        mid = 0.5 * (lo + hi);
        const double g = width_at(mid) - target;
        if (g == 0.0) return mid;
        if (g * g_lo < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g;
        }
    }
    mid = 0.5 * (lo + hi);
    if (std::abs(width_at(mid) - target) > tol)
        throw calibration_error("calibrated width mismatch exceeds tolerance", lo, hi);
    return mid;
}

}  // namespace olawin
