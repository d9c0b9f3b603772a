#ifndef OLAWIN_CORE_SPECTRUM_HPP
#define OLAWIN_CORE_SPECTRUM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "optimizer.hpp"
#include "window.hpp"

namespace olawin {

struct SideLobe {
    double frequency = 0.0;  // cycles/sample
    double level_db = 0.0;   // relative to the main-lobe peak
};

/// Zero-padded magnitude response on [0, 1/2], peak-normalized to 0 dB.
/// main_lobe_width is the normalized frequency of the first spectral null
/// (NaN when no null is detectable); side_lobes lists the local maxima
/// beyond it, sorted by frequency, levels refined by parabolic
/// interpolation.
struct SpectrumReport {
    std::string window_label;
    std::int64_t length = 0;
    int pad_factor = 0;
    std::vector<double> bins;          // normalized frequency, j / (pad * L)
    std::vector<double> magnitude_db;  // 20 log10(|W| / peak)
    double peak_magnitude = 0.0;       // linear |W| at the peak bin
    double main_lobe_width = 0.0;
    std::vector<SideLobe> side_lobes;
};

struct LobeComparison {
    double main_lobe_width_diff = 0.0;        // a minus b
    std::vector<double> side_lobe_level_diff;  // a minus b, first N common lobes
};

SpectrumReport magnitude_response(const Window& w, int pad_factor = 16);

/// Width and per-lobe level differences (a minus b) over the first
/// `max_lobes` side lobes present in both reports. Reports must share
/// length and pad factor.
LobeComparison lobe_metrics(const SpectrumReport& a, const SpectrumReport& b,
                            int max_lobes = 5);

/// First frequency at which the response falls below `level_db` (linear
/// interpolation between bins); NaN if it never does.
double attenuation_crossing(const SpectrumReport& report, double level_db);

enum class WindowFamily { kbd, ola_dpss };

/// Find alpha such that the family window's main lobe matches the
/// reference's. The match is made on the -20 dB crossing width of the main
/// lobe (the first-null width is too coarse a functional to reproduce the
/// published tunings; see match_crossing_level_db). Scans [0.1, 16] in 0.5
/// steps for a sign change, then bisects to alpha resolution 1e-6 (at most
/// 80 iterations); `tol` bounds the residual width mismatch at the result.
/// Throws calibration_error when no bracket exists or the mismatch exceeds
/// tol.
double match_main_lobe_alpha(const Window& reference, WindowFamily family,
                             std::int64_t length, double tol = 1e-3,
                             int pad_factor = 16,
                             const SolveOptions& solve_opts = {});

/// Crossing level used by match_main_lobe_alpha.
inline constexpr double match_crossing_level_db = -20.0;

}  // namespace olawin

#endif
