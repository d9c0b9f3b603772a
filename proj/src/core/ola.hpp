#ifndef OLAWIN_CORE_OLA_HPP
#define OLAWIN_CORE_OLA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "window.hpp"

namespace olawin {

struct FrameSet {
    std::vector<std::vector<double>> frames;  // each of the window length
    std::int64_t hop = 0;
    std::int64_t origin = 0;  // sample index of the first frame's first sample
    std::string window_label;
};

/// Round-trip report. interior covers the samples with complete squared-
/// window coverage, excluding the L - hop transient at each end.
struct ReconstructionReport {
    double max_abs_error = 0.0;
    std::pair<std::int64_t, std::int64_t> interior_range{0, 0};  // [begin, end)
    double square_sum_deviation = 0.0;  // max |sum_h w^2[k - hop h] - 1|
};

/// Cut the signal into windowed frames at hop = L - overlap spacing.
/// The signal must be at least 2L samples long.
FrameSet segment(std::span<const double> signal, const Window& w);

/// Window each frame a second time and shift-add at the hop spacing.
/// Output length is hop * (frames - 1) + L.
std::vector<double> overlap_add(const FrameSet& frames, const Window& w);

/// segment -> overlap_add with no modification, compared against the input
/// over the interior; also reports the squared-window partition-of-unity
/// deviation, which bounds the error any frame modification spreads.
ReconstructionReport verify_reconstruction(std::span<const double> signal,
                                           const Window& w);

/// Deterministic test signal: mt19937_64 draws mapped to [-1, 1) via the top
/// 53 bits, so byte-identical across platforms for a given seed.
std::vector<double> noise_signal(std::uint64_t seed, std::int64_t n);

}  // namespace olawin

#endif
