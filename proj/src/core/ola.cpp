#include "ola.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace olawin {

FrameSet segment(std::span<const double> signal, const Window& w) {
    const std::int64_t length = w.length();
    const std::int64_t n = static_cast<std::int64_t>(signal.size());
    if (n < 2 * length)
        throw std::invalid_argument("signal must be at least twice the window length");
    const std::int64_t hop = w.hop();

    FrameSet fs;
    fs.hop = hop;
    fs.origin = 0;
    fs.window_label = w.label;
    const std::int64_t count = (n - length) / hop + 1;
    fs.frames.reserve(static_cast<std::size_t>(count));
    for (std::int64_t h = 0; h < count; ++h) {
        std::vector<double> frame(static_cast<std::size_t>(length));
        const std::int64_t base = hop * h;
        for (std::int64_t i = 0; i < length; ++i)
            frame[static_cast<std::size_t>(i)] =
                signal[static_cast<std::size_t>(base + i)] *
                w.samples[static_cast<std::size_t>(i)];
        fs.frames.push_back(std::move(frame));
    }
    return fs;
}

std::vector<double> overlap_add(const FrameSet& frames, const Window& w) {
    const std::int64_t length = w.length();
    if (frames.frames.empty())
        throw std::invalid_argument("frame set is empty");
    if (frames.hop != w.hop())
        throw std::invalid_argument("frame hop does not match the window overlap");
    for (const auto& f : frames.frames)
        if (static_cast<std::int64_t>(f.size()) != length)
            throw std::invalid_argument("frame length does not match the window");

    const std::int64_t count = static_cast<std::int64_t>(frames.frames.size());
    const std::int64_t out_len = frames.hop * (count - 1) + length;
    std::vector<double> out(static_cast<std::size_t>(out_len), 0.0);
    for (std::int64_t h = 0; h < count; ++h) {
        const std::int64_t base = frames.hop * h;
        const std::vector<double>& frame = frames.frames[static_cast<std::size_t>(h)];
        for (std::int64_t i = 0; i < length; ++i)
            out[static_cast<std::size_t>(base + i)] +=
                frame[static_cast<std::size_t>(i)] * w.samples[static_cast<std::size_t>(i)];
    }
    return out;
}

ReconstructionReport verify_reconstruction(std::span<const double> signal,
                                           const Window& w) {
    const FrameSet fs = segment(signal, w);
    const std::vector<double> out = overlap_add(fs, w);
    const std::int64_t out_len = static_cast<std::int64_t>(out.size());
    const std::int64_t transient = w.length() - w.hop();  // = overlap

    ReconstructionReport rep;
    rep.interior_range = {transient, out_len - transient};

    for (std::int64_t k = rep.interior_range.first; k < rep.interior_range.second; ++k)
        rep.max_abs_error = std::max(
            rep.max_abs_error, std::abs(out[static_cast<std::size_t>(k)] -
                                        signal[static_cast<std::size_t>(k)]));

    // Partition of unity of the squared window, independent of the signal.
    std::vector<double> cover(static_cast<std::size_t>(out_len), 0.0);
    const std::int64_t count = static_cast<std::int64_t>(fs.frames.size());
    for (std::int64_t h = 0; h < count; ++h)
        for (std::int64_t i = 0; i < w.length(); ++i) {
            const double v = w.samples[static_cast<std::size_t>(i)];
            cover[static_cast<std::size_t>(fs.hop * h + i)] += v * v;
        }
    for (std::int64_t k = rep.interior_range.first; k < rep.interior_range.second; ++k)
        rep.square_sum_deviation =
            std::max(rep.square_sum_deviation,
                     std::abs(cover[static_cast<std::size_t>(k)] - 1.0));
    return rep;
}

std::vector<double> noise_signal(std::uint64_t seed, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("noise length must be nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& x : out) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        x = 2.0 * u - 1.0;
    }
    return out;
}

}  // namespace olawin
