#ifndef OLAWIN_CORE_WINDOW_HPP
#define OLAWIN_CORE_WINDOW_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace olawin {

/// A finite window with a declared overlap structure. Samples are stored
/// 0-based; formulas in the doc comments use the conventional 1-based index
/// k in [1, L]. For overlap-add use, hop = length - overlap.
struct Window {
    std::vector<double> samples;
    std::int64_t overlap = 0;  // T; T == L/2 for full-overlap windows
    std::string label;

    std::int64_t length() const noexcept {
        return static_cast<std::int64_t>(samples.size());
    }
    std::int64_t hop() const noexcept { return length() - overlap; }
};

/// Princen-Bradley residual: per_index[k-1] = w_k^2 + w_{k+L-T}^2 - 1 for
/// k in [1, T]. For windows with T < L/2 the flat-top deviation
/// max |w_k - 1| over k in [T+1, L-T] is folded into max_abs.
struct PbResidual {
    double max_abs = 0.0;
    std::vector<double> per_index;
};

/// w_k = sin(pi (k - 1/2) / L), the standard full-overlap baseline.
/// L must be even and >= 2.
Window half_sine(std::int64_t length);

/// All-ones window (test fixture; deliberately violates the overlap identity).
Window rectangular(std::int64_t length, std::int64_t overlap);

/// Modified Bessel function of the first kind, order zero, by power series:
/// sum_m ((x/2)^{2m} / (m!)^2), terms added until the relative term drops
/// below 1e-16. Requires x >= 0.
double bessel_i0(double x);

/// Kaiser-Bessel-derived window: a Kaiser window of length L/2 + 1 with
/// shape parameter alpha is cumulatively summed and normalized by its full
/// sum; the first half is the square root of that ratio and the second half
/// mirrors it. Satisfies the Princen-Bradley identity to rounding error.
Window kbd(std::int64_t length, double alpha);

/// Conventional low-overlap construction: place the two halves of a
/// full-overlap window of length 2T at the ends of a length-L window and
/// fill the midsection with ones. Preserves the Princen-Bradley identity at
/// overlap T.
Window extend_flat(const Window& core, std::int64_t length);

/// Evaluate the Princen-Bradley residual of a window at its declared overlap.
PbResidual validate_princen_bradley(const Window& w);

}  // namespace olawin

#endif
