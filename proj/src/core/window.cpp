#include "window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace olawin {

namespace {

void require_even_length(std::int64_t length) {
    if (length < 2 || length % 2 != 0)
        throw std::invalid_argument("window length must be even and >= 2, got " +
                                    std::to_string(length));
}

}  // namespace

Window half_sine(std::int64_t length) {
    require_even_length(length);
    Window w;
    w.samples.resize(static_cast<std::size_t>(length));
    const double ld = static_cast<double>(length);
    for (std::int64_t k = 1; k <= length; ++k)
        w.samples[static_cast<std::size_t>(k - 1)] =
            std::sin(std::numbers::pi * (static_cast<double>(k) - 0.5) / ld);
    w.overlap = length / 2;
    w.label = "half-sine";
    return w;
}

Window rectangular(std::int64_t length, std::int64_t overlap) {
    require_even_length(length);
    if (overlap < 1 || overlap > length / 2)
        throw std::invalid_argument("overlap must be in [1, L/2]");
    Window w;
    w.samples.assign(static_cast<std::size_t>(length), 1.0);
    w.overlap = overlap;
    w.label = "rectangular";
    return w;
}

double bessel_i0(double x) {
    if (x < 0.0 || std::isnan(x))
        throw std::invalid_argument("bessel_i0 requires x >= 0");
    const double q = 0.25 * x * x;  // (x/2)^2
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 1000; ++m) {
        term *= q / (static_cast<double>(m) * static_cast<double>(m));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

Window kbd(std::int64_t length, double alpha) {
    require_even_length(length);
    if (alpha < 0.0 || std::isnan(alpha))
        throw std::invalid_argument("kbd requires alpha >= 0");

    const std::int64_t half = length / 2;
    const std::int64_t n = half + 1;  // Kaiser length
    std::vector<double> kaiser(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        const double t = 2.0 * static_cast<double>(j) / static_cast<double>(n - 1) - 1.0;
        const double arg = 1.0 - t * t;
        kaiser[static_cast<std::size_t>(j)] = bessel_i0(alpha * std::sqrt(arg > 0.0 ? arg : 0.0));
    }

    double total = 0.0;
    for (double u : kaiser) total += u;

    Window w;
    w.samples.resize(static_cast<std::size_t>(length));
    double running = 0.0;
    for (std::int64_t k = 0; k < half; ++k) {
        running += kaiser[static_cast<std::size_t>(k)];
        const double v = std::sqrt(running / total);
        w.samples[static_cast<std::size_t>(k)] = v;
        w.samples[static_cast<std::size_t>(length - 1 - k)] = v;  // exact mirror
    }
    w.overlap = half;
    w.label = "kbd";
    return w;
}

Window extend_flat(const Window& core, std::int64_t length) {
    require_even_length(length);
    const std::int64_t core_len = core.length();
    if (core_len < 2 || core_len % 2 != 0)
        throw std::invalid_argument("core window length must be even and >= 2");
    if (core.overlap != core_len / 2)
        throw std::invalid_argument("core window must be full-overlap");
    if (length < core_len)
        throw std::invalid_argument("extended length must be >= the core length");

    const std::int64_t half = core_len / 2;
    Window w;
    w.samples.assign(static_cast<std::size_t>(length), 1.0);
    for (std::int64_t k = 0; k < half; ++k) {
        w.samples[static_cast<std::size_t>(k)] = core.samples[static_cast<std::size_t>(k)];
        w.samples[static_cast<std::size_t>(length - 1 - k)] =
            core.samples[static_cast<std::size_t>(core_len - 1 - k)];
    }
    w.overlap = half;
    w.label = core.label + "-low";
    return w;
}

PbResidual validate_princen_bradley(const Window& w) {
    const std::int64_t length = w.length();
    const std::int64_t overlap = w.overlap;
    const std::int64_t hop = length - overlap;

    PbResidual r;
    r.per_index.resize(static_cast<std::size_t>(overlap));
    for (std::int64_t k = 0; k < overlap; ++k) {
        const double a = w.samples[static_cast<std::size_t>(k)];
        const double b = w.samples[static_cast<std::size_t>(k + hop)];
        const double d = a * a + b * b - 1.0;
        r.per_index[static_cast<std::size_t>(k)] = d;
        r.max_abs = std::max(r.max_abs, std::abs(d));
    }
    // Flat-top region [T+1, L-T] (1-based, right-closed so the partition of
    // unity at hop L-T is complete).
    for (std::int64_t k = overlap; k < hop; ++k)
        r.max_abs = std::max(r.max_abs,
                             std::abs(w.samples[static_cast<std::size_t>(k)] - 1.0));
    return r;
}

}  // namespace olawin
