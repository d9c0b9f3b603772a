#include "kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"

namespace olawin {

ConcentrationKernel build_toeplitz(std::int64_t length, double alpha) {
    if (length < 2)
        throw std::invalid_argument("kernel length must be >= 2");
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(length)))
        throw std::invalid_argument("kernel alpha must satisfy 0 < alpha < L");

    ConcentrationKernel k;
    k.length = length;
    k.alpha = alpha;
    k.entries.resize(static_cast<std::size_t>(length));
    k.entries[0] = std::numbers::pi * alpha;  // n -> 0 limit, never 0/0
    const double ld = static_cast<double>(length);
    for (std::int64_t n = 1; n < length; ++n)
        k.entries[static_cast<std::size_t>(n)] =
            ld * std::sin(std::numbers::pi * alpha * static_cast<double>(n) / ld) /
            static_cast<double>(n);
    return k;
}

void kernel_matvec(const ConcentrationKernel& kernel, std::span<const double> x,
                   std::span<double> y) {
    const std::int64_t n = kernel.length;
    if (static_cast<std::int64_t>(x.size()) != n || static_cast<std::int64_t>(y.size()) != n)
        throw std::invalid_argument("kernel_matvec size mismatch");
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int64_t j = 0; j < n; ++j)
            acc += kernel.entries[static_cast<std::size_t>(i > j ? i - j : j - i)] *
                   x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

double kernel_quadratic_form(const ConcentrationKernel& kernel,
                             std::span<const double> x) {
    const std::int64_t n = kernel.length;
    if (static_cast<std::int64_t>(x.size()) != n)
        throw std::invalid_argument("kernel_quadratic_form size mismatch");
    // x^T T x = T_0 sum x_i^2 + 2 sum_{d>=1} T_d sum_i x_i x_{i+d}
    double acc = 0.0;
    for (std::int64_t d = n - 1; d >= 1; --d) {
        double lag = 0.0;
        for (std::int64_t i = 0; i + d < n; ++i)
            lag += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + d)];
        acc += 2.0 * kernel.entries[static_cast<std::size_t>(d)] * lag;
    }
    double diag = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        diag += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return acc + kernel.entries[0] * diag;
}

double kernel_frobenius_norm(const ConcentrationKernel& kernel) {
    const std::int64_t n = kernel.length;
    double acc = static_cast<double>(n) * kernel.entries[0] * kernel.entries[0];
    for (std::int64_t d = 1; d < n; ++d) {
        const double e = kernel.entries[static_cast<std::size_t>(d)];
        acc += 2.0 * static_cast<double>(n - d) * e * e;
    }
    return std::sqrt(acc);
}

ConcentrationReport concentration_ratio(const Window& w,
                                        const ConcentrationKernel& kernel) {
    if (w.length() != kernel.length)
        throw std::invalid_argument("window/kernel length mismatch");
    double norm2 = 0.0;
    for (double v : w.samples) norm2 += v * v;
    if (norm2 == 0.0)
        throw std::invalid_argument("concentration of an all-zero window is undefined");

    ConcentrationReport r;
    r.kernel_alpha = kernel.alpha;
    r.window_label = w.label;
    r.tau_linear = kernel_quadratic_form(kernel, w.samples) / (kernel.diagonal() * norm2);
    r.tau_db = 10.0 * std::log10(r.tau_linear);
    return r;
}

Window dpss_unconstrained(std::int64_t length, double alpha) {
    const ConcentrationKernel kernel = build_toeplitz(length, alpha);
    const std::size_t n = static_cast<std::size_t>(length);

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(length)));
    std::vector<double> y(n);
    const double fro = kernel_frobenius_norm(kernel);
    const double residual_target = 1e-8 * fro;

    double lambda = 0.0;
    double residual = fro;
    const int max_iters = 100000;
    for (int iter = 0; iter < max_iters; ++iter) {
        kernel_matvec(kernel, v, y);
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * y[i];

        double res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y[i] - rayleigh * v[i];
            res2 += d * d;
        }
        residual = std::sqrt(res2);

        const bool eig_settled =
            iter > 0 && std::abs(rayleigh - lambda) <= 1e-10 * std::abs(rayleigh);
        lambda = rayleigh;
        if (eig_settled && residual <= residual_target) break;

        double ynorm = 0.0;
        for (double t : y) ynorm += t * t;
        ynorm = std::sqrt(ynorm);
        if (ynorm == 0.0)
            throw solver_error("power iteration collapsed to the zero vector", residual);
        for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ynorm;
    }
    if (residual > residual_target)
        throw solver_error("power iteration did not reach the eigenresidual target",
                           residual);

    double sum = 0.0;
    for (double t : v) sum += t;
    if (sum < 0.0)
        for (double& t : v) t = -t;

    Window w;
    w.samples = std::move(v);
    w.overlap = length / 2;
    w.label = "dpss-unconstrained";
    return w;
}

}  // namespace olawin
