#ifndef OLAWIN_CORE_KERNEL_HPP
#define OLAWIN_CORE_KERNEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "window.hpp"

namespace olawin {

/// Symmetric Toeplitz energy-concentration kernel. entries[n] holds the lag-n
/// value L sin(pi alpha n / L) / n, with the lag-0 value set analytically to
/// pi * alpha. alpha controls the pass-band half-width (in DFT-bin-like
/// units); valid range is 0 < alpha < L.
struct ConcentrationKernel {
    std::int64_t length = 0;
    double alpha = 0.0;
    std::vector<double> entries;  // first row/column, length `length`

    double diagonal() const noexcept { return entries.empty() ? 0.0 : entries[0]; }
};

/// Concentration of a window against a kernel. tau_linear is the Rayleigh
/// quotient of the unit-diagonal form of the kernel, w^T T w / (T_0 w^T w);
/// the division by the lag-0 value T_0 = pi*alpha puts tau on the scale of a
/// pass-band/total energy ratio times L/alpha. tau_db = 10 log10(tau_linear).
struct ConcentrationReport {
    double tau_linear = 0.0;
    double tau_db = 0.0;
    double kernel_alpha = 0.0;
    std::string window_label;
};

ConcentrationKernel build_toeplitz(std::int64_t length, double alpha);

/// y = T x via the Toeplitz structure, O(L^2).
void kernel_matvec(const ConcentrationKernel& kernel, std::span<const double> x,
                   std::span<double> y);

/// Quadratic form x^T T x.
double kernel_quadratic_form(const ConcentrationKernel& kernel,
                             std::span<const double> x);

double kernel_frobenius_norm(const ConcentrationKernel& kernel);

ConcentrationReport concentration_ratio(const Window& w,
                                        const ConcentrationKernel& kernel);

/// Dominant eigenvector of the kernel by power iteration (all-ones start,
/// stop on 1e-10 relative eigenvalue change, cap 100000 iterations), unit
/// norm, sign-normalized positive. The result maximizes the concentration
/// ratio with no overlap-add constraint; it is a reference object, not an
/// overlap-add window (its Princen-Bradley residual is generally large).
/// Throws solver_error carrying the eigenresidual if ||T w - lambda w||
/// exceeds 1e-8 ||T||_F at the iteration cap.
Window dpss_unconstrained(std::int64_t length, double alpha);

}  // namespace olawin

#endif
