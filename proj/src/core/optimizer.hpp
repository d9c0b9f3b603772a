#ifndef OLAWIN_CORE_OPTIMIZER_HPP
#define OLAWIN_CORE_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kernel.hpp"
#include "window.hpp"

namespace olawin {

/// Overlap-add constraint structure: pair constraints
/// w_k^2 + w_{k+L-T}^2 = 1 for k in [1, T], plus (when T < L/2) unit
/// flat-top samples for k in [T+1, L-T].
struct ConstraintSet {
    std::int64_t length = 0;
    std::int64_t overlap = 0;
    enum class Kind { full_overlap, low_overlap } kind = Kind::full_overlap;

    std::int64_t hop() const noexcept { return length - overlap; }
    /// Free angles: T, halved when symmetry is enforced (middle angle pinned
    /// to pi/4 for odd T).
    std::int64_t free_count(bool symmetric) const noexcept {
        return symmetric ? overlap / 2 : overlap;
    }
};

ConstraintSet make_constraints(std::int64_t length, std::int64_t overlap);

struct SolveOptions {
    double grad_tol = 1e-10;   // stop on max-norm of the angle gradient
    double obj_tol = 1e-12;    // stop on relative objective change
    std::int64_t max_iters = 10000;
    bool enforce_symmetry = true;
    int multistart = 1;
    std::uint64_t seed = 12345;  // multistart perturbation seed
    /// Optional hook invoked with the window of every accepted iterate.
    std::function<void(std::span<const double>)> iterate_observer;
};

struct SolveTrace {
    std::int64_t iterations = 0;
    double final_objective = 0.0;
    double final_grad_norm = 0.0;
    bool converged = false;
};

/// Materialize the window defined by the angle parameterization:
/// w_k = sin(theta_k), w_{k+L-T} = cos(theta_k), flat-top samples 1.
/// Every such window satisfies the pair constraints identically.
std::vector<double> window_from_theta(std::span<const double> theta,
                                      const ConstraintSet& constraints);

/// Objective w(theta)^T T w(theta) and its exact gradient in the angle
/// parameters. With `symmetric`, theta holds the floor(T/2) free angles of
/// the closure theta_k + theta_{T+1-k} = pi/2 and the gradient is reduced
/// accordingly. Angles must lie in the open box (0, pi/2).
std::pair<double, std::vector<double>> objective_and_gradient(
    std::span<const double> theta, const ConcentrationKernel& kernel,
    const ConstraintSet& constraints, bool symmetric);

/// Maximum-concentration window under full-overlap Princen-Bradley
/// constraints (overlap T = L/2). Initialized at the half-sine; ascent is
/// monotone, so the result never scores below it.
std::pair<Window, SolveTrace> design_ola_dpss(std::int64_t length, double alpha,
                                              const SolveOptions& opts = {});

/// Low-overlap variant: overlap T <= L/2, flat unit midsection. With
/// T == L/2 the constraint set coincides with the full-overlap one.
std::pair<Window, SolveTrace> design_low_overlap(std::int64_t length,
                                                 std::int64_t overlap, double alpha,
                                                 const SolveOptions& opts = {});

}  // namespace olawin

#endif
