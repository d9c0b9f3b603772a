#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace olawin {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kBoxMargin = 1e-9;  // open-box clamp keeps all samples > 0

double clamp_angle(double t) {
    return std::clamp(t, kBoxMargin, kHalfPi - kBoxMargin);
}

// Expand free parameters to the full T-dimensional angle vector.
std::vector<double> expand_theta(std::span<const double> phi,
                                 const ConstraintSet& cs, bool symmetric) {
    const std::int64_t t = cs.overlap;
    if (!symmetric) return {phi.begin(), phi.end()};
    const std::int64_t m = cs.free_count(true);
    std::vector<double> theta(static_cast<std::size_t>(t));
    for (std::int64_t k = 0; k < m; ++k) {
        theta[static_cast<std::size_t>(k)] = phi[static_cast<std::size_t>(k)];
        theta[static_cast<std::size_t>(t - 1 - k)] = kHalfPi - phi[static_cast<std::size_t>(k)];
    }
    if (t % 2 == 1) theta[static_cast<std::size_t>(t / 2)] = std::numbers::pi / 4.0;
    return theta;
}

struct Evaluation {
    double objective = 0.0;
    std::vector<double> gradient;  // in the free parameters
    std::vector<double> window;
};

Evaluation evaluate(std::span<const double> phi, const ConcentrationKernel& kernel,
                    const ConstraintSet& cs, bool symmetric) {
    const std::vector<double> theta = expand_theta(phi, cs, symmetric);
    Evaluation ev;
    ev.window = window_from_theta(theta, cs);

    std::vector<double> tw(ev.window.size());
    kernel_matvec(kernel, ev.window, tw);
    double obj = 0.0;
    for (std::size_t i = 0; i < ev.window.size(); ++i) obj += ev.window[i] * tw[i];
    ev.objective = obj;

    const std::int64_t t = cs.overlap;
    const std::int64_t hop = cs.hop();
    std::vector<double> grad_theta(static_cast<std::size_t>(t));
    for (std::int64_t k = 0; k < t; ++k) {
        const double th = theta[static_cast<std::size_t>(k)];
        grad_theta[static_cast<std::size_t>(k)] =
            2.0 * (tw[static_cast<std::size_t>(k)] * std::cos(th) -
                   tw[static_cast<std::size_t>(hop + k)] * std::sin(th));
    }
    if (!symmetric) {
        ev.gradient = std::move(grad_theta);
    } else {
        const std::int64_t m = cs.free_count(true);
        ev.gradient.resize(static_cast<std::size_t>(m));
        for (std::int64_t k = 0; k < m; ++k)
            ev.gradient[static_cast<std::size_t>(k)] =
                grad_theta[static_cast<std::size_t>(k)] -
                grad_theta[static_cast<std::size_t>(t - 1 - k)];
    }
    return ev;
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Dense BFGS ascent with Armijo backtracking; trial points are clamped to
// the open angle box, every accepted iterate stays feasible.
struct AscentResult {
    std::vector<double> phi;
    Evaluation eval;
    SolveTrace trace;
};

AscentResult ascend(std::vector<double> phi, const ConcentrationKernel& kernel,
                    const ConstraintSet& cs, const SolveOptions& opts) {
    const bool symmetric = opts.enforce_symmetry;
    const std::size_t m = phi.size();

    AscentResult res;
    res.eval = evaluate(phi, kernel, cs, symmetric);
    if (opts.iterate_observer) opts.iterate_observer(res.eval.window);

    if (m == 0) {  // fully pinned by symmetry (e.g. L = 2)
        res.phi = std::move(phi);
        res.trace.converged = true;
        res.trace.final_objective = res.eval.objective;
        return res;
    }

    // inverse Hessian approximation (for the maximization, on -objective)
    std::vector<double> hinv(m * m, 0.0);
    auto reset_hinv = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) hinv[i * m + i] = 1.0;
    };
    reset_hinv();

    constexpr double kArmijo = 1e-4;
    std::vector<double> dir(m), trial(m), s(m), y(m), hy(m);

    std::int64_t iter = 0;
    bool converged = false;
    for (; iter < opts.max_iters; ++iter) {
        const std::vector<double>& g = res.eval.gradient;
        if (max_norm(g) <= opts.grad_tol) {
            converged = true;
            break;
        }

        // ascent direction d = Hinv * g; fall back to steepest ascent if the
        // approximation loses positive definiteness
        double dg = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += hinv[i * m + j] * g[j];
            dir[i] = acc;
            dg += acc * g[i];
        }
        if (!(dg > 0.0)) {
            reset_hinv();
            dir.assign(g.begin(), g.end());
        }

        double step = 1.0;
        bool accepted = false;
        Evaluation next;
        double predicted = 0.0;
        while (step >= 1e-16) {
            predicted = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = clamp_angle(phi[i] + step * dir[i]);
                predicted += g[i] * (trial[i] - phi[i]);
            }
            if (predicted > 0.0) {
                next = evaluate(trial, kernel, cs, symmetric);
                if (next.objective >= res.eval.objective + kArmijo * predicted) {
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            // no ascent possible along this direction at any step length
            converged = max_norm(g) <= opts.grad_tol;
            break;
        }

        double sy = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s[i] = trial[i] - phi[i];
            y[i] = res.eval.gradient[i] - next.gradient[i];  // gradient of -J grows
            sy += s[i] * y[i];
        }
        const double rel_change = std::abs(next.objective - res.eval.objective) /
                                  std::max(1.0, std::abs(next.objective));

        phi.assign(trial.begin(), trial.end());
        res.eval = std::move(next);
        if (opts.iterate_observer) opts.iterate_observer(res.eval.window);

        if (rel_change <= opts.obj_tol) {
            converged = true;
            ++iter;
            break;
        }

        if (sy > 1e-12) {  // curvature condition for the BFGS update
            for (std::size_t i = 0; i < m; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < m; ++j) acc += hinv[i * m + j] * y[j];
                hy[i] = acc;
            }
            double yhy = 0.0;
            for (std::size_t i = 0; i < m; ++i) yhy += y[i] * hy[i];
            const double rho = 1.0 / sy;
            const double c = (1.0 + rho * yhy) * rho;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    hinv[i * m + j] += c * s[i] * s[j] -
                                       rho * (hy[i] * s[j] + s[i] * hy[j]);
        } else {
            reset_hinv();
        }
    }

    res.phi = std::move(phi);
    res.trace.iterations = iter;
    res.trace.converged = converged;
    res.trace.final_objective = res.eval.objective;
    res.trace.final_grad_norm = max_norm(res.eval.gradient);
    return res;
}

std::vector<double> initial_phi(const ConstraintSet& cs, bool symmetric) {
    // theta_k = pi (k - 1/2) / (2T): maps the length-2T half-sine onto the
    // overlap angles; for T = L/2 this reproduces the half-sine exactly.
    const std::int64_t t = cs.overlap;
    const std::int64_t m = symmetric ? cs.free_count(true) : t;
    std::vector<double> phi(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k)
        phi[static_cast<std::size_t>(k)] =
            std::numbers::pi * (static_cast<double>(k) + 0.5) / (2.0 * static_cast<double>(t));
    return phi;
}

std::pair<Window, SolveTrace> design(std::int64_t length, std::int64_t overlap,
                                     double alpha, const SolveOptions& opts,
                                     const char* label) {
    const ConstraintSet cs = make_constraints(length, overlap);
    const ConcentrationKernel kernel = build_toeplitz(length, alpha);
    if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(opts.grad_tol > 0.0) || !(opts.obj_tol > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");

    const std::vector<double> base = initial_phi(cs, opts.enforce_symmetry);
    AscentResult best;
    bool have_best = false;
    const int starts = std::max(1, opts.multistart);
    for (int run = 0; run < starts; ++run) {
        std::vector<double> phi = base;
        if (run > 0) {
            std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(run));
            for (double& p : phi) {
                const double u =
                    static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
                p = clamp_angle(p + 0.1 * (u - 0.5));
            }
        }
        AscentResult r = ascend(std::move(phi), kernel, cs, opts);
        if (!have_best || r.eval.objective > best.eval.objective) {
            best = std::move(r);
            have_best = true;
        }
    }

    Window w;
    w.samples = std::move(best.eval.window);
    w.overlap = overlap;
    w.label = label;
    return {std::move(w), best.trace};
}

}  // namespace

ConstraintSet make_constraints(std::int64_t length, std::int64_t overlap) {
    if (length < 2 || length % 2 != 0)
        throw std::invalid_argument("constraint length must be even and >= 2");
    if (overlap < 1 || overlap > length / 2)
        throw std::invalid_argument("overlap must satisfy 1 <= T <= L/2");
    ConstraintSet cs;
    cs.length = length;
    cs.overlap = overlap;
    cs.kind = overlap == length / 2 ? ConstraintSet::Kind::full_overlap
                                    : ConstraintSet::Kind::low_overlap;
    return cs;
}

std::vector<double> window_from_theta(std::span<const double> theta,
                                      const ConstraintSet& cs) {
    const std::int64_t t = cs.overlap;
    if (static_cast<std::int64_t>(theta.size()) != t)
        throw std::invalid_argument("theta dimension must equal the overlap length");
    std::vector<double> w(static_cast<std::size_t>(cs.length), 1.0);
    const std::int64_t hop = cs.hop();
    for (std::int64_t k = 0; k < t; ++k) {
        w[static_cast<std::size_t>(k)] = std::sin(theta[static_cast<std::size_t>(k)]);
        w[static_cast<std::size_t>(hop + k)] = std::cos(theta[static_cast<std::size_t>(k)]);
    }
    return w;
}

std::pair<double, std::vector<double>> objective_and_gradient(
    std::span<const double> theta, const ConcentrationKernel& kernel,
    const ConstraintSet& constraints, bool symmetric) {
    if (kernel.length != constraints.length)
        throw std::invalid_argument("kernel/constraint length mismatch");
    if (static_cast<std::int64_t>(theta.size()) != constraints.free_count(symmetric))
        throw std::invalid_argument("theta dimension does not match the free-parameter count");
    for (double t : theta)
        if (!(t > 0.0) || !(t < kHalfPi))
            throw std::invalid_argument("angles must lie in the open box (0, pi/2)");
    Evaluation ev = evaluate(theta, kernel, constraints, symmetric);
    return {ev.objective, std::move(ev.gradient)};
}

std::pair<Window, SolveTrace> design_ola_dpss(std::int64_t length, double alpha,
                                              const SolveOptions& opts) {
    return design(length, length / 2, alpha, opts, "ola-dpss");
}

std::pair<Window, SolveTrace> design_low_overlap(std::int64_t length,
                                                 std::int64_t overlap, double alpha,
                                                 const SolveOptions& opts) {
    return design(length, overlap, alpha, opts, "ola-dpss-low");
}

}  // namespace olawin
