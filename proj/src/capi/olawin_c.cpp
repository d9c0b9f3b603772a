#include "olawin/olawin.h"

#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"
#include "core/kernel.hpp"
#include "core/ola.hpp"
#include "core/optimizer.hpp"
#include "core/spectrum.hpp"
#include "core/window.hpp"

struct olawin_window {
    olawin::Window w;
};

struct olawin_kernel {
    olawin::ConcentrationKernel k;
};

struct olawin_spectrum {
    olawin::SpectrumReport s;
};

namespace {

thread_local std::string g_last_error;

olawin_status fail(olawin_status code, const char* what) {
    g_last_error = what != nullptr ? what : "unknown error";
    return code;
}

// Runs the body and maps exceptions onto status codes.
template <typename Fn>
olawin_status guarded(Fn&& fn) {
    try {
        fn();
        return OLAWIN_OK;
    } catch (const std::invalid_argument& e) {
        return fail(OLAWIN_ERR_INVALID_ARGUMENT, e.what());
    } catch (const olawin::solver_error& e) {
        return fail(OLAWIN_ERR_SOLVER, e.what());
    } catch (const olawin::calibration_error& e) {
        return fail(OLAWIN_ERR_CALIBRATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(OLAWIN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OLAWIN_ERR_INTERNAL, e.what());
    }
}

olawin::SolveOptions to_core(const olawin_solve_options* opts) {
    olawin::SolveOptions o;
    if (opts != nullptr) {
        o.grad_tol = opts->grad_tol;
        o.obj_tol = opts->obj_tol;
        o.max_iters = opts->max_iters;
        o.enforce_symmetry = opts->enforce_symmetry != 0;
        o.multistart = opts->multistart;
        o.seed = opts->seed;
    }
    return o;
}

olawin_status require(bool ok, const char* what) {
    return ok ? OLAWIN_OK : fail(OLAWIN_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* olawin_version(void) { return "0.1.0"; }

const char* olawin_last_error(void) { return g_last_error.c_str(); }

olawin_status olawin_window_half_sine(int64_t length, olawin_window** out) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] { *out = new olawin_window{olawin::half_sine(length)}; });
}

olawin_status olawin_window_kbd(int64_t length, double alpha, olawin_window** out) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] { *out = new olawin_window{olawin::kbd(length, alpha)}; });
}

olawin_status olawin_window_dpss_unconstrained(int64_t length, double alpha,
                                               olawin_window** out) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded(
        [&] { *out = new olawin_window{olawin::dpss_unconstrained(length, alpha)}; });
}

olawin_status olawin_window_extend_flat(const olawin_window* core, int64_t length,
                                        olawin_window** out) {
    if (olawin_status s = require(core != nullptr && out != nullptr, "null argument"))
        return s;
    return guarded(
        [&] { *out = new olawin_window{olawin::extend_flat(core->w, length)}; });
}

void olawin_window_free(olawin_window* w) { delete w; }

int64_t olawin_window_length(const olawin_window* w) {
    return w != nullptr ? w->w.length() : 0;
}

int64_t olawin_window_overlap(const olawin_window* w) {
    return w != nullptr ? w->w.overlap : 0;
}

const char* olawin_window_label(const olawin_window* w) {
    return w != nullptr ? w->w.label.c_str() : "";
}

const double* olawin_window_samples(const olawin_window* w) {
    return w != nullptr ? w->w.samples.data() : nullptr;
}

olawin_status olawin_window_pb_residual(const olawin_window* w, double* max_abs,
                                        double* per_index) {
    if (olawin_status s = require(w != nullptr && max_abs != nullptr, "null argument"))
        return s;
    return guarded([&] {
        const olawin::PbResidual r = olawin::validate_princen_bradley(w->w);
        *max_abs = r.max_abs;
        if (per_index != nullptr)
            std::memcpy(per_index, r.per_index.data(),
                        r.per_index.size() * sizeof(double));
    });
}

void olawin_solve_options_default(olawin_solve_options* opts) {
    if (opts == nullptr) return;
    const olawin::SolveOptions d;
    opts->grad_tol = d.grad_tol;
    opts->obj_tol = d.obj_tol;
    opts->max_iters = d.max_iters;
    opts->enforce_symmetry = d.enforce_symmetry ? 1 : 0;
    opts->multistart = d.multistart;
    opts->seed = d.seed;
}

olawin_status olawin_design_ola_dpss(int64_t length, double alpha,
                                     const olawin_solve_options* opts,
                                     olawin_window** out, olawin_solve_trace* trace) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        auto [w, tr] = olawin::design_ola_dpss(length, alpha, to_core(opts));
        *out = new olawin_window{std::move(w)};
        if (trace != nullptr)
            *trace = {tr.iterations, tr.final_objective, tr.final_grad_norm,
                      tr.converged ? 1 : 0};
    });
}

olawin_status olawin_design_low_overlap(int64_t length, int64_t overlap, double alpha,
                                        const olawin_solve_options* opts,
                                        olawin_window** out, olawin_solve_trace* trace) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        auto [w, tr] = olawin::design_low_overlap(length, overlap, alpha, to_core(opts));
        *out = new olawin_window{std::move(w)};
        if (trace != nullptr)
            *trace = {tr.iterations, tr.final_objective, tr.final_grad_norm,
                      tr.converged ? 1 : 0};
    });
}

olawin_status olawin_kernel_create(int64_t length, double alpha, olawin_kernel** out) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] { *out = new olawin_kernel{olawin::build_toeplitz(length, alpha)}; });
}

void olawin_kernel_free(olawin_kernel* k) { delete k; }

int64_t olawin_kernel_length(const olawin_kernel* k) {
    return k != nullptr ? k->k.length : 0;
}

double olawin_kernel_alpha(const olawin_kernel* k) {
    return k != nullptr ? k->k.alpha : 0.0;
}

const double* olawin_kernel_entries(const olawin_kernel* k) {
    return k != nullptr ? k->k.entries.data() : nullptr;
}

olawin_status olawin_concentration(const olawin_window* w, const olawin_kernel* k,
                                   double* tau_linear, double* tau_db) {
    if (olawin_status s = require(w != nullptr && k != nullptr, "null argument"))
        return s;
    return guarded([&] {
        const olawin::ConcentrationReport r = olawin::concentration_ratio(w->w, k->k);
        if (tau_linear != nullptr) *tau_linear = r.tau_linear;
        if (tau_db != nullptr) *tau_db = r.tau_db;
    });
}

olawin_status olawin_spectrum_compute(const olawin_window* w, int pad_factor,
                                      olawin_spectrum** out) {
    if (olawin_status s = require(w != nullptr && out != nullptr, "null argument"))
        return s;
    return guarded(
        [&] { *out = new olawin_spectrum{olawin::magnitude_response(w->w, pad_factor)}; });
}

void olawin_spectrum_free(olawin_spectrum* s) { delete s; }

int64_t olawin_spectrum_bins(const olawin_spectrum* s) {
    return s != nullptr ? static_cast<int64_t>(s->s.bins.size()) : 0;
}

const double* olawin_spectrum_frequencies(const olawin_spectrum* s) {
    return s != nullptr ? s->s.bins.data() : nullptr;
}

const double* olawin_spectrum_magnitude_db(const olawin_spectrum* s) {
    return s != nullptr ? s->s.magnitude_db.data() : nullptr;
}

double olawin_spectrum_main_lobe_width(const olawin_spectrum* s) {
    return s != nullptr ? s->s.main_lobe_width : 0.0;
}

int64_t olawin_spectrum_side_lobe_count(const olawin_spectrum* s) {
    return s != nullptr ? static_cast<int64_t>(s->s.side_lobes.size()) : 0;
}

olawin_status olawin_spectrum_side_lobe(const olawin_spectrum* s, int64_t index,
                                        double* frequency, double* level_db) {
    if (olawin_status st = require(s != nullptr, "spectrum is null")) return st;
    if (index < 0 || index >= static_cast<int64_t>(s->s.side_lobes.size()))
        return fail(OLAWIN_ERR_INVALID_ARGUMENT, "side lobe index out of range");
    const olawin::SideLobe& lobe = s->s.side_lobes[static_cast<std::size_t>(index)];
    if (frequency != nullptr) *frequency = lobe.frequency;
    if (level_db != nullptr) *level_db = lobe.level_db;
    return OLAWIN_OK;
}

olawin_status olawin_match_main_lobe_alpha(const olawin_window* reference,
                                           olawin_family family, int64_t length,
                                           double tol, int pad_factor,
                                           const olawin_solve_options* opts,
                                           double* alpha_out) {
    if (olawin_status s =
            require(reference != nullptr && alpha_out != nullptr, "null argument"))
        return s;
    if (family != OLAWIN_FAMILY_KBD && family != OLAWIN_FAMILY_OLA_DPSS)
        return fail(OLAWIN_ERR_INVALID_ARGUMENT, "unknown window family");
    return guarded([&] {
        *alpha_out = olawin::match_main_lobe_alpha(
            reference->w,
            family == OLAWIN_FAMILY_KBD ? olawin::WindowFamily::kbd
                                        : olawin::WindowFamily::ola_dpss,
            length, tol, pad_factor, to_core(opts));
    });
}

olawin_status olawin_verify_reconstruction(const olawin_window* w,
                                           const double* signal, int64_t n,
                                           olawin_recon_report* out) {
    if (olawin_status s =
            require(w != nullptr && signal != nullptr && out != nullptr, "null argument"))
        return s;
    return guarded([&] {
        const olawin::ReconstructionReport r = olawin::verify_reconstruction(
            std::span<const double>(signal, static_cast<std::size_t>(n)), w->w);
        out->max_abs_error = r.max_abs_error;
        out->interior_begin = r.interior_range.first;
        out->interior_end = r.interior_range.second;
        out->square_sum_deviation = r.square_sum_deviation;
    });
}

olawin_status olawin_noise_signal(uint64_t seed, int64_t n, double* out) {
    if (olawin_status s = require(out != nullptr, "out is null")) return s;
    return guarded([&] {
        const std::vector<double> x = olawin::noise_signal(seed, n);
        std::memcpy(out, x.data(), x.size() * sizeof(double));
    });
}

}  // extern "C"
