// olawin-cli: generate, analyze, compare, calibrate, verify and sweep
// overlap-add windows through the olawin C interface.
//
// Exit codes: 0 success, 2 invalid arguments, 3 solver/calibration failure
// (partial results are still written), 4 I/O failure.
#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "olawin/olawin.h"

namespace {

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("OLA_WINDOWS_LOG");
        if (v == nullptr || *v == '\0') return 0;
        if (std::string(v) == "debug" || std::string(v) == "2") return 2;
        if (std::string(v) == "info" || std::string(v) == "1") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "olawin-cli: " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "olawin-cli[debug]: " << msg << "\n";
}

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

int map_status(olawin_status s) {
    switch (s) {
        case OLAWIN_OK:
            return 0;
        case OLAWIN_ERR_INVALID_ARGUMENT:
            return 2;
        case OLAWIN_ERR_SOLVER:
        case OLAWIN_ERR_CALIBRATION:
            return 3;
        default:
            return 4;
    }
}

void check(olawin_status s) {
    if (s != OLAWIN_OK) die(map_status(s), olawin_last_error());
}

struct WindowDeleter {
    void operator()(olawin_window* w) const { olawin_window_free(w); }
};
struct KernelDeleter {
    void operator()(olawin_kernel* k) const { olawin_kernel_free(k); }
};
struct SpectrumDeleter {
    void operator()(olawin_spectrum* s) const { olawin_spectrum_free(s); }
};
using WindowPtr = std::unique_ptr<olawin_window, WindowDeleter>;
using KernelPtr = std::unique_ptr<olawin_kernel, KernelDeleter>;
using SpectrumPtr = std::unique_ptr<olawin_spectrum, SpectrumDeleter>;

// 17 significant digits: enough to reproduce any double exactly on re-read.
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_alpha(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string json_number(double v) {
    if (std::isnan(v) || std::isinf(v)) return "null";
    return fmt17(v);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) die(4, "cannot open " + tmp + " for writing");
        f << content;
        if (!f.flush()) die(4, "write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) die(4, "cannot rename " + tmp + " to " + path + ": " + ec.message());
    log_info("wrote " + path);
}

// ---- shared parameters ----

struct SolverArgs {
    double grad_tol = 1e-10;
    std::int64_t max_iters = 10000;
    int multistart = 1;
    std::uint64_t seed = 1;

    olawin_solve_options to_options() const {
        olawin_solve_options o;
        olawin_solve_options_default(&o);
        o.grad_tol = grad_tol;
        o.max_iters = max_iters;
        o.multistart = multistart;
        o.seed = seed;
        return o;
    }
};

void add_solver_flags(CLI::App* cmd, SolverArgs& s) {
    cmd->add_option("--grad-tol", s.grad_tol, "solver gradient tolerance");
    cmd->add_option("--max-iters", s.max_iters, "solver iteration cap");
    cmd->add_option("--multistart", s.multistart, "number of solver starts");
    cmd->add_option("--seed", s.seed, "seed for noise and multistart perturbations");
}

const std::vector<std::string> kFamilies = {"half-sine", "kbd", "ola-dpss",
                                            "ola-dpss-low"};

bool family_needs_alpha(const std::string& family) { return family != "half-sine"; }

std::string window_display_label(const std::string& family, double alpha,
                                 std::int64_t length, std::int64_t overlap) {
    std::string base = family;
    if (family != "ola-dpss-low" && overlap < length / 2) base += "-low";
    if (family_needs_alpha(family)) base += "(alpha=" + fmt_alpha(alpha) + ")";
    return base;
}

struct BuiltWindow {
    WindowPtr win;
    std::string label;
    bool converged = true;
    olawin_solve_trace trace{};
    bool has_trace = false;
};

void validate_window_params(const std::string& family, std::int64_t length,
                            std::int64_t overlap, std::optional<double> alpha) {
    if (length < 2 || length % 2 != 0)
        die(2, "--length must be even and >= 2");
    if (overlap < 1 || overlap > length / 2)
        die(2, "--overlap must satisfy 1 <= T <= L/2");
    if (family_needs_alpha(family) && !alpha.has_value())
        die(2, "--alpha is required for family " + family);
    if (alpha.has_value() && family != "half-sine" && *alpha < 0.0)
        die(2, "--alpha must be nonnegative");
    if ((family == "ola-dpss" || family == "ola-dpss-low") && alpha.has_value() &&
        (*alpha <= 0.0 || *alpha >= static_cast<double>(length)))
        die(2, "--alpha must satisfy 0 < alpha < L for designed windows");
}

BuiltWindow build_window(const std::string& family, std::int64_t length,
                         std::int64_t overlap, std::optional<double> alpha,
                         const SolverArgs& solver) {
    validate_window_params(family, length, overlap, alpha);
    const double a = alpha.value_or(0.0);
    BuiltWindow out;
    out.label = window_display_label(family, a, length, overlap);
    log_debug("building " + out.label);

    olawin_window* raw = nullptr;
    if (family == "half-sine" || family == "kbd") {
        const bool full = overlap == length / 2;
        const std::int64_t core_len = full ? length : 2 * overlap;
        olawin_window* core = nullptr;
        if (family == "half-sine")
            check(olawin_window_half_sine(core_len, &core));
        else
            check(olawin_window_kbd(core_len, a, &core));
        if (full) {
            raw = core;
        } else {
            const olawin_status st = olawin_window_extend_flat(core, length, &raw);
            olawin_window_free(core);
            check(st);
        }
    } else {
        const olawin_solve_options opts = solver.to_options();
        olawin_solve_trace trace{};
        if (family == "ola-dpss" && overlap == length / 2)
            check(olawin_design_ola_dpss(length, a, &opts, &raw, &trace));
        else
            check(olawin_design_low_overlap(length, overlap, a, &opts, &raw, &trace));
        out.trace = trace;
        out.has_trace = true;
        out.converged = trace.converged != 0;
        if (!out.converged)
            log_info("solver did not converge for " + out.label + " after " +
                     std::to_string(trace.iterations) + " iterations");
        log_debug(out.label + ": " + std::to_string(trace.iterations) +
                  " iterations, objective " + fmt17(trace.final_objective));
    }
    out.win.reset(raw);
    return out;
}

// ---- serialization ----

std::string window_csv(const olawin_window* w) {
    std::ostringstream out;
    out << "index,value\n";
    const double* s = olawin_window_samples(w);
    const std::int64_t n = olawin_window_length(w);
    for (std::int64_t k = 0; k < n; ++k)
        out << (k + 1) << "," << fmt17(s[k]) << "\n";
    return out.str();
}

std::string window_json(const olawin_window* w, const std::string& label) {
    std::ostringstream out;
    out << "{\"label\":" << json_string(label)
        << ",\"length\":" << olawin_window_length(w)
        << ",\"overlap\":" << olawin_window_overlap(w) << ",\"samples\":[";
    const double* s = olawin_window_samples(w);
    const std::int64_t n = olawin_window_length(w);
    for (std::int64_t k = 0; k < n; ++k) {
        if (k > 0) out << ",";
        out << fmt17(s[k]);
    }
    out << "]}\n";
    return out.str();
}

std::string spectrum_csv(const olawin_spectrum* sp) {
    std::ostringstream out;
    out << "frequency,magnitude_db\n";
    const std::int64_t n = olawin_spectrum_bins(sp);
    const double* f = olawin_spectrum_frequencies(sp);
    const double* db = olawin_spectrum_magnitude_db(sp);
    for (std::int64_t j = 0; j < n; ++j)
        out << fmt17(f[j]) << "," << fmt17(db[j]) << "\n";
    return out.str();
}

std::string side_lobes_json(const olawin_spectrum* sp, std::int64_t limit = -1) {
    std::ostringstream out;
    std::int64_t count = olawin_spectrum_side_lobe_count(sp);
    if (limit >= 0 && count > limit) count = limit;
    out << "[";
    for (std::int64_t i = 0; i < count; ++i) {
        double f = 0.0, level = 0.0;
        check(olawin_spectrum_side_lobe(sp, i, &f, &level));
        if (i > 0) out << ",";
        out << "{\"frequency\":" << json_number(f)
            << ",\"level_db\":" << json_number(level) << "}";
    }
    out << "]";
    return out.str();
}

std::string spectrum_json(const olawin_spectrum* sp, const std::string& label,
                          int pad_factor) {
    std::ostringstream out;
    const std::int64_t n = olawin_spectrum_bins(sp);
    const double* f = olawin_spectrum_frequencies(sp);
    const double* db = olawin_spectrum_magnitude_db(sp);
    out << "{\"bins\":[";
    for (std::int64_t j = 0; j < n; ++j) {
        if (j > 0) out << ",";
        out << fmt17(f[j]);
    }
    out << "],\"magnitude_db\":[";
    for (std::int64_t j = 0; j < n; ++j) {
        if (j > 0) out << ",";
        out << fmt17(db[j]);
    }
    out << "],\"main_lobe_width\":" << json_number(olawin_spectrum_main_lobe_width(sp))
        << ",\"pad_factor\":" << pad_factor
        << ",\"side_lobes\":" << side_lobes_json(sp)
        << ",\"window_label\":" << json_string(label) << "}\n";
    return out.str();
}

std::string concentration_json(const std::string& label, double kernel_alpha,
                               double tau_linear, double tau_db) {
    std::ostringstream out;
    out << "{\"kernel_alpha\":" << json_number(kernel_alpha)
        << ",\"tau_db\":" << json_number(tau_db)
        << ",\"tau_linear\":" << json_number(tau_linear)
        << ",\"window_label\":" << json_string(label) << "}\n";
    return out.str();
}

std::string trace_json(const olawin_solve_trace& t) {
    std::ostringstream out;
    out << "{\"converged\":" << (t.converged ? "true" : "false")
        << ",\"final_grad_norm\":" << json_number(t.final_grad_norm)
        << ",\"final_objective\":" << json_number(t.final_objective)
        << ",\"iterations\":" << t.iterations << "}";
    return out.str();
}

// On solver non-convergence the command exits 3 but still writes its outputs
// plus a <out>.trace.json sidecar with the offending traces.
struct FailedTraces {
    std::vector<std::pair<std::string, olawin_solve_trace>> items;

    void note(const BuiltWindow& w) {
        if (w.has_trace && !w.converged) items.emplace_back(w.label, w.trace);
    }
    void write_sidecar(const std::string& out_path) const {
        if (items.empty()) return;
        std::ostringstream out;
        out << "[";
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i > 0) out << ",";
            out << "{\"label\":" << json_string(items[i].first)
                << ",\"trace\":" << trace_json(items[i].second) << "}";
        }
        out << "]\n";
        atomic_write(out_path + ".trace.json", out.str());
    }
};

// ---- subcommand payloads ----

struct CommonArgs {
    std::int64_t length = 0;
    std::int64_t overlap = 0;  // 0 means "default to L/2"
    std::optional<double> alpha;
    std::string family;
    int pad_factor = 16;
    std::string format = "csv";
    std::string out;
    SolverArgs solver;

    std::int64_t overlap_or_default() const {
        return overlap > 0 ? overlap : length / 2;
    }
};

int run_generate(const CommonArgs& args) {
    const std::int64_t t = args.overlap_or_default();
    BuiltWindow w = build_window(args.family, args.length, t, args.alpha, args.solver);
    atomic_write(args.out, args.format == "csv"
                               ? window_csv(w.win.get())
                               : window_json(w.win.get(), w.label));
    FailedTraces failed;
    failed.note(w);
    failed.write_sidecar(args.out);
    return w.converged ? 0 : 3;
}

int run_analyze(const CommonArgs& args, double kernel_alpha) {
    const std::int64_t t = args.overlap_or_default();
    BuiltWindow w = build_window(args.family, args.length, t, args.alpha, args.solver);

    olawin_kernel* kraw = nullptr;
    check(olawin_kernel_create(args.length, kernel_alpha, &kraw));
    KernelPtr kernel(kraw);
    double tau_linear = 0.0, tau_db = 0.0;
    check(olawin_concentration(w.win.get(), kernel.get(), &tau_linear, &tau_db));

    olawin_spectrum* sraw = nullptr;
    check(olawin_spectrum_compute(w.win.get(), args.pad_factor, &sraw));
    SpectrumPtr spectrum(sraw);

    atomic_write(args.out + ".spectrum." + args.format,
                 args.format == "csv"
                     ? spectrum_csv(spectrum.get())
                     : spectrum_json(spectrum.get(), w.label, args.pad_factor));
    atomic_write(args.out + ".concentration.json",
                 concentration_json(w.label, kernel_alpha, tau_linear, tau_db));
    FailedTraces failed;
    failed.note(w);
    failed.write_sidecar(args.out);
    return w.converged ? 0 : 3;
}

struct WindowSpecArg {
    std::string family;
    std::optional<double> alpha;
};

WindowSpecArg parse_window_spec(const std::string& spec) {
    WindowSpecArg w;
    const std::size_t colon = spec.find(':');
    w.family = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    bool known = false;
    for (const std::string& f : kFamilies) known = known || f == w.family;
    if (!known) die(2, "unknown window family in spec: " + spec);
    if (colon != std::string::npos) {
        try {
            std::size_t pos = 0;
            const std::string tail = spec.substr(colon + 1);
            w.alpha = std::stod(tail, &pos);
            if (pos != tail.size()) die(2, "bad alpha in window spec: " + spec);
        } catch (const CliError&) {
            throw;
        } catch (const std::exception&) {
            die(2, "bad alpha in window spec: " + spec);
        }
    }
    return w;
}

int run_compare(const CommonArgs& args, double kernel_alpha,
                const std::vector<std::string>& specs) {
    const std::int64_t t = args.overlap_or_default();
    if (specs.empty()) die(2, "compare needs at least one --window spec");

    std::vector<WindowSpecArg> parsed;
    for (const std::string& s : specs) parsed.push_back(parse_window_spec(s));
    for (const WindowSpecArg& w : parsed)
        validate_window_params(w.family, args.length, t, w.alpha);

    olawin_kernel* kraw = nullptr;
    check(olawin_kernel_create(args.length, kernel_alpha, &kraw));
    KernelPtr kernel(kraw);

    struct Row {
        std::string label;
        double tau_linear, tau_db, main_lobe_width;
        std::vector<double> lobes;
    };
    std::vector<Row> rows;
    bool all_converged = true;
    FailedTraces failed;
    for (const WindowSpecArg& spec : parsed) {
        BuiltWindow w =
            build_window(spec.family, args.length, t, spec.alpha, args.solver);
        all_converged = all_converged && w.converged;
        failed.note(w);
        Row row;
        row.label = w.label;
        check(olawin_concentration(w.win.get(), kernel.get(), &row.tau_linear,
                                   &row.tau_db));
        olawin_spectrum* sraw = nullptr;
        check(olawin_spectrum_compute(w.win.get(), args.pad_factor, &sraw));
        SpectrumPtr sp(sraw);
        row.main_lobe_width = olawin_spectrum_main_lobe_width(sp.get());
        const std::int64_t lobes =
            std::min<std::int64_t>(5, olawin_spectrum_side_lobe_count(sp.get()));
        for (std::int64_t i = 0; i < lobes; ++i) {
            double f = 0.0, level = 0.0;
            check(olawin_spectrum_side_lobe(sp.get(), i, &f, &level));
            row.lobes.push_back(level);
        }
        rows.push_back(std::move(row));
    }

    std::ostringstream out;
    if (args.format == "csv") {
        out << "label,tau_linear,tau_db,main_lobe_width,side_lobe_1_db,"
               "side_lobe_2_db,side_lobe_3_db,side_lobe_4_db,side_lobe_5_db\n";
        for (const Row& r : rows) {
            out << r.label << "," << fmt17(r.tau_linear) << "," << fmt17(r.tau_db)
                << "," << fmt17(r.main_lobe_width);
            for (std::size_t i = 0; i < 5; ++i)
                out << "," << (i < r.lobes.size() ? fmt17(r.lobes[i]) : "");
            out << "\n";
        }
    } else {
        out << "{\"kernel_alpha\":" << json_number(kernel_alpha)
            << ",\"length\":" << args.length << ",\"overlap\":" << t
            << ",\"pad_factor\":" << args.pad_factor << ",\"windows\":[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = rows[i];
            if (i > 0) out << ",";
            out << "{\"label\":" << json_string(r.label)
                << ",\"main_lobe_width\":" << json_number(r.main_lobe_width)
                << ",\"side_lobes_db\":[";
            for (std::size_t j = 0; j < r.lobes.size(); ++j) {
                if (j > 0) out << ",";
                out << json_number(r.lobes[j]);
            }
            out << "],\"tau_db\":" << json_number(r.tau_db)
                << ",\"tau_linear\":" << json_number(r.tau_linear) << "}";
        }
        out << "]}\n";
    }
    atomic_write(args.out, out.str());
    failed.write_sidecar(args.out);
    return all_converged ? 0 : 3;
}

int run_calibrate(const CommonArgs& args, double tol) {
    if (args.family != "kbd" && args.family != "ola-dpss")
        die(2, "calibrate supports --family kbd or ola-dpss");
    if (args.length < 2 || args.length % 2 != 0)
        die(2, "--length must be even and >= 2");

    olawin_window* ref = nullptr;
    check(olawin_window_half_sine(args.length, &ref));
    WindowPtr reference(ref);

    const olawin_solve_options opts = args.solver.to_options();
    double alpha = 0.0;
    const olawin_status st = olawin_match_main_lobe_alpha(
        reference.get(),
        args.family == "kbd" ? OLAWIN_FAMILY_KBD : OLAWIN_FAMILY_OLA_DPSS,
        args.length, tol, args.pad_factor, &opts, &alpha);
    if (st == OLAWIN_ERR_CALIBRATION) {
        std::ostringstream out;
        out << "{\"error\":" << json_string(olawin_last_error())
            << ",\"family\":" << json_string(args.family)
            << ",\"length\":" << args.length << "}\n";
        atomic_write(args.out, out.str());
        std::cerr << "olawin-cli: calibration failed: " << olawin_last_error() << "\n";
        return 3;
    }
    check(st);

    std::ostringstream out;
    out << "{\"alpha\":" << json_number(alpha)
        << ",\"family\":" << json_string(args.family)
        << ",\"length\":" << args.length << ",\"pad_factor\":" << args.pad_factor
        << ",\"reference_label\":\"half-sine\",\"tol\":" << json_number(tol) << "}\n";
    atomic_write(args.out, out.str());
    return 0;
}

std::vector<double> read_signal_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) die(4, "cannot open signal file " + path);
    std::string line;
    if (!std::getline(f, line)) die(2, "signal file is empty: " + path);
    std::vector<double> signal;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            die(2, "malformed signal row (expected index,value): " + line);
        try {
            signal.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            die(2, "malformed signal value in row: " + line);
        }
    }
    if (signal.empty()) die(2, "signal file has no samples: " + path);
    return signal;
}

int run_ola_verify(const CommonArgs& args, std::int64_t signal_len,
                   const std::string& signal_file) {
    const std::int64_t t = args.overlap_or_default();
    BuiltWindow w = build_window(args.family, args.length, t, args.alpha, args.solver);

    std::vector<double> signal;
    std::string source;
    if (!signal_file.empty()) {
        signal = read_signal_csv(signal_file);
        source = signal_file;
    } else {
        const std::int64_t n = signal_len > 0 ? signal_len : 10 * args.length;
        signal.resize(static_cast<std::size_t>(n));
        check(olawin_noise_signal(args.solver.seed, n, signal.data()));
        source = "noise(seed=" + std::to_string(args.solver.seed) + ")";
    }
    if (static_cast<std::int64_t>(signal.size()) < 2 * args.length)
        die(2, "signal must hold at least 2L samples");

    olawin_recon_report rep{};
    check(olawin_verify_reconstruction(w.win.get(), signal.data(),
                                       static_cast<std::int64_t>(signal.size()), &rep));

    std::ostringstream out;
    out << "{\"interior_begin\":" << rep.interior_begin
        << ",\"interior_end\":" << rep.interior_end
        << ",\"max_abs_error\":" << json_number(rep.max_abs_error)
        << ",\"signal_length\":" << signal.size()
        << ",\"signal_source\":" << json_string(source)
        << ",\"square_sum_deviation\":" << json_number(rep.square_sum_deviation)
        << ",\"window_label\":" << json_string(w.label) << "}\n";
    atomic_write(args.out, out.str());
    FailedTraces failed;
    failed.note(w);
    failed.write_sidecar(args.out);
    return w.converged ? 0 : 3;
}

int run_sweep(const CommonArgs& args, double kernel_alpha, double alpha_start,
              double alpha_stop, double alpha_step) {
    if (!(alpha_step > 0.0) || alpha_stop < alpha_start)
        die(2, "sweep needs alpha-start <= alpha-stop and alpha-step > 0");
    const std::int64_t t = args.overlap_or_default();

    olawin_kernel* kraw = nullptr;
    check(olawin_kernel_create(args.length, kernel_alpha, &kraw));
    KernelPtr kernel(kraw);

    std::ostringstream csv;
    std::ostringstream json;
    csv << "alpha,tau_linear,tau_db,main_lobe_width,first_side_lobe_db\n";
    json << "[";
    bool all_converged = true;
    bool first = true;
    FailedTraces failed;
    for (double a = alpha_start; a <= alpha_stop + 1e-12 * alpha_step; a += alpha_step) {
        BuiltWindow w = build_window(args.family, args.length, t, a, args.solver);
        all_converged = all_converged && w.converged;
        failed.note(w);
        double tau_linear = 0.0, tau_db = 0.0;
        check(olawin_concentration(w.win.get(), kernel.get(), &tau_linear, &tau_db));
        olawin_spectrum* sraw = nullptr;
        check(olawin_spectrum_compute(w.win.get(), args.pad_factor, &sraw));
        SpectrumPtr sp(sraw);
        double lobe_f = 0.0;
        double lobe_db = std::numeric_limits<double>::quiet_NaN();
        if (olawin_spectrum_side_lobe_count(sp.get()) > 0)
            check(olawin_spectrum_side_lobe(sp.get(), 0, &lobe_f, &lobe_db));
        const double width = olawin_spectrum_main_lobe_width(sp.get());

        csv << fmt17(a) << "," << fmt17(tau_linear) << "," << fmt17(tau_db) << ","
            << fmt17(width) << "," << json_number(lobe_db) << "\n";
        if (!first) json << ",";
        json << "{\"alpha\":" << json_number(a)
             << ",\"first_side_lobe_db\":" << json_number(lobe_db)
             << ",\"main_lobe_width\":" << json_number(width)
             << ",\"tau_db\":" << json_number(tau_db)
             << ",\"tau_linear\":" << json_number(tau_linear) << "}";
        first = false;
    }
    json << "]\n";
    atomic_write(args.out, args.format == "csv" ? csv.str() : json.str());
    failed.write_sidecar(args.out);
    return all_converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"overlap-add window design and evaluation"};
    app.require_subcommand(1);

    CommonArgs args;
    double kernel_alpha = 0.0;
    double tol = 1e-3;
    std::int64_t signal_len = 0;
    std::string signal_file;
    std::vector<std::string> window_specs;
    double alpha_start = 0.0, alpha_stop = 0.0, alpha_step = 0.0;
    double alpha_value = std::numeric_limits<double>::quiet_NaN();

    auto add_common = [&](CLI::App* cmd, bool need_family) {
        cmd->add_option("--length,-L", args.length, "window length L (even)")
            ->required();
        cmd->add_option("--overlap,-T", args.overlap,
                        "overlap length T (default L/2)");
        cmd->add_option("--alpha", alpha_value, "window shape parameter");
        if (need_family)
            cmd->add_option("--family", args.family, "window family")
                ->required()
                ->check(CLI::IsMember(kFamilies));
        cmd->add_option("--pad-factor", args.pad_factor, "zero-padding multiple")
            ->check(CLI::Range(4, 1 << 16));
        cmd->add_option("--format", args.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", args.out, "output path")->required();
        add_solver_flags(cmd, args.solver);
    };

    CLI::App* generate = app.add_subcommand("generate", "write a window file");
    add_common(generate, true);

    CLI::App* analyze =
        app.add_subcommand("analyze", "spectrum and concentration reports");
    add_common(analyze, true);
    analyze->add_option("--kernel-alpha", kernel_alpha, "concentration kernel alpha")
        ->required();

    CLI::App* compare =
        app.add_subcommand("compare", "tau/lobe table for several windows");
    add_common(compare, false);
    compare->add_option("--kernel-alpha", kernel_alpha, "concentration kernel alpha")
        ->required();
    compare
        ->add_option("--window", window_specs,
                     "window spec family[:alpha], repeatable")
        ->required();

    CLI::App* calibrate =
        app.add_subcommand("calibrate", "match a family's alpha to the half-sine");
    calibrate->add_option("--length,-L", args.length, "window length L (even)")
        ->required();
    calibrate->add_option("--family", args.family, "window family")
        ->required()
        ->check(CLI::IsMember({"kbd", "ola-dpss"}));
    calibrate->add_option("--tol", tol, "width match tolerance");
    calibrate->add_option("--pad-factor", args.pad_factor, "zero-padding multiple")
        ->check(CLI::Range(4, 1 << 16));
    calibrate->add_option("--out", args.out, "output path")->required();
    add_solver_flags(calibrate, args.solver);

    CLI::App* ola_verify =
        app.add_subcommand("ola-verify", "round-trip reconstruction report");
    add_common(ola_verify, true);
    ola_verify->add_option("--signal-len", signal_len,
                           "generated noise length (default 10L)");
    ola_verify->add_option("--signal-file", signal_file,
                           "CSV signal (index,value) instead of noise");

    CLI::App* sweep = app.add_subcommand("sweep", "alpha sweep report");
    add_common(sweep, true);
    sweep->add_option("--kernel-alpha", kernel_alpha, "concentration kernel alpha")
        ->required();
    sweep->add_option("--alpha-start", alpha_start, "sweep start")->required();
    sweep->add_option("--alpha-stop", alpha_stop, "sweep stop")->required();
    sweep->add_option("--alpha-step", alpha_step, "sweep step")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (!std::isnan(alpha_value)) args.alpha = alpha_value;

    try {
        if (generate->parsed()) return run_generate(args);
        if (analyze->parsed()) return run_analyze(args, kernel_alpha);
        if (compare->parsed()) return run_compare(args, kernel_alpha, window_specs);
        if (calibrate->parsed()) return run_calibrate(args, tol);
        if (ola_verify->parsed()) return run_ola_verify(args, signal_len, signal_file);
        if (sweep->parsed())
            return run_sweep(args, kernel_alpha, alpha_start, alpha_stop, alpha_step);
    } catch (const CliError& e) {
        std::cerr << "olawin-cli: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "olawin-cli: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
