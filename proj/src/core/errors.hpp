#ifndef OLAWIN_CORE_ERRORS_HPP
#define OLAWIN_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace olawin {

// Thrown when an iterative solver stops without reaching its accuracy target.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Thrown when alpha calibration cannot bracket the requested main-lobe width.
class calibration_error : public std::runtime_error {
public:
    calibration_error(const std::string& msg, double bracket_lo, double bracket_hi)
        : std::runtime_error(msg), lo_(bracket_lo), hi_(bracket_hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace olawin

#endif
