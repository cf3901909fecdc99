#pragma once

#include <functional>

#include "sensint/sensitivity.hpp"

namespace sensint {

struct QuadratureConfig {
    double abs_tol = 1e-6;
    int max_panels = 400000;
    /// Upper limit of the numerically integrated Bode range; 0 selects
    /// max(100 * largest root modulus, 200*pi / dead time), doubled until the
    /// tail estimate is below abs_tol / 2.
    double bode_omega_max = 0.0;
    int pade_order = 6;
    /// Forced break points per delay oscillation period 2*pi/td.
    int panels_per_period = 8;
    /// For eta = 0, integrate [0, inf) and double.
    bool exploit_symmetry = true;
};

/// Numerical left-hand side against its analytic right-hand side.
struct IntegralResult {
    double lhs_numeric = 0.0;
    double rhs_analytic = 0.0;
    double residual = 0.0;
    double tail_bound = 0.0;
    double quadrature_error = 0.0;
    int panels_used = 0;
};

/// Poisson kernel sigma / (sigma^2 + (omega - eta)^2).
double poisson_kernel(const SingularPoint& sp, double omega);

/// Integral over the whole line of f(omega) times the Poisson kernel, after
/// omega = eta + sigma*tan(theta). For bounded f.
double poisson_weighted(const std::function<double(double)>& f, const SingularPoint& sp,
                        const QuadratureConfig& cfg = {});

/// Integral over the whole line of ln|g(j omega)| times the Poisson kernel.
/// The truncation point is chosen so the neglected tails are below
/// abs_tol / 4; a relative-degree-zero delayed loop has its bounded
/// high-frequency part integrated in closed form.
IntegralResult poisson_integral(const SensitivityModel& g, const SingularPoint& sp, const QuadratureConfig& cfg = {});

/// Plain kind: pi ln|g(s0)| - pi sum ln|(s0 - a)/(s0 + conj a)| - pi sum ln|(s0 + conj b)/(s0 - b)|,
/// with the ln|g(s0)| term dropped at an open-loop NMP zero.
/// Modified kind: pi ln|g~(s0)|.
double poisson_rhs(const SensitivityModel& g, const SingularPoint& sp);

/// Integral of ln|g(j omega)| over [0, inf) against
/// -a*pi/2 + pi*sum(alpha) - pi*sum(beta).
IntegralResult bode_integral(const SensitivityModel& g, const QuadratureConfig& cfg = {});

/// Right-hand side of the Bode integral, including the sets reflected into
/// kappa for the modified kind.
double bode_rhs(const SensitivityModel& g);

/// Integral over [W, inf) of sin(u)/u, for W >= 50.
double sine_integral_tail(double x);

}  // namespace sensint
