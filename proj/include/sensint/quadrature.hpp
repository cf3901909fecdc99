#pragma once

#include <functional>
#include <vector>

namespace sensint {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

/// 15-point Kronrod rule with its embedded 7-point Gauss rule on [a, b].
/// The error estimate follows the usual QUADPACK scaling. Non-finite
/// integrand values produce a non-finite estimate.
QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod integration over [breaks.front(),
/// breaks.back()]: the panel with the largest error is bisected until the
/// summed estimate drops below abs_tol or max_panels is reached. Panels are
/// summed in position order so the result does not depend on refinement
/// history. A panel that stays non-finite down to rounding width raises
/// AxisZeroDetected.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::vector<double> breaks,
                                    double abs_tol, int max_panels);

}  // namespace sensint
