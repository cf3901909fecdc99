#include "sensint/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

namespace {

double checked_magnitude(const SensitivityModel& g, double omega) {
    const double m = g.magnitude(omega);
    if (!(m > 0.0) || !std::isfinite(m)) {
        std::ostringstream msg;
        msg << "|g| = " << m << " at omega = " << omega << " (open-loop pole on the axis)";
        fail(ErrorCode::PoleOnAxis, msg.str());
    }
    return m;
}

// Maximise |g| on [a, b] by golden-section search in log(omega).
std::pair<double, double> golden_max(const SensitivityModel& g, double a, double b) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(a);
    double hi = std::log(b);
    double x1 = hi - r * (hi - lo);
    double x2 = lo + r * (hi - lo);
    double f1 = g.magnitude(std::exp(x1));
    double f2 = g.magnitude(std::exp(x2));
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g.magnitude(std::exp(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g.magnitude(std::exp(x1));
        }
    }
    const double x = 0.5 * (lo + hi);
    return {std::exp(x), g.magnitude(std::exp(x))};
}

// Largest |g| near sample i: golden search over the two neighbouring cells.
std::pair<double, double> refine_peak(const SensitivityModel& g, const SweepSamples& s, std::size_t i) {
    const double a = s.omegas[i > 0 ? i - 1 : i];
    const double b = s.omegas[std::min(i + 1, s.size() - 1)];
    if (a == b) return {s.omegas[i], s.mags[i]};
    auto best = golden_max(g, a, b);
    if (best.second < s.mags[i]) best = {s.omegas[i], s.mags[i]};
    return best;
}

}  // namespace

SweepWindow default_window(const SensitivityModel& g, int points) {
    double ref = g.loop().root_scale();
    if (g.loop().has_delay()) ref = std::max(ref, 1.0 / g.loop().max_delay());
    if (!(ref > 0.0)) ref = 1.0;
    return {1e-4 * ref, 1e3 * ref, points};
}

SweepSamples sweep(const SensitivityModel& g, double omega_min, double omega_max, int points, double max_log_step) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min)) {
        fail(ErrorCode::InvalidArgument, "sweep window needs 0 < omega_min < omega_max");
    }
    if (points < 2) fail(ErrorCode::InvalidArgument, "sweep needs at least two points");

    std::vector<double> base(static_cast<std::size_t>(points));
    const double ratio = std::log(omega_max / omega_min);
    for (int i = 0; i < points; ++i) base[static_cast<std::size_t>(i)] = omega_min * std::exp(ratio * i / (points - 1));
    base.back() = omega_max;

    SweepSamples out;
    out.omegas.push_back(base.front());
    out.mags.push_back(checked_magnitude(g, base.front()));
    // depth-first densification between consecutive base points
    struct Cell {
        double w;
        double m;
        int depth;
    };
    for (std::size_t i = 1; i < base.size(); ++i) {
        std::vector<Cell> stack{{base[i], checked_magnitude(g, base[i]), 0}};
        while (!stack.empty()) {
            const Cell right = stack.back();
            const double wl = out.omegas.back();
            const double ml = out.mags.back();
            if (std::abs(std::log(right.m / ml)) > max_log_step && right.depth < 30) {
                const double wm = std::sqrt(wl * right.w);
                if (wm > wl && wm < right.w) {
                    stack.back().depth = right.depth + 1;
                    stack.push_back({wm, checked_magnitude(g, wm), right.depth + 1});
                    continue;
                }
            }
            out.omegas.push_back(right.w);
            out.mags.push_back(right.m);
            stack.pop_back();
        }
    }
    out.logs.reserve(out.mags.size());
    for (double m : out.mags) out.logs.push_back(std::log(m));
    return out;
}

SweepSamples sweep(const SensitivityModel& g, const SweepWindow& window) {
    return sweep(g, window.omega_min, window.omega_max, window.points);
}

SensitivityIndices extract_indices(const SensitivityModel& g, const SweepSamples& s, const IndexConfig& cfg) {
    if (s.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
    if (!(cfg.band_guard >= 0.0 && cfg.band_guard < 1.0)) fail(ErrorCode::InvalidArgument, "band_guard must be in [0, 1)");
    if (s.mags.front() >= 1.0) {
        std::ostringstream msg;
        msg << "|g| = " << s.mags.front() << " >= 1 already at omega = " << s.omegas.front();
        fail(ErrorCode::LowFrequencyAmplification, msg.str());
    }
    std::size_t up = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s.mags[i] >= 1.0) {
            up = i;
            break;
        }
    }
    if (up == 0) fail(ErrorCode::NoCrossover, "|g| stays below 1 over the whole sweep");

    SensitivityIndices idx;
    double lo = s.omegas[up - 1];
    double hi = s.omegas[up];
    while ((hi - lo) > cfg.crossing_rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (g.magnitude(mid) >= 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    idx.omega_cross = 0.5 * (lo + hi);
    idx.omega_c = cfg.band_edge ? *cfg.band_edge : (1.0 - cfg.band_guard) * idx.omega_cross;
    if (!(idx.omega_c > s.omegas.front())) {
        std::ostringstream msg;
        msg << "band edge " << idx.omega_c << " lies below the sweep start " << s.omegas.front();
        fail(ErrorCode::InvalidArgument, msg.str());
    }

    if (!cfg.band_edge && cfg.band_guard == 0.0) {
        idx.rho = 1.0;
    } else {
        // largest sample at or below omega_c, then refine if it is interior
        std::size_t best = 0;
        for (std::size_t i = 0; i < s.size() && s.omegas[i] <= idx.omega_c; ++i) {
            if (s.mags[i] > s.mags[best]) best = i;
        }
        idx.rho = g.magnitude(idx.omega_c);
        if (s.omegas[best] <= idx.omega_c && s.mags[best] > idx.rho) {
            const double a = s.omegas[best > 0 ? best - 1 : best];
            const double b = std::min(s.omegas[best + 1], idx.omega_c);
            idx.rho = a < b ? std::max(s.mags[best], golden_max(g, a, b).second) : s.mags[best];
        }
    }

    std::size_t peak = up;
    for (std::size_t i = up; i < s.size(); ++i) {
        if (s.mags[i] > s.mags[peak]) peak = i;
    }
    const auto [w_ms, m_ms] = refine_peak(g, s, peak);
    idx.omega_ms = w_ms;
    idx.s_max = m_ms;
    idx.stability_margin = 1.0 / idx.s_max;
    return idx;
}

}  // namespace sensint
