#include "sensint/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sensint/errors.hpp"
#include "sensint/quadrature.hpp"

namespace sensint {

namespace {

constexpr double kPi = std::numbers::pi;

// High-frequency limits c_k of the relative-degree-zero terms. ln|1 + sum
// c_k exp(-s tau_k)| is bounded and harmonic in the closed RHP when the
// delayed part cannot cancel the undelayed one.
struct HarmonicPart {
    std::vector<double> coeff;  // per term, 0 for strictly proper terms
    double margin = 1.0;        // |1 + sum undelayed c| - sum |delayed c|
    bool active = false;

    Complex value(const LoopTransfer& G, Complex s) const {
        Complex acc = 1.0;
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            if (coeff[k] == 0.0) continue;
            const double tau = G.terms()[k].delay;
            acc += coeff[k] * (tau != 0.0 ? std::exp(-s * tau) : Complex{1.0});
        }
        return acc;
    }
};

HarmonicPart harmonic_part(const LoopTransfer& G) {
    HarmonicPart h;
    h.coeff.assign(G.terms().size(), 0.0);
    double undelayed = 1.0;
    double delayed = 0.0;
    for (std::size_t k = 0; k < G.terms().size(); ++k) {
        const DelayedTerm& t = G.terms()[k];
        if (t.num.is_zero() || t.num.degree() != G.den().degree()) continue;
        const double c = t.num.leading() / G.den().leading();
        h.coeff[k] = c;
        h.active = true;
        if (t.delay == 0.0) {
            undelayed += c;
        } else {
            delayed += std::abs(c);
        }
    }
    h.margin = std::abs(undelayed) - delayed;
    return h;
}

// Upper bound on |G(jw) - (harmonic limit)| / margin.
double remainder_envelope(const LoopTransfer& G, const HarmonicPart& h, double omega) {
    const Complex s{0.0, omega};
    const double den = std::abs(G.den()(s));
    double acc = 0.0;
    for (std::size_t k = 0; k < G.terms().size(); ++k) {
        const Polynomial& num = G.terms()[k].num;
        acc += h.coeff[k] != 0.0 ? std::abs(num(s) - h.coeff[k] * G.den()(s)) : std::abs(num(s));
    }
    return acc / den / h.margin;
}

double log_bound(double e) {
    return e < 1.0 ? -std::log1p(-e) : INFINITY;
}

void append_periodic_breaks(std::vector<double>& out, double lo, double hi, double spacing,
                            const std::function<double(double)>& map) {
    if (!(spacing > 0.0)) return;
    const double first = std::ceil(lo / spacing) * spacing;
    for (double w = first; w < hi; w += spacing) out.push_back(map(w));
}

void check_singular_point(const SingularPoint& sp) {
    if (!(sp.sigma > 0.0) || !std::isfinite(sp.sigma) || !std::isfinite(sp.eta)) {
        fail(ErrorCode::InvalidArgument, "singular point must have finite sigma > 0");
    }
}

}  // namespace

double poisson_kernel(const SingularPoint& sp, double omega) {
    const double d = omega - sp.eta;
    return sp.sigma / (sp.sigma * sp.sigma + d * d);
}

double poisson_weighted(const std::function<double(double)>& f, const SingularPoint& sp,
                        const QuadratureConfig& cfg) {
    check_singular_point(sp);
    const auto integrand = [&](double theta) { return f(sp.eta + sp.sigma * std::tan(theta)); };
    const QuadratureResult r = integrate_adaptive(integrand, {-kPi / 2, -std::atan(sp.eta / sp.sigma), kPi / 2},
                                                  cfg.abs_tol, cfg.max_panels);
    return r.value;
}

IntegralResult poisson_integral(const SensitivityModel& g, const SingularPoint& sp, const QuadratureConfig& cfg) {
    check_singular_point(sp);
    if (!(cfg.abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "abs_tol must be positive");
    const LoopTransfer& G = g.loop();
    const HarmonicPart h = harmonic_part(G);
    if (h.active && !(h.margin > 0.0)) {
        fail(ErrorCode::NonconvergentIntegral,
             "high-frequency loop gain of the delayed terms reaches 1: ln|g| has no harmonic limit");
    }

    // truncation frequency from the remainder envelope
    const double scale = std::max({G.root_scale(), sp.sigma + std::abs(sp.eta), 1e-12});
    double omega_cut = 10.0 * scale;
    double tail = INFINITY;
    for (int iter = 0; iter < 200; ++iter) {
        double sup = 0.0;
        for (int k = 0; k <= 40; ++k) sup = std::max(sup, remainder_envelope(G, h, omega_cut * std::pow(2.0, k)));
        const double mass = (kPi / 2 - std::atan((omega_cut - sp.eta) / sp.sigma)) +
                            (kPi / 2 - std::atan((omega_cut + sp.eta) / sp.sigma));
        tail = mass * log_bound(1.1 * sup);
        if (tail <= cfg.abs_tol / 4) break;
        omega_cut *= 1.5;
    }
    if (!(tail <= cfg.abs_tol / 4)) {
        fail(ErrorCode::NonconvergentIntegral, "could not bound the Poisson tail");
    }

    const auto remainder = [&](double omega) {
        const Complex s{0.0, omega};
        double v = std::log(std::abs(g.at_frequency(omega)));
        if (h.active) v += std::log(std::abs(h.value(G, s)));
        return v;
    };
    const auto integrand = [&](double theta) { return remainder(sp.eta + sp.sigma * std::tan(theta)); };
    const auto to_theta = [&](double omega) { return std::atan((omega - sp.eta) / sp.sigma); };

    const bool half = cfg.exploit_symmetry && sp.eta == 0.0;
    const double w_lo = half ? 0.0 : -omega_cut;
    const double w_hi = omega_cut;
    std::vector<double> breaks{to_theta(w_lo), to_theta(w_hi)};
    if (w_lo < 0.0) breaks.push_back(to_theta(0.0));
    for (double z : g.axis_zeros()) {
        if (z < w_hi) breaks.push_back(to_theta(z));
        if (-z > w_lo) breaks.push_back(to_theta(-z));
    }
    if (G.has_delay()) {
        double spacing = 2.0 * kPi / (cfg.panels_per_period * G.max_delay());
        const double needed = (w_hi - w_lo) / spacing;
        if (needed > cfg.max_panels / 2.0) spacing = (w_hi - w_lo) / (cfg.max_panels / 2.0);
        append_periodic_breaks(breaks, w_lo, w_hi, spacing, to_theta);
    }

    const double quad_tol = (half ? 0.5 : 1.0) * 0.75 * cfg.abs_tol;
    const QuadratureResult q = integrate_adaptive(integrand, breaks, quad_tol, cfg.max_panels);
    if (q.error > 10.0 * quad_tol) {
        std::ostringstream msg;
        msg << "Poisson quadrature stalled at error " << q.error << " with " << q.panels << " panels";
        fail(ErrorCode::NonconvergentIntegral, msg.str());
    }

    IntegralResult out;
    out.lhs_numeric = (half ? 2.0 : 1.0) * q.value;
    if (h.active) out.lhs_numeric -= kPi * std::log(std::abs(h.value(G, sp.value())));
    out.rhs_analytic = poisson_rhs(g, sp);
    out.residual = out.lhs_numeric - out.rhs_analytic;
    out.tail_bound = tail;
    out.quadrature_error = (half ? 2.0 : 1.0) * q.error;
    out.panels_used = q.panels;
    return out;
}

double poisson_rhs(const SensitivityModel& g, const SingularPoint& sp) {
    check_singular_point(sp);
    const Complex s0 = sp.value();
    auto coincide = [&](const Complex& r) { return std::abs(s0 - r) <= 1e-9 * std::max(1.0, std::abs(r)); };
    for (const auto* set : {&g.alpha().roots(), &g.beta().roots(), &g.kappa().alpha(), &g.kappa().beta()}) {
        for (const Complex& r : *set) {
            if (coincide(r)) {
                std::ostringstream msg;
                msg << "singular point " << s0 << " coincides with " << r;
                fail(ErrorCode::SingularCoincidence, msg.str());
            }
        }
    }
    if (g.kind() == SensitivityKind::modified) return kPi * std::log(std::abs(g(s0)));

    double rhs = 0.0;
    if (sp.strategy != SingularStrategy::open_loop_nmp_zero) rhs += kPi * std::log(std::abs(g(s0)));
    for (const Complex& a : g.alpha().roots()) rhs -= kPi * std::log(std::abs((s0 - a) / (s0 + std::conj(a))));
    for (const Complex& b : g.beta().roots()) rhs -= kPi * std::log(std::abs((s0 + std::conj(b)) / (s0 - b)));
    return rhs;
}

double bode_rhs(const SensitivityModel& g) {
    const double a = g.loop().bode_gain_a();
    Complex alpha_sum = 0.0;
    Complex beta_sum = 0.0;
    for (const Complex& r : g.alpha().roots()) alpha_sum += r;
    for (const Complex& r : g.kappa().alpha()) alpha_sum += r;
    for (const Complex& r : g.beta().roots()) beta_sum += r;
    for (const Complex& r : g.kappa().beta()) beta_sum += r;
    return -a * kPi / 2 + kPi * alpha_sum.real() - kPi * beta_sum.real();
}

double sine_integral_tail(double x) {
    if (!(x >= 50.0)) fail(ErrorCode::InvalidArgument, "asymptotic sine-integral tail needs x >= 50");
    const double x2 = 1.0 / (x * x);
    // f(x) ~ (1/x)(1 - 2!/x^2 + 4!/x^4 - ...), g(x) ~ (1/x^2)(1 - 3!/x^2 + 5!/x^4 - ...)
    const double f = (1.0 - x2 * (2.0 - x2 * (24.0 - x2 * (720.0 - x2 * 40320.0)))) / x;
    const double gg = x2 * (1.0 - x2 * (6.0 - x2 * (120.0 - x2 * (5040.0 - x2 * 362880.0))));
    return f * std::cos(x) + gg * std::sin(x);
}

IntegralResult bode_integral(const SensitivityModel& g, const QuadratureConfig& cfg) {
    const LoopTransfer& G = g.loop();
    if (G.relative_degree() < 1) {
        fail(ErrorCode::NonconvergentIntegral, "relative degree 0: ln|g(jw)| does not decay, the Bode integral diverges");
    }
    const double rhs = bode_rhs(g);

    std::vector<AsymptoticTerm> expansion = G.asymptotic_terms();
    const std::size_t first_order = expansion.size();
    for (std::size_t i = 0; i < first_order; ++i) {
        for (std::size_t j = 0; j < first_order; ++j) {
            if (expansion[i].power != 1 || expansion[j].power != 1) continue;
            expansion.push_back({-0.5 * expansion[i].coeff * expansion[j].coeff,
                                 expansion[i].delay + expansion[j].delay, 2});
        }
    }

    const auto expansion_value = [&](double omega) {
        const Complex jw{0.0, omega};
        Complex acc = 0.0;
        for (const AsymptoticTerm& t : expansion) {
            Complex v = t.coeff / std::pow(jw, t.power);
            if (t.delay != 0.0) v *= std::exp(-jw * t.delay);
            acc += v;
        }
        return -acc.real();
    };

    const auto residual_on = [&](double w_lo) {
        double m = 0.0;
        for (int k = 0; k <= 32; ++k) {
            const double w = w_lo * (1.0 + k / 32.0);
            m = std::max(m, std::abs(g.log_magnitude(w) - expansion_value(w)));
        }
        return m;
    };

    double w_max = cfg.bode_omega_max;
    const bool automatic = !(w_max > 0.0);
    if (automatic) {
        w_max = 100.0 * std::max(G.root_scale(), 1e-12);
        if (G.has_delay()) w_max = std::max(w_max, 200.0 * kPi / G.max_delay());
    }
    if (G.has_delay()) w_max = std::max(w_max, 100.0 / G.min_positive_delay());
    double residual_max = residual_on(w_max);
    for (int grow = 0; automatic && grow < 20 && w_max * residual_max > cfg.abs_tol / 2; ++grow) {
        w_max *= 2.0;
        residual_max = residual_on(w_max);
    }

    double tail = 0.0;
    for (const AsymptoticTerm& t : expansion) {
        double piece = 0.0;
        if (t.power == 1) {
            if (t.delay != 0.0) piece = -t.coeff * sine_integral_tail(t.delay * w_max);
        } else {
            if (t.delay == 0.0) {
                piece = -t.coeff / w_max;
            } else {
                const double x = t.delay * w_max;
                piece = -t.coeff * t.delay * (std::cos(x) / x - sine_integral_tail(x));
            }
        }
        tail -= piece;
    }
    std::vector<double> breaks{0.0, w_max};
    for (double z : g.axis_zeros()) {
        if (z > 0.0 && z < w_max) breaks.push_back(z);
    }
    if (G.has_delay()) {
        double spacing = 2.0 * kPi / (cfg.panels_per_period * G.max_delay());
        if (w_max / spacing > cfg.max_panels / 2.0) spacing = w_max / (cfg.max_panels / 2.0);
        append_periodic_breaks(breaks, 0.0, w_max, spacing, [](double w) { return w; });
    }
    const auto integrand = [&](double omega) { return g.log_magnitude(omega); };
    const double quad_tol = cfg.abs_tol / 2;
    const QuadratureResult q = integrate_adaptive(integrand, breaks, quad_tol, cfg.max_panels);
    if (q.error > 10.0 * quad_tol) {
        std::ostringstream msg;
        msg << "Bode quadrature stalled at error " << q.error << " with " << q.panels << " panels";
        fail(ErrorCode::NonconvergentIntegral, msg.str());
    }

    IntegralResult out;
    out.lhs_numeric = q.value + tail;
    out.rhs_analytic = rhs;
    out.residual = out.lhs_numeric - out.rhs_analytic;
    out.tail_bound = w_max * residual_max;
    out.quadrature_error = q.error;
    out.panels_used = q.panels;
    return out;
}

}  // namespace sensint
