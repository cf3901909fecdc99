#include "sensint/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

std::string_view to_string(SensitivityKind kind) {
    return kind == SensitivityKind::plain ? "plain" : "modified";
}

std::string_view to_string(SingularStrategy strategy) {
    switch (strategy) {
        case SingularStrategy::explicit_point: return "explicit";
        case SingularStrategy::open_loop_nmp_zero: return "open_loop_nmp_zero";
        case SingularStrategy::delay_heuristic: return "delay_heuristic";
    }
    return "unknown";
}

namespace {

Polynomial product_of_linear(const std::vector<Complex>& roots, bool negate_conj) {
    // prod (s - r) or prod (s + conj(r)); the latter has roots -conj(r).
    std::vector<Complex> z;
    z.reserve(roots.size());
    for (const Complex& r : roots) z.push_back(negate_conj ? -std::conj(r) : r);
    return Polynomial::from_roots(z);
}

// den(s) + sum num_k(s) exp(-s tau_k)
Complex characteristic(const LoopTransfer& G, Complex s) {
    Complex acc = G.den()(s);
    for (const DelayedTerm& t : G.terms()) {
        Complex v = t.num(s);
        if (t.delay != 0.0) v *= std::exp(-s * t.delay);
        acc += v;
    }
    return acc;
}

double characteristic_scale(const LoopTransfer& G, Complex s) {
    double scale = std::abs(G.den()(s));
    for (const DelayedTerm& t : G.terms()) scale += std::abs(t.num(s)) * std::exp(-s.real() * t.delay);
    return scale;
}

// Ascending coefficients of the Pade denominator P(s); exp(-s td) ~ P(-s)/P(s).
Polynomial pade_denominator(int n, double td) {
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    // c_k = (2n-k)! n! / ((2n)! k! (n-k)!) td^k, built by ratio to stay finite
    c[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        c[static_cast<std::size_t>(k)] =
            c[static_cast<std::size_t>(k - 1)] * td * static_cast<double>(n - k + 1) /
            (static_cast<double>(k) * static_cast<double>(2 * n - k + 1));
    }
    return Polynomial(std::move(c));
}

struct PhaseTracker {
    std::function<Complex(double)> f;
    int evaluations = 0;

    double change(double a, Complex fa, double b, Complex fb, int depth) {
        const double d = std::arg(fb / fa);
        if (std::abs(d) <= 0.3 || depth >= 60) return d;
        const double m = 0.5 * (a + b);
        const Complex fm = f(m);
        ++evaluations;
        return change(a, fa, m, fm, depth + 1) + change(m, fm, b, fb, depth + 1);
    }
};

double winding_estimate(const LoopTransfer& G) {
    const int n = G.den().degree();
    const double lead = G.den().leading();
    double ref = G.root_scale();
    if (G.has_delay()) ref = std::max(ref, 1.0 / G.min_positive_delay());
    if (ref <= 0.0) ref = 1.0;
    const double hi = 1e4 * ref;
    const double lo = 1e-8 * ref;

    PhaseTracker tracker;
    tracker.f = [&](double w) {
        const Complex s{0.0, w};
        const Complex q = characteristic(G, s);
        if (std::abs(q) <= 1e-13 * characteristic_scale(G, s)) {
            std::ostringstream msg;
            msg << "1 + G(jw) vanishes at omega = " << w;
            fail(ErrorCode::MarginallyStableLoop, msg.str());
        }
        return q / (std::pow(s + 1.0, n) * lead);
    };

    double total = 0.0;
    double prev_w = 0.0;
    Complex prev = tracker.f(0.0);
    const int per_decade = 200;
    const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
    for (int i = 0; i <= steps; ++i) {
        const double w = lo * std::pow(hi / lo, static_cast<double>(i) / steps);
        const Complex cur = tracker.f(w);
        total += tracker.change(prev_w, prev, w, cur, 0);
        prev_w = w;
        prev = cur;
    }
    return (-2.0 * total + 2.0 * std::arg(prev)) / (2.0 * std::numbers::pi);
}

}  // namespace

AllPass::AllPass(std::vector<Complex> alpha, std::vector<Complex> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    for (const auto* set : {&alpha_, &beta_}) {
        for (const Complex& r : *set) {
            if (!(r.real() > 0.0)) {
                std::ostringstream msg;
                msg << "all-pass factor needs an open right-half-plane root, got " << r;
                fail(ErrorCode::InvalidBlaschkeFactor, msg.str());
            }
        }
    }
}

Complex AllPass::operator()(Complex s) const {
    Complex k = 1.0;
    for (const Complex& a : alpha_) k *= (s + std::conj(a)) / (s - a);
    for (const Complex& b : beta_) k *= (s - b) / (s + std::conj(b));
    return k;
}

Polynomial AllPass::alpha_poles() const { return product_of_linear(alpha_, false); }
Polynomial AllPass::alpha_zeros() const { return product_of_linear(alpha_, true); }
Polynomial AllPass::beta_poles() const { return product_of_linear(beta_, true); }
Polynomial AllPass::beta_zeros() const { return product_of_linear(beta_, false); }

AllPass all_pass_kappa(const RootSet& alpha, const RootSet& beta) {
    for (const RootSet* set : {&alpha, &beta}) {
        for (const Complex& r : set->roots()) {
            if (!(r.real() > set->rhp_tol())) {
                std::ostringstream msg;
                msg << "root " << r << " is not in the open right half plane";
                fail(ErrorCode::InvalidBlaschkeFactor, msg.str());
            }
        }
    }
    return AllPass(alpha.roots(), beta.roots());
}

ClosedLoopPoles closed_loop_rhp_poles(const LoopTransfer& G, const ShapingConfig& cfg) {
    ClosedLoopPoles out;
    if (!G.has_delay()) {
        Polynomial chi = G.den();
        for (const DelayedTerm& t : G.terms()) chi = chi + t.num;
        out.exact = true;
        if (chi.degree() < 1) {
            out.beta = RootSet({}, cfg.rhp_tol);
            return out;
        }
        out.beta = poly_roots(chi, cfg.root_tol, cfg.rhp_tol).rhp_subset();
        out.winding_count = static_cast<int>(out.beta.size());
        out.winding_raw = out.winding_count;
        return out;
    }

    if (cfg.pade_order < 1) fail(ErrorCode::InvalidArgument, "Pade order must be >= 1");
    std::map<double, Polynomial> pade;
    for (const DelayedTerm& t : G.terms()) {
        if (t.delay > 0.0) pade.emplace(t.delay, pade_denominator(cfg.pade_order, t.delay));
    }
    Polynomial all{1.0};
    for (const auto& [td, p] : pade) all = all * p;
    Polynomial chi = G.den() * all;
    for (const DelayedTerm& t : G.terms()) {
        Polynomial term = t.num;
        for (const auto& [td, p] : pade) term = term * (td == t.delay ? p.reflected() : p);
        chi = chi + term;
    }
    const RootSet surrogate = poly_roots(chi, cfg.root_tol, cfg.rhp_tol);
    out.beta = surrogate.rhp_subset();
    out.winding_raw = winding_estimate(G);
    out.winding_count = static_cast<int>(std::lround(out.winding_raw));
    if (std::abs(out.winding_raw - out.winding_count) > 0.2 ||
        out.winding_count != static_cast<int>(out.beta.size())) {
        std::ostringstream msg;
        msg << "Pade surrogate (order " << cfg.pade_order << ") gives " << out.beta.size()
            << " RHP closed-loop poles, argument principle gives " << out.winding_raw;
        fail(ErrorCode::UnresolvedClosedLoopPoles, msg.str());
    }
    return out;
}

SensitivityModel::SensitivityModel(LoopTransfer loop, SensitivityKind kind, RootSet alpha, RootSet beta,
                                   RootSet zeta, AllPass kappa)
    : loop_(std::move(loop)),
      kind_(kind),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      zeta_(std::move(zeta)),
      kappa_(std::move(kappa)) {}

Complex SensitivityModel::operator()(Complex s) const {
    Complex g = loop_.den()(s) / characteristic(loop_, s);
    if (!kappa_.is_identity()) g *= kappa_(s);
    return g;
}

Complex SensitivityModel::at_frequency(double omega) const {
    const Complex s{0.0, omega};
    const Complex q = characteristic(loop_, s);
    if (std::abs(q) <= 1e-13 * characteristic_scale(loop_, s)) {
        std::ostringstream msg;
        msg << "1 + G(jw) vanishes at omega = " << omega;
        fail(ErrorCode::MarginallyStableLoop, msg.str());
    }
    Complex g = loop_.den()(s) / q;
    if (!kappa_.is_identity()) g *= kappa_(s);
    return g;
}

std::vector<double> SensitivityModel::axis_zeros() const {
    std::vector<double> out;
    if (loop_.den().degree() < 1) return out;
    for (const Complex& r : poly_roots(loop_.den()).on_axis_roots()) {
        if (r.imag() >= 0.0) out.push_back(r.imag());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              out.end());
    return out;
}

SensitivityModel make_sensitivity(const LoopTransfer& G, const ShapingConfig& cfg) {
    if (G.relative_degree() < 0) fail(ErrorCode::ImproperSystem, "open loop must be proper");
    RootSet alpha = G.den().degree() >= 1 ? poly_roots(G.den(), cfg.root_tol, cfg.rhp_tol).rhp_subset()
                                          : RootSet({}, cfg.rhp_tol);
    RootSet zeta({}, cfg.rhp_tol);
    if (G.single_term() && G.terms().front().num.degree() >= 1) {
        zeta = poly_roots(G.terms().front().num, cfg.root_tol, cfg.rhp_tol).rhp_subset();
    }
    RootSet beta = closed_loop_rhp_poles(G, cfg).beta;
    return SensitivityModel(G, SensitivityKind::plain, std::move(alpha), std::move(beta), std::move(zeta), AllPass{});
}

SensitivityModel modified_sensitivity(const SensitivityModel& m) {
    if (m.kind() != SensitivityKind::plain) fail(ErrorCode::InvalidArgument, "model is already modified");
    AllPass kappa = all_pass_kappa(m.alpha(), m.beta());
    const double tol = m.alpha().rhp_tol();
    return SensitivityModel(m.loop(), SensitivityKind::modified, RootSet({}, tol), RootSet({}, tol), m.zeta(),
                            std::move(kappa));
}

LoopTransfer modified_forward_path(const LoopTransfer& G, const AllPass& kappa) {
    if (kappa.is_identity()) return G;

    const Polynomial kd_alpha = kappa.alpha_poles();
    Polynomial rem;
    const Polynomial reduced = divide(G.den(), kd_alpha, &rem);
    if (rem.max_abs_coeff() > 1e-9 * G.den().max_abs_coeff()) {
        fail(ErrorCode::DegenerateCompensation, "kappa's alpha set is not a factor of the loop denominator");
    }
    for (const Complex& a : kappa.alpha()) {
        double num_scale = 0.0;
        for (const DelayedTerm& t : G.terms()) num_scale += std::abs(t.num(a));
        if (num_scale <= 1e-9 * std::max(1.0, G.den().max_abs_coeff())) {
            fail(ErrorCode::DegenerateCompensation, "an alpha root also zeroes the loop numerator");
        }
    }
    for (const Complex& b : kappa.beta()) {
        const Complex pole = -std::conj(b);
        if (std::abs(characteristic(G, pole)) <= 1e-9 * characteristic_scale(G, pole)) {
            fail(ErrorCode::DegenerateCompensation, "a pole of kappa coincides with a zero of 1 + G");
        }
    }

    const Polynomial kd = kappa.denominator();
    const Polynomial kn = kappa.numerator();
    std::vector<DelayedTerm> terms;
    terms.push_back({(kd - kn) * reduced, 0.0});
    for (const DelayedTerm& t : G.terms()) terms.push_back({t.num * kappa.beta_poles(), t.delay});
    return LoopTransfer(std::move(terms), kn * reduced);
}

TransferFunction reflect_unstable_poles(const TransferFunction& G, const ShapingConfig& cfg) {
    if (G.den().degree() < 1) return G;
    const std::vector<Complex> alpha = poly_roots(G.den(), cfg.root_tol, cfg.rhp_tol).rhp_roots();
    if (alpha.empty()) return G;
    const AllPass k(alpha, {});
    Polynomial rem;
    const Polynomial reduced = divide(G.den(), k.alpha_poles(), &rem);
    if (rem.max_abs_coeff() > 1e-9 * G.den().max_abs_coeff()) {
        fail(ErrorCode::DegenerateCompensation, "unstable factor did not divide the denominator");
    }
    return TransferFunction(G.num(), reduced * k.alpha_zeros(), G.dead_time());
}

SingularPoint resolve_singular_point(const SensitivityModel& m, std::optional<SingularPoint> explicit_point) {
    if (explicit_point) {
        if (!(explicit_point->sigma > 0.0)) fail(ErrorCode::InvalidArgument, "singular point needs sigma > 0");
        return *explicit_point;
    }
    if (!m.zeta().empty()) {
        const Complex z = m.zeta().roots().front();
        return {z.real(), z.imag(), SingularStrategy::open_loop_nmp_zero};
    }
    if (m.loop().has_delay()) return {2.0 / m.loop().max_delay(), 0.0, SingularStrategy::delay_heuristic};
    fail(ErrorCode::InvalidArgument, "loop has neither an NMP zero nor a delay; supply an explicit singular point");
}

}  // namespace sensint
