#include "sensint/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

namespace {

void check_dead_time(double td) {
    if (!std::isfinite(td) || td < 0.0) {
        std::ostringstream msg;
        msg << "dead time must be finite and >= 0, got " << td;
        fail(ErrorCode::InvalidArgument, msg.str());
    }
}

// Leading two coefficients of num/den expanded in 1/s, starting at
// s^-(relative degree).
std::pair<double, double> laurent_head(const Polynomial& num, const Polynomial& den) {
    const int dn = num.degree();
    const int dd = den.degree();
    const double b0 = den[static_cast<std::size_t>(dd)];
    const double b1 = dd >= 1 ? den[static_cast<std::size_t>(dd - 1)] : 0.0;
    const double a0 = num[static_cast<std::size_t>(dn)];
    const double a1 = dn >= 1 ? num[static_cast<std::size_t>(dn - 1)] : 0.0;
    const double q0 = a0 / b0;
    const double q1 = (a1 - q0 * b1) / b0;
    return {q0, q1};
}

}  // namespace

bool axis_pole_at(const Polynomial& den, double omega) {
    const Complex s{0.0, omega};
    double scale = 0.0;
    double w = 1.0;
    for (double c : den.coeffs()) {
        scale += std::abs(c) * w;
        w *= std::abs(omega);
    }
    return std::abs(den(s)) <= 1e-14 * scale;
}

TransferFunction::TransferFunction() : num_{1.0}, den_{1.0} {}

TransferFunction::TransferFunction(Polynomial num, Polynomial den, double dead_time)
    : num_(std::move(num)), den_(std::move(den)), dead_time_(dead_time) {
    if (den_.is_zero()) fail(ErrorCode::InvalidArgument, "denominator is identically zero");
    check_dead_time(dead_time_);
}

TransferFunction TransferFunction::constant(double k) {
    return TransferFunction(Polynomial{k}, Polynomial{1.0});
}

Complex TransferFunction::operator()(Complex s) const {
    Complex value = num_(s) / den_(s);
    if (dead_time_ != 0.0) value *= std::exp(-s * dead_time_);
    return value;
}

Complex TransferFunction::at_frequency(double omega) const {
    if (axis_pole_at(den_, omega)) {
        std::ostringstream msg;
        msg << "denominator vanishes at omega = " << omega;
        fail(ErrorCode::PoleOnAxis, msg.str());
    }
    return (*this)(Complex{0.0, omega});
}

RootSet TransferFunction::poles(double tol, double rhp_tol) const {
    if (den_.degree() < 1) return RootSet({}, rhp_tol);
    return poly_roots(den_, tol, rhp_tol);
}

RootSet TransferFunction::zeros(double tol, double rhp_tol) const {
    if (num_.degree() < 1) return RootSet({}, rhp_tol);
    return poly_roots(num_, tol, rhp_tol);
}

Complex tf_eval(const TransferFunction& tf, double omega) {
    return tf.at_frequency(omega);
}

TransferFunction series(const TransferFunction& a, const TransferFunction& b) {
    return TransferFunction(a.num() * b.num(), a.den() * b.den(), a.dead_time() + b.dead_time());
}

double bode_gain_a(const TransferFunction& G) {
    return LoopTransfer(G).bode_gain_a();
}

LoopTransfer::LoopTransfer(std::vector<DelayedTerm> terms, Polynomial den)
    : terms_(std::move(terms)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorCode::InvalidArgument, "denominator is identically zero");
    if (terms_.empty()) terms_.push_back({Polynomial{}, 0.0});
    for (const DelayedTerm& t : terms_) check_dead_time(t.delay);
}

LoopTransfer::LoopTransfer(const TransferFunction& tf)
    : terms_{{tf.num(), tf.dead_time()}}, den_(tf.den()) {}

Complex LoopTransfer::operator()(Complex s) const {
    Complex acc = 0.0;
    for (const DelayedTerm& t : terms_) {
        Complex v = t.num(s);
        if (t.delay != 0.0) v *= std::exp(-s * t.delay);
        acc += v;
    }
    return acc / den_(s);
}

Complex LoopTransfer::at_frequency(double omega) const {
    if (axis_pole_at(den_, omega)) {
        std::ostringstream msg;
        msg << "denominator vanishes at omega = " << omega;
        fail(ErrorCode::PoleOnAxis, msg.str());
    }
    return (*this)(Complex{0.0, omega});
}

int LoopTransfer::relative_degree() const {
    int best = den_.degree();
    for (const DelayedTerm& t : terms_) {
        if (t.num.is_zero()) continue;
        best = std::min(best, den_.degree() - t.num.degree());
    }
    return best;
}

bool LoopTransfer::has_delay() const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [](const DelayedTerm& t) { return t.delay > 0.0; });
}

double LoopTransfer::max_delay() const noexcept {
    double m = 0.0;
    for (const DelayedTerm& t : terms_) m = std::max(m, t.delay);
    return m;
}

double LoopTransfer::min_positive_delay() const noexcept {
    double m = 0.0;
    for (const DelayedTerm& t : terms_) {
        if (t.delay > 0.0 && (m == 0.0 || t.delay < m)) m = t.delay;
    }
    return m;
}

TransferFunction LoopTransfer::as_transfer_function() const {
    if (!single_term()) fail(ErrorCode::InvalidArgument, "loop has more than one delayed term");
    return TransferFunction(terms_.front().num, den_, terms_.front().delay);
}

double LoopTransfer::bode_gain_a() const {
    const int rd = relative_degree();
    if (rd < 0) fail(ErrorCode::ImproperSystem, "loop transfer is improper");
    double a = 0.0;
    for (const DelayedTerm& t : terms_) {
        if (t.num.is_zero()) continue;
        const int term_rd = den_.degree() - t.num.degree();
        if (term_rd == 0 && t.delay == 0.0) {
            fail(ErrorCode::NonconvergentIntegral, "relative degree 0 without delay: lim s*G(s) is unbounded");
        }
        if (term_rd == 1 && t.delay == 0.0) a += t.num.leading() / den_.leading();
    }
    return a;
}

std::vector<AsymptoticTerm> LoopTransfer::asymptotic_terms() const {
    if (relative_degree() < 1) {
        fail(ErrorCode::NonconvergentIntegral, "relative degree 0: G does not vanish at high frequency");
    }
    std::vector<AsymptoticTerm> out;
    for (const DelayedTerm& t : terms_) {
        if (t.num.is_zero()) continue;
        const int rd = den_.degree() - t.num.degree();
        const auto [q0, q1] = laurent_head(t.num, den_);
        if (rd == 1) {
            out.push_back({q0, t.delay, 1});
            out.push_back({q1, t.delay, 2});
        } else if (rd == 2) {
            out.push_back({q0, t.delay, 2});
        }
    }
    return out;
}

double LoopTransfer::root_scale() const {
    double m = 0.0;
    auto scan = [&m](const Polynomial& p) {
        if (p.degree() < 1) return;
        const RootSet rs = poly_roots(p);
        for (const Complex& r : rs.roots()) m = std::max(m, std::abs(r));
    };
    scan(den_);
    for (const DelayedTerm& t : terms_) scan(t.num);
    return m;
}

TransferFunction ParametricTransfer::to_transfer_function() const {
    Polynomial num{gain};
    for (const Factor& f : this->num) num = num * f.poly;
    Polynomial den{1.0};
    for (const Factor& f : this->den) den = den * f.poly;
    return TransferFunction(num, den, dead_time);
}

ParametricTransfer perturb(const ParametricTransfer& tf, const PerturbationSpec& spec) {
    for (double p : {spec.gain_pct, spec.time_const_pct, spec.dead_time_pct}) {
        if (!std::isfinite(p) || p <= -1.0) {
            std::ostringstream msg;
            msg << "perturbation fraction must lie in (-1, inf), got " << p;
            fail(ErrorCode::InvalidArgument, msg.str());
        }
    }
    ParametricTransfer out = tf;
    out.gain *= 1.0 + spec.gain_pct;
    out.dead_time *= 1.0 + spec.dead_time_pct;
    const double stretch = 1.0 + spec.time_const_pct;
    for (Factor& f : out.num) {
        if (f.time_constant) f.poly = f.poly.time_scaled(stretch);
    }
    for (Factor& f : out.den) {
        if (f.time_constant) f.poly = f.poly.time_scaled(stretch);
        if (f.poly.is_zero()) fail(ErrorCode::DegeneratePlant, "perturbed denominator factor vanished");
    }
    if (out.gain == 0.0) fail(ErrorCode::DegeneratePlant, "perturbed gain is zero");
    return out;
}

}  // namespace sensint
