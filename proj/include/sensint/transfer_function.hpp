#pragma once

#include <string>
#include <vector>

#include "sensint/polynomial.hpp"

namespace sensint {

/// Rational transfer function with a pure transport delay:
/// num(s) / den(s) * exp(-s * dead_time).
class TransferFunction {
public:
    TransferFunction();
    TransferFunction(Polynomial num, Polynomial den, double dead_time = 0.0);
    static TransferFunction constant(double k);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    double dead_time() const noexcept { return dead_time_; }

    /// Value anywhere in the complex plane; no pole check.
    Complex operator()(Complex s) const;
    /// Frequency response G(j*omega). Throws PoleOnAxis on an axis pole.
    Complex at_frequency(double omega) const;

    int relative_degree() const noexcept { return den_.degree() - num_.degree(); }
    bool is_proper() const noexcept { return relative_degree() >= 0; }

    RootSet poles(double tol = kDefaultRootTol, double rhp_tol = kDefaultRhpTol) const;
    RootSet zeros(double tol = kDefaultRootTol, double rhp_tol = kDefaultRhpTol) const;

private:
    Polynomial num_;
    Polynomial den_;
    double dead_time_ = 0.0;
};

Complex tf_eval(const TransferFunction& tf, double omega);

/// Product without pole-zero cancellation; dead times add.
TransferFunction series(const TransferFunction& a, const TransferFunction& b);

/// lim s*G(s) for relative degree one and no delay, 0 for relative degree
/// >= 2 or any delay. Biproper loops without delay have no finite limit and
/// throw NonconvergentIntegral; improper ones throw ImproperSystem.
double bode_gain_a(const TransferFunction& G);

/// True when den(j*omega) is zero to rounding.
bool axis_pole_at(const Polynomial& den, double omega);

/// One rational term with its own delay.
struct DelayedTerm {
    Polynomial num;
    double delay = 0.0;
};

/// Asymptotic term c * exp(-j*omega*delay) / (j*omega)^power.
struct AsymptoticTerm {
    double coeff = 0.0;
    double delay = 0.0;
    int power = 1;
};

/// Sum of delayed rational terms over one denominator:
/// sum_k num_k(s) exp(-s*delay_k) / den(s).
/// Carries plain loops as well as compensated forward paths whose delay does
/// not factor out of the whole expression.
class LoopTransfer {
public:
    LoopTransfer() = default;
    LoopTransfer(std::vector<DelayedTerm> terms, Polynomial den);
    LoopTransfer(const TransferFunction& tf);  // NOLINT(google-explicit-constructor)

    const std::vector<DelayedTerm>& terms() const noexcept { return terms_; }
    const Polynomial& den() const noexcept { return den_; }

    Complex operator()(Complex s) const;
    Complex at_frequency(double omega) const;

    /// Smallest relative degree over the terms.
    int relative_degree() const;
    bool is_rational() const noexcept { return terms_.size() == 1 && terms_.front().delay == 0.0; }
    bool has_delay() const noexcept;
    double max_delay() const noexcept;
    double min_positive_delay() const noexcept;
    /// The single-term view, when there is exactly one term.
    bool single_term() const noexcept { return terms_.size() == 1; }
    TransferFunction as_transfer_function() const;

    double bode_gain_a() const;
    /// Expansion of G(j*omega) in powers 1 and 2 of 1/(j*omega). Requires
    /// relative degree >= 1.
    std::vector<AsymptoticTerm> asymptotic_terms() const;
    /// Largest modulus of any pole or finite zero of any term.
    double root_scale() const;

private:
    std::vector<DelayedTerm> terms_;
    Polynomial den_{1.0};
};

/// Fractional parameter changes; each must exceed -1.
struct PerturbationSpec {
    double gain_pct = 0.0;
    double time_const_pct = 0.0;
    double dead_time_pct = 0.0;

    bool is_zero() const noexcept { return gain_pct == 0.0 && time_const_pct == 0.0 && dead_time_pct == 0.0; }
};

/// A polynomial factor. Time-constant factors are stretched by time
/// perturbations (coefficient k scales by (1+p)^k); fixed ones, such as an
/// integrator's s, are left alone.
struct Factor {
    Polynomial poly;
    bool time_constant = true;
};

/// Plant in gain * prod(num factors) / prod(den factors) * exp(-s*td) form,
/// so that perturbations act on physical parameters.
struct ParametricTransfer {
    double gain = 1.0;
    std::vector<Factor> num;
    std::vector<Factor> den;
    double dead_time = 0.0;

    TransferFunction to_transfer_function() const;
};

ParametricTransfer perturb(const ParametricTransfer& tf, const PerturbationSpec& spec);

}  // namespace sensint
