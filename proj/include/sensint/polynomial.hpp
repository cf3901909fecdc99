#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sensint {

using Complex = std::complex<double>;

inline constexpr double kDefaultRootTol = 1e-9;
inline constexpr double kDefaultRhpTol = 1e-9;

/// Real polynomial in s with ascending coefficients: coeffs()[k] multiplies s^k.
/// Trailing zeros are trimmed on construction; the zero polynomial is {0}.
class Polynomial {
public:
    Polynomial();
    explicit Polynomial(std::vector<double> ascending);
    Polynomial(std::initializer_list<double> ascending);

    /// Monic-times-`lead` polynomial with the given roots. Complex roots must
    /// come in conjugate pairs; each pair is multiplied out as a real quadratic.
    static Polynomial from_roots(std::span<const Complex> roots, double lead = 1.0);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double leading() const noexcept { return coeffs_.back(); }
    double operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double max_abs_coeff() const noexcept;

    double operator()(double s) const noexcept;
    Complex operator()(Complex s) const noexcept;

    Polynomial derivative() const;
    Polynomial scaled(double factor) const;
    /// p(factor * s): coefficient k is multiplied by factor^k.
    Polynomial time_scaled(double factor) const;
    /// p(-s).
    Polynomial reflected() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Divides `p` by `divisor`; returns quotient and writes the remainder.
Polynomial divide(const Polynomial& p, const Polynomial& divisor, Polynomial* remainder = nullptr);

/// Roots of a real polynomial, classified against the imaginary axis.
class RootSet {
public:
    RootSet() = default;
    explicit RootSet(std::vector<Complex> roots, double rhp_tol = kDefaultRhpTol);

    const std::vector<Complex>& roots() const noexcept { return roots_; }
    const std::vector<std::size_t>& rhp() const noexcept { return rhp_; }
    const std::vector<std::size_t>& on_axis() const noexcept { return on_axis_; }
    double rhp_tol() const noexcept { return rhp_tol_; }
    bool empty() const noexcept { return roots_.empty(); }
    std::size_t size() const noexcept { return roots_.size(); }

    std::vector<Complex> rhp_roots() const;
    std::vector<Complex> on_axis_roots() const;
    /// A set holding only the open right-half-plane roots of this one.
    RootSet rhp_subset() const;
    /// Sum of the roots themselves (conjugate pairs contribute twice the real part).
    double real_sum() const noexcept;

private:
    std::vector<Complex> roots_;
    std::vector<std::size_t> rhp_;
    std::vector<std::size_t> on_axis_;
    double rhp_tol_ = kDefaultRhpTol;
};

/// All complex roots of `p` via companion-matrix eigenvalues followed by one
/// Newton polish step per root. Throws NoRoots for constants and
/// RootFindingFailed when a root's scaled residual exceeds `tol`.
RootSet poly_roots(const Polynomial& p, double tol = kDefaultRootTol, double rhp_tol = kDefaultRhpTol);

}  // namespace sensint
