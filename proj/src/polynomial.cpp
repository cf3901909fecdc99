#include "sensint/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
    trim();
}

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) {
    trim();
}

void Polynomial::trim() {
    for (double c : coeffs_) {
        if (!std::isfinite(c)) fail(ErrorCode::InvalidArgument, "non-finite polynomial coefficient");
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double lead) {
    Polynomial result{lead};
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Complex r = roots[i];
        const double scale = std::max(1.0, std::abs(r));
        if (std::abs(r.imag()) <= 1e-12 * scale) {
            result = result * Polynomial{-r.real(), 1.0};
            continue;
        }
        // pair with the closest unused conjugate
        std::size_t best = roots.size();
        double best_dist = 0.0;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - std::conj(r));
            if (best == roots.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size() || best_dist > 1e-8 * scale) {
            fail(ErrorCode::InvalidArgument, "complex root without conjugate partner");
        }
        used[best] = true;
        const Complex m = 0.5 * (r + std::conj(roots[best]));
        result = result * Polynomial{std::norm(m), -2.0 * m.real(), 1.0};
    }
    return result;
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::operator()(double s) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Complex Polynomial::operator()(Complex s) const noexcept {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= factor;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::time_scaled(double factor) const {
    std::vector<double> c = coeffs_;
    double f = 1.0;
    for (double& v : c) {
        v *= f;
        f *= factor;
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::reflected() const {
    return time_scaled(-1.0);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b.scaled(-1.0);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial divide(const Polynomial& p, const Polynomial& divisor, Polynomial* remainder) {
    if (divisor.is_zero()) fail(ErrorCode::InvalidArgument, "division by the zero polynomial");
    std::vector<double> rem = p.coeffs();
    const int n = p.degree();
    const int m = divisor.degree();
    if (n < m) {
        if (remainder) *remainder = p;
        return Polynomial{};
    }
    std::vector<double> quot(static_cast<std::size_t>(n - m + 1), 0.0);
    for (int k = n - m; k >= 0; --k) {
        const double q = rem[static_cast<std::size_t>(k + m)] / divisor.leading();
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(std::max(m, 1)));
    if (remainder) *remainder = Polynomial(std::move(rem));
    return Polynomial(std::move(quot));
}

RootSet::RootSet(std::vector<Complex> roots, double rhp_tol) : roots_(std::move(roots)), rhp_tol_(rhp_tol) {
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        const double re = roots_[i].real();
        if (re > rhp_tol_) {
            rhp_.push_back(i);
        } else if (std::abs(re) <= rhp_tol_) {
            on_axis_.push_back(i);
        }
    }
}

std::vector<Complex> RootSet::rhp_roots() const {
    std::vector<Complex> out;
    for (std::size_t i : rhp_) out.push_back(roots_[i]);
    return out;
}

std::vector<Complex> RootSet::on_axis_roots() const {
    std::vector<Complex> out;
    for (std::size_t i : on_axis_) out.push_back(roots_[i]);
    return out;
}

RootSet RootSet::rhp_subset() const {
    return RootSet(rhp_roots(), rhp_tol_);
}

double RootSet::real_sum() const noexcept {
    Complex s = 0.0;
    for (const Complex& r : roots_) s += r;
    return s.real();
}

namespace {

// Snap near-real roots onto the real axis and make complex roots exact
// conjugate pairs.
void symmetrize(std::vector<Complex>& roots) {
    std::vector<bool> done(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (done[i]) continue;
        const double scale = std::max(1.0, std::abs(roots[i]));
        if (std::abs(roots[i].imag()) <= 1e-10 * scale) {
            roots[i] = {roots[i].real(), 0.0};
            done[i] = true;
            continue;
        }
        std::size_t best = roots.size();
        double best_dist = 0.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || done[j]) continue;
            const double d = std::abs(roots[j] - std::conj(roots[i]));
            if (best == roots.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        done[i] = true;
        if (best == roots.size()) continue;
        done[best] = true;
        const Complex m = 0.5 * (roots[i] + std::conj(roots[best]));
        roots[i] = m;
        roots[best] = std::conj(m);
    }
}

}  // namespace

RootSet poly_roots(const Polynomial& p, double tol, double rhp_tol) {
    const int degree = p.degree();
    if (degree < 1) fail(ErrorCode::NoRoots, "polynomial of degree 0 has no roots");

    std::vector<Complex> roots;
    // exact roots at the origin
    std::size_t low = 0;
    while (p[low] == 0.0) {
        roots.emplace_back(0.0, 0.0);
        ++low;
    }
    const int n = degree - static_cast<int>(low);
    if (n > 0) {
        // Substitute s = scale * t so the reduced polynomial has unit-size
        // constant and leading coefficients; improves companion conditioning.
        const double c0 = p[low];
        const double cn = p.leading();
        const double scale = std::pow(std::abs(c0 / cn), 1.0 / n);
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) {
            const double ci = p[low + static_cast<std::size_t>(i)] * std::pow(scale, i);
            companion(i, n - 1) = -ci / (cn * std::pow(scale, n));
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            fail(ErrorCode::RootFindingFailed, "companion eigen-decomposition did not converge");
        }
        const Eigen::VectorXcd eig = solver.eigenvalues();
        for (int i = 0; i < n; ++i) roots.push_back(eig(i) * scale);
    }

    const Polynomial dp = p.derivative();
    const double norm = p.max_abs_coeff();
    for (Complex& r : roots) {
        if (r == Complex{}) continue;
        const Complex d = dp(r);
        if (std::abs(d) == 0.0) continue;
        const Complex polished = r - p(r) / d;
        if (std::abs(p(polished)) < std::abs(p(r))) r = polished;
    }
    symmetrize(roots);

    for (const Complex& r : roots) {
        const double residual = std::abs(p(r));
        const double allowed = tol * norm * std::pow(std::max(1.0, std::abs(r)), degree);
        if (!(residual <= allowed)) {
            std::ostringstream msg;
            msg << "root " << r << " has residual " << residual << " > " << allowed
                << " (degree " << degree << ", companion + 1 Newton step)";
            fail(ErrorCode::RootFindingFailed, msg.str());
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return RootSet(std::move(roots), rhp_tol);
}

}  // namespace sensint
