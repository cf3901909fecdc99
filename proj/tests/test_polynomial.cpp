#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "sensint/errors.hpp"
#include "sensint/polynomial.hpp"

using namespace sensint;

namespace {

double closest(const RootSet& rs, Complex target) {
    double best = INFINITY;
    for (const Complex& r : rs.roots()) best = std::min(best, std::abs(r - target));
    return best;
}

}  // namespace

TEST_CASE("linear factor has its single root") {
    const RootSet rs = poly_roots(Polynomial{-2.0, 1.0});
    REQUIRE(rs.size() == 1);
    CHECK(rs.roots()[0].real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rs.rhp().size() == 1);
}

TEST_CASE("CSTR denominator matches the quadratic formula") {
    const double a2 = 279.03, a1 = -2.9781, a0 = 1.0;
    const double re = -a1 / (2 * a2);
    const double im = std::sqrt(4 * a2 * a0 - a1 * a1) / (2 * a2);
    const RootSet rs = poly_roots(Polynomial{a0, a1, a2});
    REQUIRE(rs.size() == 2);
    CHECK(closest(rs, {re, im}) < 1e-12);
    CHECK(closest(rs, {re, -im}) < 1e-12);
    CHECK(rs.rhp().size() == 2);
    CHECK(re == doctest::Approx(0.005337).epsilon(1e-3));
    CHECK(im == doctest::Approx(0.05963).epsilon(1e-3));
    // exact conjugates after symmetrization
    CHECK(rs.roots()[0] == std::conj(rs.roots()[1]));
}

TEST_CASE("expanded (5s-1)(2.07s+1) recovers both roots") {
    const Polynomial p = Polynomial{-1.0, 5.0} * Polynomial{1.0, 2.07};
    const RootSet rs = poly_roots(p);
    CHECK(closest(rs, {0.2, 0.0}) < 1e-12);
    CHECK(closest(rs, {-1.0 / 2.07, 0.0}) < 1e-12);
    CHECK(rs.rhp_roots().size() == 1);
}

TEST_CASE("constant polynomial has no roots") {
    CHECK_THROWS_AS(poly_roots(Polynomial{3.0}), Error);
    try {
        poly_roots(Polynomial{3.0});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoRoots);
    }
}

TEST_CASE("roots at the origin are exact and classified on-axis") {
    const RootSet rs = poly_roots(Polynomial{0.0, 0.0, 1.0, 1.0});
    CHECK(std::count(rs.roots().begin(), rs.roots().end(), Complex{0.0, 0.0}) == 2);
    CHECK(rs.on_axis().size() == 2);
    CHECK(rs.rhp().empty());
}

TEST_CASE("random factored polynomials: recovered roots and residual bound") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Complex> roots;
        const int n = deg(rng);
        while (static_cast<int>(roots.size()) < n) {
            if (n - static_cast<int>(roots.size()) >= 2 && u(rng) > 0.0) {
                const Complex z{u(rng), std::abs(u(rng)) + 0.1};
                roots.push_back(z);
                roots.push_back(std::conj(z));
            } else {
                roots.emplace_back(u(rng), 0.0);
            }
        }
        // keep roots well separated so 1e-8 is a fair demand
        bool separated = true;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                if (std::abs(roots[i] - roots[j]) < 0.05) separated = false;
        if (!separated) continue;

        const double lead = 0.5 + std::abs(u(rng));
        const Polynomial p = Polynomial::from_roots(roots, lead);
        const RootSet rs = poly_roots(p);
        REQUIRE(static_cast<int>(rs.size()) == n);
        for (const Complex& r : roots) CHECK(closest(rs, r) < 1e-8);
        for (const Complex& r : rs.roots()) {
            CHECK(std::abs(p(r)) <= 1e-9 * p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(r)), n));
        }
    }
}

TEST_CASE("polynomial arithmetic") {
    const Polynomial a{1.0, 2.0};
    const Polynomial b{3.0, 0.0, 1.0};
    CHECK((a * b) == Polynomial{3.0, 6.0, 1.0, 2.0});
    CHECK((a + b) == Polynomial{4.0, 2.0, 1.0});
    CHECK((b - b).is_zero());
    CHECK(a.reflected() == Polynomial{1.0, -2.0});
    CHECK(b.time_scaled(2.0) == Polynomial{3.0, 0.0, 4.0});
    CHECK(b.derivative() == Polynomial{0.0, 2.0});

    Polynomial rem;
    const Polynomial q = divide(a * b + Polynomial{5.0}, b, &rem);
    CHECK(q == a);
    CHECK(rem == Polynomial{5.0});
}

TEST_CASE("from_roots pairs conjugates into real quadratics") {
    const std::vector<Complex> roots{{1.0, 2.0}, {-0.5, 0.0}, {1.0, -2.0}};
    const Polynomial p = Polynomial::from_roots(roots, 2.0);
    CHECK(p.degree() == 3);
    CHECK(p.leading() == 2.0);
    for (const Complex& r : roots) CHECK(std::abs(p(r)) < 1e-12);
    const std::vector<Complex> lonely{{1.0, 2.0}};
    CHECK_THROWS_AS(Polynomial::from_roots(lonely), Error);
}
