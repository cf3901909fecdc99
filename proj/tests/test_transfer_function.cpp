#include "doctest.h"

#include <cmath>
#include <random>

#include "sensint/errors.hpp"
#include "sensint/transfer_function.hpp"

using namespace sensint;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("first-order lag at unit frequency") {
    const TransferFunction tf(Polynomial{1.0}, Polynomial{1.0, 1.0});
    const Complex v = tf_eval(tf, 1.0);
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("pure delay is all-pass") {
    const TransferFunction delay(Polynomial{1.0}, Polynomial{1.0}, 0.939);
    for (double w : {0.0, 1e-3, 0.7, 13.0, 1e4}) CHECK(std::abs(tf_eval(delay, w)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("axis pole is reported") {
    const TransferFunction integ(Polynomial{1.0}, Polynomial{0.0, 1.0});
    CHECK(code_of([&] { tf_eval(integ, 0.0); }) == ErrorCode::PoleOnAxis);
    const TransferFunction osc(Polynomial{1.0}, Polynomial{4.0, 0.0, 1.0});
    CHECK(code_of([&] { tf_eval(osc, 2.0); }) == ErrorCode::PoleOnAxis);
    CHECK_NOTHROW(tf_eval(osc, 2.001));
}

TEST_CASE("series composition") {
    const TransferFunction a(Polynomial{1.0}, Polynomial{1.0, 1.0});
    const TransferFunction b(Polynomial{1.0}, Polynomial{2.0, 1.0});
    const TransferFunction ab = series(a, b);
    CHECK(ab.den() == Polynomial{2.0, 3.0, 1.0});
    CHECK(ab.num() == Polynomial{1.0});
    const TransferFunction same = series(a, TransferFunction::constant(1.0));
    CHECK(same.num() == a.num());
    CHECK(same.den() == a.den());

    // plant 0.547(1-0.418s)e^{-0.1s}/(s(1.06s+1)) with a filtered PID
    const TransferFunction plant(Polynomial{0.547, -0.547 * 0.418}, Polynomial{0.0, 1.0, 1.06}, 0.1);
    const TransferFunction pid(Polynomial{1.0, 11.5 + 1.15, 11.5 * 1.15}.scaled(1.69), Polynomial{0.0, 11.5, 11.5 * 0.115});
    const TransferFunction loop = series(plant, pid);
    CHECK(loop.dead_time() == doctest::Approx(0.1));
    CHECK(loop.den().degree() == 4);
    CHECK(ab.den().degree() == 2);
}

TEST_CASE("series magnitude and conjugate symmetry") {
    const TransferFunction a(Polynomial{0.3, -1.2, 0.5}, Polynomial{1.0, 2.0, 3.0, 0.7}, 0.4);
    const TransferFunction b(Polynomial{2.0, 1.0}, Polynomial{-1.0, 5.0}, 1.3);
    const TransferFunction ab = series(a, b);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lw(-4.0, 4.0);
    for (int i = 0; i < 500; ++i) {
        const double w = std::pow(10.0, lw(rng));
        const double lhs = std::abs(tf_eval(ab, w));
        const double rhs = std::abs(tf_eval(a, w)) * std::abs(tf_eval(b, w));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
        for (const TransferFunction* tf : {&a, &b, &ab}) {
            const Complex p = tf_eval(*tf, w);
            const Complex m = tf_eval(*tf, -w);
            CHECK(std::abs(m - std::conj(p)) <= 1e-14 * std::abs(p));
        }
    }
}

TEST_CASE("Bode gain term") {
    CHECK(bode_gain_a(TransferFunction(Polynomial{2.0}, Polynomial{3.0, 1.0})) == doctest::Approx(2.0));
    CHECK(bode_gain_a(TransferFunction(Polynomial{1.0}, Polynomial{1.0, 2.0, 1.0})) == 0.0);
    CHECK(bode_gain_a(TransferFunction(Polynomial{1.0, 1.0}, Polynomial{1.0, 1.0, 1.0}, 0.5)) == 0.0);
    CHECK(code_of([] { bode_gain_a(TransferFunction(Polynomial{1.0, 1.0, 1.0}, Polynomial{1.0, 1.0})); }) ==
          ErrorCode::ImproperSystem);
    CHECK(code_of([] { bode_gain_a(TransferFunction(Polynomial{1.0, 1.0}, Polynomial{1.0, 1.0})); }) ==
          ErrorCode::NonconvergentIntegral);
}

TEST_CASE("asymptotic expansion of a relative-degree-one term") {
    // (2s+3)/(s^2+5s+1) = 2/s + (3-10)/s^2 + ...
    const LoopTransfer G(TransferFunction(Polynomial{3.0, 2.0}, Polynomial{1.0, 5.0, 1.0}));
    const auto terms = G.asymptotic_terms();
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].coeff == doctest::Approx(2.0));
    CHECK(terms[0].power == 1);
    CHECK(terms[1].coeff == doctest::Approx(-7.0));
    CHECK(terms[1].power == 2);
}

TEST_CASE("multi-term loop evaluates each delay separately") {
    const LoopTransfer G({{Polynomial{1.0}, 0.0}, {Polynomial{2.0}, 0.5}}, Polynomial{1.0, 1.0});
    const double w = 1.7;
    const Complex s{0.0, w};
    const Complex expected = (1.0 + 2.0 * std::exp(-0.5 * s)) / (1.0 + s);
    CHECK(std::abs(G.at_frequency(w) - expected) < 1e-15);
    CHECK(G.relative_degree() == 1);
    CHECK(G.bode_gain_a() == doctest::Approx(1.0));
    CHECK(G.min_positive_delay() == 0.5);
}

TEST_CASE("parametric perturbation") {
    ParametricTransfer p;
    p.gain = -0.2679;
    p.num = {{Polynomial{1.0, -41.6667}, true}};
    p.den = {{Polynomial{1.0, -2.9781, 279.03}, true}};
    p.dead_time = 10.0;

    const TransferFunction nominal = p.to_transfer_function();
    const TransferFunction same = perturb(p, {}).to_transfer_function();
    CHECK(same.num() == nominal.num());
    CHECK(same.den() == nominal.den());
    CHECK(same.dead_time() == nominal.dead_time());

    const TransferFunction up = perturb(p, {0.1, 0.1, 0.1}).to_transfer_function();
    CHECK(up.dead_time() == doctest::Approx(11.0));
    CHECK(up.den()[1] == doctest::Approx(-2.9781 * 1.1));
    CHECK(up.den()[2] == doctest::Approx(279.03 * 1.21));
    CHECK(up.num()[0] == doctest::Approx(-0.2679 * 1.1));
    CHECK(up.num()[1] == doctest::Approx(-0.2679 * 1.1 * -41.6667 * 1.1));

    ParametricTransfer integrating;
    integrating.den = {{Polynomial{0.0, 1.0}, false}, {Polynomial{1.0, 1.06}, true}};
    const TransferFunction stretched = perturb(integrating, {0.0, 0.5, 0.0}).to_transfer_function();
    CHECK(stretched.den() == (Polynomial{0.0, 1.0} * Polynomial{1.0, 1.59}));

    CHECK(code_of([&] { perturb(p, {-1.0, 0.0, 0.0}); }) == ErrorCode::InvalidArgument);
}
