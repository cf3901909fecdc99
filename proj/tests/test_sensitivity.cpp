#include "doctest.h"

#include <cmath>
#include <random>

#include "sensint/casebook.hpp"
#include "sensint/sensitivity.hpp"
#include "test_util.hpp"

using namespace sensint;
using sensint::test::code_of;
using sensint::test::logspace;

TEST_CASE("all-pass factor has unit modulus on the axis") {
    const AllPass k({{0.2, 0.0}, {1.489, 16.64}, {1.489, -16.64}}, {{0.7, 0.3}, {0.7, -0.3}});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-6.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = std::pow(10.0, u(rng)) * (i % 2 ? 1.0 : -1.0);
        CHECK(std::abs(std::abs(k(Complex(0.0, w))) - 1.0) < 1e-12);
    }
}

TEST_CASE("all-pass factor at the origin") {
    CHECK(std::abs(AllPass({{0.2, 0.0}}, {})(0.0) - Complex(-1.0, 0.0)) < 1e-15);
    // Conjugate pair of the unstable CSTR plant 1 - 2.9781 s + 279.03 s^2.
    const double re = 2.9781 / (2 * 279.03);
    const double im = std::sqrt(279.03 - 2.9781 * 2.9781 / 4) / 279.03;
    const AllPass pair({{re, im}, {re, -im}}, {});
    CHECK(std::abs(pair(0.0) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(code_of([] { AllPass({{-0.1, 0.0}}, {}); }) == ErrorCode::InvalidBlaschkeFactor);
    CHECK(code_of([] { AllPass({{0.0, 1.0}}, {}); }) == ErrorCode::InvalidBlaschkeFactor);
}

TEST_CASE("open-loop sets of the built-in loops") {
    const CaseDefinition cstr = load_case("cstr");
    const SensitivityModel m = make_sensitivity(loop_for(cstr, cstr.controllers.front()));
    REQUIRE(m.alpha().size() == 2);
    CHECK(m.alpha().roots()[0].real() == doctest::Approx(2.9781 / (2 * 279.03)).epsilon(1e-9));
    CHECK(std::abs(m.alpha().roots()[0].imag()) ==
          doctest::Approx(std::sqrt(279.03 - 2.9781 * 2.9781 / 4) / 279.03).epsilon(1e-9));
    // The plant zero 1/41.6667 and one zero of the negative-integral-time controller.
    REQUIRE(m.zeta().size() == 2);
    bool plant_zero = false;
    for (const Complex& z : m.zeta().roots()) plant_zero |= std::abs(z - Complex(1.0 / 41.6667, 0.0)) < 1e-12;
    CHECK(plant_zero);

    const CaseDefinition sopdt = load_case("sopdt");
    const SensitivityModel s = make_sensitivity(loop_for(sopdt, sopdt.controllers.front()));
    REQUIRE(s.alpha().size() == 1);
    CHECK(s.alpha().roots()[0].real() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(s.zeta().empty());
}

TEST_CASE("every built-in loop is closed-loop stable") {
    for (const std::string& name : builtin_case_names()) {
        const CaseDefinition c = load_case(name);
        for (const ControllerDef& ctrl : c.controllers) {
            const ClosedLoopPoles p = closed_loop_rhp_poles(loop_for(c, ctrl));
            CHECK_MESSAGE(p.beta.empty(), name, "/", ctrl.name);
            CHECK(p.winding_count == 0);
            CHECK(std::abs(p.winding_raw) < 0.2);
        }
    }
}

TEST_CASE("closed-loop RHP pole of a rational loop is exact") {
    const TransferFunction G(Polynomial{0.5}, Polynomial{-1.0, 1.0});  // 1 + G = (s - 0.5)/(s - 1)
    const ClosedLoopPoles p = closed_loop_rhp_poles(G);
    CHECK(p.exact);
    REQUIRE(p.beta.size() == 1);
    CHECK(p.beta.roots()[0].real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closed-loop RHP pole of a delayed loop") {
    const TransferFunction G(Polynomial{0.5}, Polynomial{-1.0, 1.0}, 0.1);
    // Real root of s - 1 + 0.5 exp(-0.1 s) = 0 by fixed-point iteration.
    double s = 0.5;
    for (int i = 0; i < 200; ++i) s = 1.0 - 0.5 * std::exp(-0.1 * s);
    const ClosedLoopPoles p = closed_loop_rhp_poles(G);
    CHECK_FALSE(p.exact);
    REQUIRE(p.beta.size() == 1);
    CHECK(p.winding_count == 1);
    CHECK(p.beta.roots()[0].real() == doctest::Approx(s).epsilon(1e-9));
    CHECK(std::abs(p.beta.roots()[0].imag()) < 1e-12);
}

TEST_CASE("modified forward path reproduces (1 - kappa + G)/kappa") {
    for (const std::string& name : {std::string("cstr"), std::string("sopdt")}) {
        const CaseDefinition c = load_case(name);
        const LoopTransfer G = LoopTransfer(loop_for(c, c.controllers.front()));
        const SensitivityModel m = make_sensitivity(G);
        const AllPass k(m.alpha().roots(), m.beta().roots());
        const LoopTransfer Gt = modified_forward_path(G, k);
        for (double w : logspace(-3, 2, 200)) {
            const Complex s(0.0, w);
            const Complex expect = (1.0 - k(s) + G(s)) / k(s);
            CHECK(std::abs(Gt(s) - expect) <= 1e-9 * std::abs(expect));
        }
        CHECK(poly_roots(Gt.den()).rhp_roots().empty());
    }
}

TEST_CASE("modified sensitivity is kappa times g and analytic in the RHP") {
    const CaseDefinition c = load_case("sopdt");
    const SensitivityModel g = make_sensitivity(loop_for(c, c.controllers.front()));
    const SensitivityModel m = modified_sensitivity(g);
    CHECK(m.kind() == SensitivityKind::modified);
    CHECK(m.alpha().empty());
    CHECK(m.beta().empty());
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(0.0, 5.0), im(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const Complex s(re(rng), im(rng));
        const Complex expect = m.kappa()(s) / (1.0 + g.loop()(s));
        CHECK(std::abs(m(s) - expect) <= 1e-10 * std::abs(expect));
    }
    // The RHP pole of G becomes a zero of g; kappa cancels it without blowing up.
    CHECK(std::abs(g(Complex(0.2, 0.0))) < 1e-12);
    CHECK(std::isfinite(std::abs(m(Complex(0.2, 0.0)))));
}

TEST_CASE("singular point resolution order") {
    const CaseDefinition cstr = load_case("cstr");
    const SensitivityModel mc = make_sensitivity(loop_for(cstr, cstr.controllers.front()));
    const SingularPoint z = resolve_singular_point(mc);
    CHECK(z.strategy == SingularStrategy::open_loop_nmp_zero);
    CHECK(z.sigma == doctest::Approx(1.0 / 41.6667).epsilon(1e-12));

    const CaseDefinition sopdt = load_case("sopdt");
    const SensitivityModel ms = make_sensitivity(loop_for(sopdt, sopdt.controllers.front()));
    const SingularPoint h = resolve_singular_point(ms);
    CHECK(h.strategy == SingularStrategy::delay_heuristic);
    CHECK(h.sigma == doctest::Approx(2.0 / 0.939));

    const SingularPoint e = resolve_singular_point(ms, SingularPoint{3.0, 0.0, SingularStrategy::explicit_point});
    CHECK(e.sigma == 3.0);

    const SensitivityModel plain = make_sensitivity(TransferFunction(Polynomial{1.0}, Polynomial{1.0, 1.0}));
    CHECK(code_of([&] { resolve_singular_point(plain); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("improper loops are rejected") {
    const TransferFunction G(Polynomial{1.0, 0.0, 1.0}, Polynomial{1.0, 1.0});
    CHECK(code_of([&] { make_sensitivity(G); }) == ErrorCode::ImproperSystem);
}

TEST_CASE("reflection mirrors the unstable factor") {
    const CaseDefinition c = load_case("sopdt");
    const TransferFunction G = loop_for(c, c.controllers.front());
    const TransferFunction R = reflect_unstable_poles(G);
    CHECK(R.poles().rhp_roots().empty());
    for (double w : logspace(-2, 2, 50)) {
        const Complex s(0.0, w);
        const Complex expect = G(s) * (s - 0.2) / (s + 0.2);
        CHECK(std::abs(R(s) - expect) <= 1e-12 * std::abs(expect));
    }
}
