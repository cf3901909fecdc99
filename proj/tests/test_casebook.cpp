#include "doctest.h"

#include "sensint/casebook.hpp"
#include "test_util.hpp"

using namespace sensint;
using sensint::test::code_of;

TEST_CASE("CSTR mismatch raises the crossover and the peak") {
    const CaseReport r = run_case(load_case("cstr"));
    REQUIRE(r.mismatches.size() == 1);
    const SensitivityIndices& nominal = r.loop("rc2006").indices;
    CHECK(r.mismatches[0].uncompensated.omega_c > nominal.omega_c);
    CHECK(r.mismatches[0].uncompensated.s_max > nominal.s_max);
    CHECK_FALSE(r.mismatches[0].compensated);
}

TEST_CASE("second-order case: compensation lowers every peak and peaks grow with mismatch") {
    const CaseReport r = run_case(load_case("sopdt"));
    REQUIRE(r.compensated);
    REQUIRE(r.mismatches.size() == 2);
    double last_unc = r.loop(r.mismatch_controller).indices.s_max;
    double last_cmp = r.compensated->indices.s_max;
    CHECK(last_cmp < last_unc);
    for (const MismatchReport& m : r.mismatches) {
        REQUIRE(m.compensated);
        CHECK(m.compensated->s_max < m.uncompensated.s_max);
        CHECK(m.uncompensated.s_max > last_unc);
        CHECK(m.compensated->s_max > last_cmp);
        last_unc = m.uncompensated.s_max;
        last_cmp = m.compensated->s_max;
    }
}

TEST_CASE("compensated loop has no unstable open-loop pole and keeps the dead time") {
    const CaseDefinition c = load_case("sopdt");
    const TransferFunction R = reflect_unstable_poles(loop_for(c, find_controller(c, "sl2008")));
    CHECK(R.poles().rhp_roots().empty());
    CHECK(R.dead_time() == doctest::Approx(0.939));
}

TEST_CASE("mismatch levels scale the case weights") {
    const CaseDefinition c = load_case("sopdt");
    const MismatchDef m = mismatch_at(c, 20.0);
    CHECK(m.name == "20%");
    CHECK(m.spec.gain_pct == 0.0);
    CHECK(m.spec.time_const_pct == 0.0);
    CHECK(m.spec.dead_time_pct == doctest::Approx(0.2));
    const MismatchDef all = mismatch_at(load_case("cstr"), 10.0);
    CHECK(all.spec.gain_pct == doctest::Approx(0.1));
    CHECK(all.spec.time_const_pct == doctest::Approx(0.1));
}

TEST_CASE("derivative filter override") {
    const CaseDefinition a = load_case("foipdt", CaseOptions{0.1});
    const CaseDefinition b = load_case("foipdt", CaseOptions{0.2});
    const Complex s(0.0, 3.0);
    CHECK(std::abs(find_controller(a, "luyben").tf(s) - find_controller(b, "luyben").tf(s)) > 1e-3);
    CHECK(std::abs(find_controller(a, "pai").tf(s) - find_controller(b, "pai").tf(s)) == 0.0);
}

TEST_CASE("unknown names") {
    CHECK(code_of([] { load_case("nope"); }) == ErrorCode::UnknownCase);
    const CaseDefinition c = load_case("cstr");
    CHECK(code_of([&] { find_controller(c, "nope"); }) == ErrorCode::UnknownCase);
}
