#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sensint/case_file.hpp"
#include "sensint/report.hpp"
#include "test_util.hpp"

using namespace sensint;

namespace {

std::string parse_error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_case_file(in, "t.case");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        return e.what();
    }
    return "";
}

const char* kMinimal = R"(# first-order loop
[case]
name = lag
omega_l = 20

[plant]
gain = 2
den = 1, 1
dead_time = 0.2

[controller p]
num = 0.5
den = 1
)";

}  // namespace

TEST_CASE("case files reproduce the built-in analyses exactly") {
    for (const std::string& name : builtin_case_names()) {
        const CaseDefinition c = load_case(name);
        std::istringstream in(case_file_text(c));
        const CaseDefinition back = parse_case_file(in);
        CHECK(case_file_text(back) == case_file_text(c));
        const CaseReport a = run_case(c);
        const CaseReport b = run_case(back);
        REQUIRE(a.loops.size() == b.loops.size());
        for (std::size_t i = 0; i < a.loops.size(); ++i) {
            CHECK(a.loops[i].indices.s_max == b.loops[i].indices.s_max);
            CHECK(a.loops[i].indices.rho == b.loops[i].indices.rho);
            REQUIRE(a.loops[i].bounds.size() == b.loops[i].bounds.size());
            for (std::size_t j = 0; j < a.loops[i].bounds.size(); ++j) {
                CHECK(a.loops[i].bounds[j].variant == b.loops[i].bounds[j].variant);
                CHECK(a.loops[i].bounds[j].bound_nats == b.loops[i].bounds[j].bound_nats);
            }
        }
        REQUIRE(a.mismatches.size() == b.mismatches.size());
        for (std::size_t i = 0; i < a.mismatches.size(); ++i) {
            CHECK(a.mismatches[i].uncompensated.s_max == b.mismatches[i].uncompensated.s_max);
        }
    }
}

TEST_CASE("minimal case file") {
    std::istringstream in(kMinimal);
    const CaseDefinition c = parse_case_file(in);
    CHECK(c.name == "lag");
    CHECK(c.omega_l == 20.0);
    REQUIRE(c.controllers.size() == 1);
    const TransferFunction G = loop_for(c, c.controllers.front());
    const Complex v = G(Complex(0.0, 0.0));
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(G.dead_time() == 0.2);
}

TEST_CASE("parse errors name the offending line") {
    CHECK(parse_error_of("[case]\nname = x\nomega_l = ten\n").find("t.case:3") != std::string::npos);
    CHECK(parse_error_of("[case]\nname = x\n[plant]\nwobble = 1\n").find("t.case:4") != std::string::npos);
    CHECK(parse_error_of("[nonsense]\n").find("t.case:1") != std::string::npos);
    CHECK(parse_error_of("name = x\n").find("t.case:1") != std::string::npos);
    CHECK_FALSE(parse_error_of("[case]\nname = x\n").empty());  // no plant, no controller
}

TEST_CASE("report formats") {
    const CaseReport r = run_case(load_case("cstr"));
    const nlohmann::json doc = report::document(report::to_json(r), "analyze");
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["result"]["loops"][0]["controller"] == "rc2006");
    CHECK(doc["result"]["loops"][0]["bounds"][0]["variant"] == "PJ_at_nmp_zero");
    CHECK(doc["result"]["loops"][0].contains("single_pole_pj_bound"));
    CHECK(report::case_text(r).find("counting one pole per pair") != std::string::npos);

    const LoopReport& l = r.loops.front();
    const std::string csv = report::sweep_csv(l.sweep, l.sp);
    CHECK(csv.rfind("omega,mag,log_mag,kernel_weight\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == l.sweep.size() + 1);
}

TEST_CASE("atomic writes replace the target") {
    const auto dir = std::filesystem::temp_directory_path() / "sensint_report_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "out.txt";
    report::write_atomic(path, "first");
    report::write_atomic(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    std::filesystem::remove_all(dir);
}
