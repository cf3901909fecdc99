// Command-line front end: sensitivity indices, integral identities and
// peak bounds for the built-in cases or a case file.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sensint/case_file.hpp"
#include "sensint/casebook.hpp"
#include "sensint/errors.hpp"
#include "sensint/report.hpp"

namespace {

using namespace sensint;

struct Options {
    std::string case_name;
    std::string file;
    std::string controller;
    std::string format;  ///< empty until parsed: csv for sweep, text otherwise
    std::string out_dir;
    std::optional<double> omega_l;
    std::optional<double> sigma;
    std::optional<double> tol;
    double filter_alpha = 0.1;
    std::string kind = "both";
    std::vector<double> pct;
    bool compensate = false;
};

void add_common(CLI::App* cmd, Options& o) {
    auto* src = cmd->add_option("--case", o.case_name, "built-in case (foipdt, cstr, sopdt)");
    cmd->add_option("--file", o.file, "case file")->excludes(src)->check(CLI::ExistingFile);
    cmd->add_option("--controller", o.controller, "restrict to one controller");
    cmd->add_option("--format", o.format, "output format (text, csv, json; sweep defaults to csv)")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--out", o.out_dir, "write into this directory instead of stdout");
    cmd->add_option("--omega-l", o.omega_l, "upper frequency of the Bode bound")->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", o.sigma, "real singular point for the Poisson integral")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", o.tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--filter-alpha", o.filter_alpha, "derivative filter of series PID controllers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

CaseDefinition resolve_case(const Options& o) {
    if (o.case_name.empty() && o.file.empty()) fail(ErrorCode::InvalidArgument, "one of --case or --file is required");
    CaseDefinition c = o.file.empty() ? load_case(o.case_name, CaseOptions{o.filter_alpha}) : load_case_file(o.file);
    if (!o.controller.empty()) c.mismatch_controller = find_controller(c, o.controller).name;
    return c;
}

/// Runs the whole case and keeps only the loops asked for with --controller.
CaseReport run_selected(const Options& o, const CaseDefinition& c, const AnalysisConfig& cfg, bool with_mismatch) {
    CaseReport r = run_case(c, cfg, with_mismatch);
    if (!o.controller.empty()) {
        std::erase_if(r.loops, [&](const LoopReport& l) { return l.name != o.controller; });
    }
    return r;
}

AnalysisConfig resolve_config(const Options& o) {
    AnalysisConfig cfg;
    cfg.omega_l = o.omega_l;
    if (o.sigma) cfg.singular = SingularPoint{*o.sigma, 0.0, SingularStrategy::explicit_point};
    if (o.tol) cfg.quadrature.abs_tol = *o.tol;
    return cfg;
}

std::string extension(const std::string& format) {
    if (format == "json") return ".json";
    if (format == "csv") return ".csv";
    return ".txt";
}

void emit(const Options& o, const std::string& stem, const std::string& content) {
    if (o.out_dir.empty()) {
        std::cout << content;
        return;
    }
    const std::filesystem::path path = std::filesystem::path(o.out_dir) / (stem + extension(o.format));
    report::write_atomic(path, content);
    std::cerr << "wrote " << path.string() << "\n";
}

std::string json_text(const nlohmann::json& body, const std::string& command) {
    return report::document(body, command).dump(2) + "\n";
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<const LoopReport*> all_loops(const CaseReport& r) {
    std::vector<const LoopReport*> loops;
    for (const LoopReport& l : r.loops) loops.push_back(&l);
    if (r.compensated) loops.push_back(&*r.compensated);
    return loops;
}

std::string bounds_csv(const CaseReport& r) {
    std::string out = "controller,variant,bound_nats,bound_log10,measured_ln_smax,satisfied,condition,condition_value,"
                      "condition_met,error\n";
    for (const LoopReport* l : all_loops(r)) {
        for (const BoundReport& b : l->bounds) {
            out += l->name + "," + std::string(to_string(b.variant)) + "," + csv_number(b.bound_nats) + "," +
                   csv_number(b.bound_nats / std::log(10.0)) + "," + csv_number(b.measured_ln_smax) + "," +
                   (b.error ? "" : (b.satisfied ? "true" : "false")) + "," + b.condition + "," +
                   csv_number(b.condition_value) + "," + (b.condition_met ? "true" : "false") + "," +
                   (b.error ? std::string(to_string(*b.error)) : "") + "\n";
        }
    }
    return out;
}

std::string indices_csv(const CaseReport& r) {
    std::string out = "controller,omega_cross,omega_c,rho,s_max,omega_ms,ln_s_max\n";
    for (const LoopReport* l : all_loops(r)) {
        const SensitivityIndices& i = l->indices;
        out += l->name + "," + csv_number(i.omega_cross) + "," + csv_number(i.omega_c) + "," + csv_number(i.rho) +
               "," + csv_number(i.s_max) + "," + csv_number(i.omega_ms) + "," + csv_number(std::log(i.s_max)) + "\n";
    }
    return out;
}

bool wants_poisson(const Options& o) { return o.kind == "poisson" || o.kind == "both"; }
bool wants_bode(const Options& o) { return o.kind == "bode" || o.kind == "both"; }

int run_analyze(const Options& o, const std::string& command) {
    const CaseDefinition c = resolve_case(o);
    const CaseReport r = run_selected(o, c, resolve_config(o), command == "analyze");
    if (o.format == "json") {
        nlohmann::json body = report::to_json(r);
        if (command == "bounds") {
            nlohmann::json slim = {{"case", r.name}, {"loops", nlohmann::json::array()}};
            for (const LoopReport* l : all_loops(r)) {
                nlohmann::json lj = report::to_json(*l);
                slim["loops"].push_back({{"controller", l->name},
                                         {"indices", lj["indices"]},
                                         {"bounds", lj["bounds"]},
                                         {"notes", lj["notes"]}});
            }
            body = slim;
        }
        emit(o, c.name + "_" + command, json_text(body, command));
    } else if (o.format == "csv" && command == "bounds") {
        emit(o, c.name + "_bounds", bounds_csv(r));
    } else if (o.format == "csv") {
        // Sweep tables per loop; with --out also the indices and bounds tables.
        if (o.out_dir.empty()) {
            std::string out;
            for (const LoopReport* l : all_loops(r)) {
                if (!out.empty()) out += "\n";
                out += report::sweep_csv(l->sweep, l->sp);
            }
            std::cout << out;
        } else {
            for (const LoopReport* l : all_loops(r)) {
                emit(o, c.name + "_" + l->name + "_sweep", report::sweep_csv(l->sweep, l->sp));
            }
            emit(o, c.name + "_indices", indices_csv(r));
            emit(o, c.name + "_bounds", bounds_csv(r));
        }
    } else if (command == "bounds") {
        std::string text = "case " + r.name + "\n";
        for (const LoopReport* l : all_loops(r)) {
            text += "controller " + l->name + "\n" + report::indices_text(l->indices);
            for (const BoundReport& b : l->bounds) text += report::bound_text(b);
            for (const std::string& n : l->notes) text += "  note: " + n + "\n";
        }
        emit(o, c.name + "_" + command, text);
    } else {
        emit(o, c.name + "_" + command, report::case_text(r));
    }
    return r.any_condition_not_met() ? 2 : 0;
}

int run_sweep(const Options& o) {
    const CaseDefinition c = resolve_case(o);
    AnalysisConfig cfg = resolve_config(o);
    cfg.integrals = false;
    const CaseReport r = run_selected(o, c, cfg, false);
    const auto loops = all_loops(r);
    if (o.format == "json") {
        nlohmann::json body = {{"case", r.name}, {"loops", nlohmann::json::array()}};
        for (const LoopReport* l : loops) {
            nlohmann::json lj = report::to_json(*l, true);
            body["loops"].push_back({{"controller", l->name}, {"indices", lj["indices"]}, {"sweep", lj["sweep"]}});
        }
        emit(o, c.name + "_sweep", json_text(body, "sweep"));
    } else if (o.format == "csv") {
        if (o.out_dir.empty() && loops.size() > 1) {
            fail(ErrorCode::InvalidArgument, "sweep CSV on stdout needs --controller when the case has several loops");
        }
        for (const LoopReport* l : loops) emit(o, c.name + "_" + l->name + "_sweep", report::sweep_csv(l->sweep, l->sp));
    } else {
        std::string text = "case " + r.name + "\n";
        for (const LoopReport* l : loops) {
            text += "controller " + l->name + " (" + std::to_string(l->sweep.size()) + " samples from " +
                    report::num(l->sweep.omegas.front()) + " to " + report::num(l->sweep.omegas.back()) + ")\n" +
                    report::indices_text(l->indices);
        }
        emit(o, c.name + "_sweep", text);
    }
    return 0;
}

int run_integral(const Options& o) {
    const CaseDefinition c = resolve_case(o);
    const CaseReport r = run_selected(o, c, resolve_config(o), false);
    const auto loops = all_loops(r);
    if (o.format == "json") {
        nlohmann::json body = {{"case", r.name}, {"loops", nlohmann::json::array()}};
        for (const LoopReport* l : loops) {
            nlohmann::json lj = report::to_json(*l);
            nlohmann::json entry = {{"controller", l->name}, {"singular_point", lj["singular_point"]}};
            if (wants_poisson(o)) entry["poisson"] = lj["poisson"];
            if (wants_bode(o)) entry["bode"] = lj["bode"];
            body["loops"].push_back(entry);
        }
        emit(o, c.name + "_integral", json_text(body, "integral"));
    } else if (o.format == "csv") {
        std::string out = "controller,kind,lhs_numeric,rhs_analytic,residual,tail_bound,quadrature_error,panels_used,error\n";
        auto row = [&](const LoopReport* l, const char* kind, const std::optional<IntegralResult>& res,
                       const std::string& err) {
            if (res) {
                out += l->name + "," + kind + "," + csv_number(res->lhs_numeric) + "," + csv_number(res->rhs_analytic) +
                       "," + csv_number(res->residual) + "," + csv_number(res->tail_bound) + "," +
                       csv_number(res->quadrature_error) + "," + std::to_string(res->panels_used) + ",\n";
            } else {
                out += l->name + "," + kind + ",,,,,,,\"" + err + "\"\n";
            }
        };
        for (const LoopReport* l : loops) {
            if (wants_poisson(o)) row(l, "poisson", l->poisson, l->poisson_error);
            if (wants_bode(o)) row(l, "bode", l->bode, l->bode_error);
        }
        emit(o, c.name + "_integral", out);
    } else {
        std::string text = "case " + r.name + "\n";
        for (const LoopReport* l : loops) {
            text += "controller " + l->name + ", singular point " + report::num(l->sp.sigma) + " (" +
                    std::string(to_string(l->sp.strategy)) + ")\n";
            if (wants_poisson(o)) {
                text += l->poisson ? report::integral_text("poisson", *l->poisson) : "  poisson: " + l->poisson_error + "\n";
            }
            if (wants_bode(o)) {
                text += l->bode ? report::integral_text("bode", *l->bode) : "  bode: " + l->bode_error + "\n";
            }
        }
        emit(o, c.name + "_integral", text);
    }
    return 0;
}

int run_mismatch_cmd(const Options& o) {
    CaseDefinition c = resolve_case(o);
    if (o.compensate) c.compensate = true;
    if (!o.pct.empty()) {
        c.mismatches.clear();
        for (double p : o.pct) c.mismatches.push_back(mismatch_at(c, p));
    }
    if (c.mismatches.empty()) fail(ErrorCode::InvalidArgument, "case " + c.name + " defines no mismatch; pass --pct");
    const AnalysisConfig cfg = resolve_config(o);
    std::vector<MismatchReport> reports;
    for (const MismatchDef& m : c.mismatches) reports.push_back(run_mismatch(c, m, cfg));
    const ControllerDef& ctrl =
        c.mismatch_controller.empty() ? c.controllers.front() : find_controller(c, c.mismatch_controller);
    if (o.format == "json") {
        nlohmann::json body = {{"case", c.name}, {"controller", ctrl.name}, {"mismatches", nlohmann::json::array()}};
        for (const MismatchReport& m : reports) body["mismatches"].push_back(report::to_json(m));
        emit(o, c.name + "_mismatch", json_text(body, "mismatch"));
    } else if (o.format == "csv") {
        std::string out = "name,gain_pct,time_const_pct,dead_time_pct,s_max,omega_ms,s_max_compensated,"
                          "omega_ms_compensated\n";
        for (const MismatchReport& m : reports) {
            out += m.name + "," + csv_number(m.spec.gain_pct) + "," + csv_number(m.spec.time_const_pct) + "," +
                   csv_number(m.spec.dead_time_pct) + "," + csv_number(m.uncompensated.s_max) + "," +
                   csv_number(m.uncompensated.omega_ms) + "," +
                   (m.compensated ? csv_number(m.compensated->s_max) + "," + csv_number(m.compensated->omega_ms)
                                  : std::string(",")) +
                   "\n";
        }
        emit(o, c.name + "_mismatch", out);
    } else {
        std::string text = "case " + c.name + ", controller " + ctrl.name + "\n";
        for (const MismatchReport& m : reports) text += report::mismatch_text(m);
        emit(o, c.name + "_mismatch", text);
    }
    return 0;
}

int run_export(const Options& o) {
    CaseDefinition c = resolve_case(o);
    if (!o.controller.empty()) {
        std::erase_if(c.controllers, [&](const ControllerDef& d) {
            return d.name != o.controller && d.name != c.band_controller;
        });
    }
    const std::string text = case_file_text(c);
    if (o.out_dir.empty()) {
        std::cout << text;
    } else {
        const std::filesystem::path path = std::filesystem::path(o.out_dir) / (c.name + ".case");
        report::write_atomic(path, text);
        std::cerr << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensitivity integrals and peak bounds for delayed feedback loops"};
    app.require_subcommand(1);
    Options o;

    app.add_subcommand("list", "list the built-in cases");
    auto* analyze = app.add_subcommand("analyze", "indices, integrals, bounds and mismatch study");
    add_common(analyze, o);
    auto* sweep_cmd = app.add_subcommand("sweep", "frequency sweep of |g(jw)|");
    add_common(sweep_cmd, o);
    auto* integral = app.add_subcommand("integral", "Poisson and Bode identities");
    add_common(integral, o);
    integral->add_option("--kind", o.kind, "which identity")
        ->check(CLI::IsMember({"poisson", "bode", "both"}))
        ->capture_default_str();
    auto* bounds_cmd = app.add_subcommand("bounds", "lower bounds on the sensitivity peak");
    add_common(bounds_cmd, o);
    auto* mismatch = app.add_subcommand("mismatch", "peak under plant parameter mismatch");
    add_common(mismatch, o);
    mismatch->add_option("--pct", o.pct, "mismatch level in percent (repeatable)");
    mismatch->add_flag("--compensate", o.compensate, "also evaluate the loop with reflected unstable poles");
    auto* export_cmd = app.add_subcommand("export", "print a case in the case-file format");
    add_common(export_cmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (o.format.empty()) o.format = name == "sweep" ? "csv" : "text";
        if (name == "list") {
            for (const std::string& n : builtin_case_names()) std::cout << n << "  " << load_case(n).title << "\n";
            return 0;
        }
        if (name == "analyze" || name == "bounds") return run_analyze(o, name);
        if (name == "sweep") return run_sweep(o);
        if (name == "integral") return run_integral(o);
        if (name == "mismatch") return run_mismatch_cmd(o);
        return run_export(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
