#include "sensint/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint::report {

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json roots_json(const std::vector<Complex>& roots) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& r : roots) arr.push_back({{"re", r.real()}, {"im", r.imag()}});
    return arr;
}

std::string roots_text(const std::vector<Complex>& roots) {
    if (roots.empty()) return "none";
    std::string out;
    for (const Complex& r : roots) {
        if (!out.empty()) out += ", ";
        out += num(r.real());
        if (r.imag() != 0.0) out += (r.imag() > 0 ? " + j" : " - j") + num(std::abs(r.imag()));
    }
    return out;
}

}  // namespace

std::string num(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string sweep_csv(const SweepSamples& s, const SingularPoint& sp) {
    std::string out = "omega,mag,log_mag,kernel_weight\n";
    char buf[128];
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", s.omegas[i], s.mags[i], s.logs[i],
                      poisson_kernel(sp, s.omegas[i]));
        out += buf;
    }
    return out;
}

nlohmann::json to_json(const SensitivityIndices& idx) {
    return {{"omega_cross", idx.omega_cross}, {"omega_c", idx.omega_c},   {"rho", idx.rho},
            {"s_max", idx.s_max},             {"omega_ms", idx.omega_ms}, {"stability_margin", idx.stability_margin},
            {"ln_s_max", std::log(idx.s_max)}};
}

nlohmann::json to_json(const IntegralResult& r) {
    return {{"lhs_numeric", r.lhs_numeric}, {"rhs_analytic", r.rhs_analytic},       {"residual", r.residual},
            {"tail_bound", r.tail_bound},   {"quadrature_error", r.quadrature_error}, {"panels_used", r.panels_used}};
}

nlohmann::json to_json(const BoundReport& b) {
    nlohmann::json j = {{"variant", std::string(to_string(b.variant))},
                        {"bound_nats", number_or_null(b.bound_nats)},
                        {"bound_log10", number_or_null(b.bound_nats / std::log(10.0))},
                        {"measured_ln_s_max", b.measured_ln_smax},
                        {"condition", b.condition},
                        {"condition_value", number_or_null(b.condition_value)},
                        {"condition_met", b.condition_met}};
    if (b.error) {
        j["error"] = std::string(to_string(*b.error));
        j["error_message"] = b.error_message;
    } else {
        j["satisfied"] = b.satisfied;
        j["margin_nats"] = b.margin;
    }
    return j;
}

nlohmann::json to_json(const SingularPoint& sp) {
    return {{"sigma", sp.sigma}, {"eta", sp.eta}, {"strategy", std::string(to_string(sp.strategy))}};
}

nlohmann::json to_json(const LoopReport& l, bool with_sweep) {
    nlohmann::json j;
    j["controller"] = l.name;
    j["kind"] = std::string(to_string(l.model.kind()));
    j["alpha"] = roots_json(l.model.alpha().roots());
    j["beta"] = roots_json(l.model.beta().roots());
    j["zeta"] = roots_json(l.model.zeta().roots());
    j["singular_point"] = to_json(l.sp);
    j["g_at_singular_point"] = l.g_at_sp;
    j["indices"] = to_json(l.indices);
    j["poisson"] = l.poisson ? to_json(*l.poisson) : nlohmann::json{{"error", l.poisson_error}};
    j["bode"] = l.bode ? to_json(*l.bode) : nlohmann::json{{"error", l.bode_error}};
    j["bode_gain_a"] = l.bode_a ? nlohmann::json(*l.bode_a) : nlohmann::json(nullptr);
    j["omega_l"] = l.omega_l;
    j["bounds"] = nlohmann::json::array();
    for (const BoundReport& b : l.bounds) j["bounds"].push_back(to_json(b));
    if (l.single_pole_pj_bound) j["single_pole_pj_bound"] = *l.single_pole_pj_bound;
    j["notes"] = l.notes;
    if (with_sweep) {
        j["sweep"] = {{"omega", l.sweep.omegas}, {"mag", l.sweep.mags}, {"log_mag", l.sweep.logs}};
    }
    return j;
}

nlohmann::json to_json(const MismatchReport& m) {
    nlohmann::json j = {{"name", m.name},
                        {"gain_pct", m.spec.gain_pct},
                        {"time_const_pct", m.spec.time_const_pct},
                        {"dead_time_pct", m.spec.dead_time_pct},
                        {"uncompensated", to_json(m.uncompensated)}};
    j["compensated"] = m.compensated ? to_json(*m.compensated) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const CaseReport& r, bool with_sweep) {
    nlohmann::json j;
    j["case"] = r.name;
    j["title"] = r.title;
    j["loops"] = nlohmann::json::array();
    for (const LoopReport& l : r.loops) j["loops"].push_back(to_json(l, with_sweep));
    j["compensated"] = r.compensated ? to_json(*r.compensated, with_sweep) : nlohmann::json(nullptr);
    j["mismatch_controller"] = r.mismatch_controller;
    j["mismatches"] = nlohmann::json::array();
    for (const MismatchReport& m : r.mismatches) j["mismatches"].push_back(to_json(m));
    return j;
}

nlohmann::json document(nlohmann::json body, const std::string& command) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["result"] = std::move(body);
    return j;
}

std::string indices_text(const SensitivityIndices& idx) {
    std::ostringstream os;
    os << "  omega_cross " << num(idx.omega_cross) << "  omega_c " << num(idx.omega_c) << "  rho " << num(idx.rho)
       << "\n  s_max " << num(idx.s_max) << "  omega_ms " << num(idx.omega_ms) << "  margin 1/s_max "
       << num(idx.stability_margin) << "\n  ln s_max " << num(std::log(idx.s_max)) << " nats ("
       << num(std::log10(idx.s_max)) << " log10)\n";
    return os.str();
}

std::string integral_text(const std::string& label, const IntegralResult& r) {
    std::ostringstream os;
    os << "  " << label << ": lhs " << num(r.lhs_numeric) << "  rhs " << num(r.rhs_analytic) << "  residual "
       << num(r.residual) << "  tail<= " << num(r.tail_bound) << "  panels " << r.panels_used << "\n";
    return os.str();
}

std::string bound_text(const BoundReport& b) {
    std::ostringstream os;
    os << "  " << to_string(b.variant) << ": ";
    if (b.error) {
        os << to_string(*b.error);
        if (!b.error_message.empty()) os << ": " << b.error_message;
        if (!b.condition.empty()) os << " [" << b.condition << ", value " << num(b.condition_value) << "]";
        os << "\n";
        return os.str();
    }
    os << "ln s_max > " << num(b.bound_nats) << " nats (" << num(b.bound_nats / std::log(10.0)) << " log10); measured "
       << num(b.measured_ln_smax) << " -> " << (b.satisfied ? "satisfied" : "VIOLATED") << ", margin "
       << num(b.margin) << "\n";
    return os.str();
}

std::string loop_text(const LoopReport& l) {
    std::ostringstream os;
    os << "controller " << l.name << " (" << to_string(l.model.kind()) << ")\n";
    os << "  alpha: " << roots_text(l.model.alpha().roots()) << "\n";
    os << "  beta: " << roots_text(l.model.beta().roots()) << "\n";
    os << "  zeta: " << roots_text(l.model.zeta().roots()) << "\n";
    os << "  singular point sigma " << num(l.sp.sigma) << " eta " << num(l.sp.eta) << " (" << to_string(l.sp.strategy)
       << "), |g(s0)| " << num(l.g_at_sp) << "\n";
    os << indices_text(l.indices);
    if (l.poisson) {
        os << integral_text("poisson", *l.poisson);
    } else if (!l.poisson_error.empty()) {
        os << "  poisson: " << l.poisson_error << "\n";
    }
    if (l.bode) {
        os << integral_text("bode", *l.bode);
    } else if (!l.bode_error.empty()) {
        os << "  bode: " << l.bode_error << "\n";
    }
    os << "  omega_l " << num(l.omega_l) << ", a " << (l.bode_a ? num(*l.bode_a) : std::string("n/a")) << "\n";
    for (const BoundReport& b : l.bounds) os << bound_text(b);
    for (const std::string& n : l.notes) os << "  note: " << n << "\n";
    return os.str();
}

std::string mismatch_text(const MismatchReport& m) {
    std::ostringstream os;
    os << "mismatch " << m.name << " (gain " << num(m.spec.gain_pct) << ", time constants " << num(m.spec.time_const_pct)
       << ", dead time " << num(m.spec.dead_time_pct) << ")\n";
    os << "  uncompensated s_max " << num(m.uncompensated.s_max) << " at " << num(m.uncompensated.omega_ms)
       << ", omega_c " << num(m.uncompensated.omega_c) << "\n";
    if (m.compensated) {
        os << "  compensated   s_max " << num(m.compensated->s_max) << " at " << num(m.compensated->omega_ms)
           << ", omega_c " << num(m.compensated->omega_c) << "\n";
    }
    return os.str();
}

std::string case_text(const CaseReport& r) {
    std::ostringstream os;
    os << "case " << r.name;
    if (!r.title.empty()) os << ": " << r.title;
    os << "\n\n";
    for (const LoopReport& l : r.loops) os << loop_text(l) << "\n";
    if (r.compensated) os << loop_text(*r.compensated) << "\n";
    for (const MismatchReport& m : r.mismatches) os << mismatch_text(m);
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
        out << content;
        if (!out) fail(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sensint::report
