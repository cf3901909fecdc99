#include "sensint/casebook.hpp"

#include <cmath>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

TransferFunction ideal_pid(double kc, double ti, double td) {
    return TransferFunction(Polynomial{kc, kc * ti, kc * ti * td}, Polynomial{0.0, ti});
}

TransferFunction series_pid(double kc, double ti, double td, double alpha) {
    return TransferFunction((Polynomial{1.0, ti} * Polynomial{1.0, td}).scaled(kc), Polynomial{0.0, ti} * Polynomial{1.0, alpha * td});
}

std::vector<std::string> builtin_case_names() {
    return {"foipdt", "cstr", "sopdt"};
}

CaseDefinition load_case(std::string_view name, const CaseOptions& opts) {
    CaseDefinition c;
    c.name = std::string(name);
    if (name == "foipdt") {
        // 0.547 (1 - 0.418 s) e^{-0.1 s} / (s (1.06 s + 1))
        c.title = "First-order integrating process with dead time";
        c.plant.gain = 0.547;
        c.plant.num = {{Polynomial{1.0, -0.418}, true}};
        c.plant.den = {{Polynomial{0.0, 1.0}, false}, {Polynomial{1.0, 1.06}, true}};
        c.plant.dead_time = 0.1;
        c.controllers = {{"luyben", series_pid(1.69, 11.5, 1.15, opts.filter_alpha)},
                         {"pai", ideal_pid(4.06, 2.68, 0.65)}};
        c.omega_l = 1000.0;
        c.band_controller = "luyben";
    } else if (name == "cstr") {
        // -0.2679 (1 - 41.6667 s) e^{-10 s} / (279.03 s^2 - 2.9781 s + 1)
        c.title = "Unstable CSTR with an RHP zero and dead time";
        c.plant.gain = -0.2679;
        c.plant.num = {{Polynomial{1.0, -41.6667}, true}};
        c.plant.den = {{Polynomial{1.0, -2.9781, 279.03}, true}};
        c.plant.dead_time = 10.0;
        const TransferFunction lead_lag(Polynomial{1.0, 5.0}, Polynomial{1.0, 4.112});
        c.controllers = {{"rc2006", series(ideal_pid(1.3254, -86.251, 3.5807), lead_lag)}};
        c.omega_l = 10.0;
        c.mismatch_weights = {1.0, 1.0, 1.0};
        c.mismatches = {mismatch_at(c, 10.0)};
    } else if (name == "sopdt") {
        // e^{-0.939 s} / ((5 s - 1)(2.07 s + 1))
        c.title = "Unstable second-order process with dead time";
        c.plant.gain = 1.0;
        c.plant.den = {{Polynomial{-1.0, 5.0}, true}, {Polynomial{1.0, 2.07}, true}};
        c.plant.dead_time = 0.939;
        c.controllers = {{"sl2008", ideal_pid(6.7051, 5.4738, 1.333)},
                         {"rc2006", ideal_pid(6.4285, 6.4409, 1.413)},
                         {"sl2007", ideal_pid(4.009, 8.0327, 1.6808)}};
        c.omega_l = 10.0;
        c.mismatch_weights = {0.0, 0.0, 1.0};
        c.mismatches = {mismatch_at(c, 10.0), mismatch_at(c, 20.0)};
        c.mismatch_controller = "sl2008";
        c.compensate = true;
    } else {
        std::ostringstream msg;
        msg << "unknown case '" << name << "' (known: foipdt, cstr, sopdt)";
        fail(ErrorCode::UnknownCase, msg.str());
    }
    return c;
}

MismatchDef mismatch_at(const CaseDefinition& c, double pct) {
    const double p = pct / 100.0;
    std::ostringstream name;
    name << pct << "%";
    return {name.str(),
            {p * c.mismatch_weights.gain_pct, p * c.mismatch_weights.time_const_pct,
             p * c.mismatch_weights.dead_time_pct}};
}

const ControllerDef& find_controller(const CaseDefinition& c, std::string_view name) {
    for (const ControllerDef& ctrl : c.controllers) {
        if (ctrl.name == name) return ctrl;
    }
    std::ostringstream msg;
    msg << "case '" << c.name << "' has no controller '" << name << "' (known:";
    for (const ControllerDef& ctrl : c.controllers) msg << ' ' << ctrl.name;
    msg << ')';
    fail(ErrorCode::UnknownCase, msg.str());
}

TransferFunction loop_for(const CaseDefinition& c, const ControllerDef& ctrl, const PerturbationSpec& spec) {
    const TransferFunction plant = perturb(c.plant, spec).to_transfer_function();
    return series(plant, ctrl.tf);
}

const BoundReport* LoopReport::bound(BoundVariant v) const {
    for (const BoundReport& b : bounds) {
        if (b.variant == v) return &b;
    }
    return nullptr;
}

bool LoopReport::any_condition_not_met() const {
    for (const BoundReport& b : bounds) {
        if (b.error == ErrorCode::ConditionNotMet) return true;
    }
    return false;
}

const LoopReport& CaseReport::loop(std::string_view controller) const {
    for (const LoopReport& l : loops) {
        if (l.name == controller) return l;
    }
    fail(ErrorCode::UnknownCase, "no loop named " + std::string(controller));
}

bool CaseReport::any_condition_not_met() const {
    for (const LoopReport& l : loops) {
        if (l.any_condition_not_met()) return true;
    }
    return compensated && compensated->any_condition_not_met();
}

namespace {

SweepSamples sweep_for(const SensitivityModel& m, const AnalysisConfig& cfg) {
    return sweep(m, cfg.window ? *cfg.window : default_window(m, cfg.sweep_points));
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

SensitivityIndices loop_indices(const LoopTransfer& G, const AnalysisConfig& cfg) {
    const SensitivityModel m = make_sensitivity(G, cfg.shaping);
    return extract_indices(m, sweep_for(m, cfg), cfg.index);
}

LoopReport analyze_loop(std::string name, const LoopTransfer& G, const AnalysisConfig& cfg, double omega_l,
                        std::optional<SingularPoint> sp, bool modified) {
    LoopReport r;
    r.name = std::move(name);
    r.model = make_sensitivity(G, cfg.shaping);
    r.sp = resolve_singular_point(r.model, cfg.singular ? cfg.singular : sp);
    r.sweep = sweep_for(r.model, cfg);
    r.indices = extract_indices(r.model, r.sweep, cfg.index);
    r.omega_l = omega_l;
    r.g_at_sp = std::abs(r.model(r.sp.value()));

    if (cfg.integrals) {
        try {
            r.poisson = poisson_integral(r.model, r.sp, cfg.quadrature);
        } catch (const Error& e) {
            r.poisson_error = e.what();
        }
        try {
            r.bode = bode_integral(r.model, cfg.quadrature);
        } catch (const Error& e) {
            r.bode_error = e.what();
        }
    }
    try {
        r.bode_a = G.bode_gain_a();
    } catch (const Error& e) {
        r.notes.push_back(std::string("no Bode gain term: ") + e.what());
    }

    BoundInputs in;
    in.indices = r.indices;
    in.sp = r.sp;
    in.alpha = r.model.alpha().roots();
    in.beta = r.model.beta().roots();
    in.g_at_sp = r.g_at_sp;
    in.a = r.bode_a.value_or(0.0);
    in.omega_l = omega_l;

    // sigma = 2/td (zero of the first-order Pade delay) gets the NMP-zero form
    // plus the arbitrary-point form
    const bool zero_like = r.sp.strategy != SingularStrategy::explicit_point;
    const BoundVariant pj = modified    ? BoundVariant::pj_modified
                            : zero_like ? BoundVariant::pj_at_nmp_zero
                                        : BoundVariant::pj_arbitrary;
    r.bounds.push_back(try_bound(in, pj));
    if (!modified && r.sp.strategy == SingularStrategy::delay_heuristic) {
        r.bounds.push_back(try_bound(in, BoundVariant::pj_arbitrary));
    }
    if (r.bode_a) r.bounds.push_back(try_bound(in, modified ? BoundVariant::bode_modified : BoundVariant::bode));

    // conjugate alpha pairs: what the bound would be with only one member
    bool has_pair = false;
    BoundInputs half = in;
    half.alpha.clear();
    for (const Complex& a : in.alpha) {
        if (a.imag() < 0.0) {
            has_pair = true;
            continue;
        }
        half.alpha.push_back(a);
    }
    if (has_pair && !modified) {
        const BoundReport single = try_bound(half, pj);
        const BoundReport* both = r.bound(pj);
        if (!single.error && both && !both->error) {
            r.single_pole_pj_bound = single.bound_nats;
            r.notes.push_back("Poisson-Jensen bound with both poles of each conjugate pair: " +
                              format_number(both->bound_nats) + "; counting one pole per pair gives " +
                              format_number(single.bound_nats));
        }
    }
    return r;
}

MismatchReport run_mismatch(const CaseDefinition& c, const MismatchDef& m, const AnalysisConfig& cfg) {
    const ControllerDef& ctrl =
        c.mismatch_controller.empty() ? c.controllers.front() : find_controller(c, c.mismatch_controller);
    MismatchReport r;
    r.name = m.name;
    r.spec = m.spec;
    const TransferFunction G = loop_for(c, ctrl, m.spec);
    r.uncompensated = loop_indices(G, cfg);
    if (c.compensate) r.compensated = loop_indices(reflect_unstable_poles(G, cfg.shaping), cfg);
    return r;
}

CaseReport run_case(const CaseDefinition& c, const AnalysisConfig& cfg, bool with_mismatch) {
    if (c.controllers.empty()) fail(ErrorCode::InvalidArgument, "case has no controllers");
    CaseReport r;
    r.name = c.name;
    r.title = c.title;
    const double omega_l = cfg.omega_l.value_or(c.omega_l);
    AnalysisConfig loop_cfg = cfg;
    std::string band_note;
    if (!c.band_controller.empty() && !cfg.index.band_edge) {
        const ControllerDef& ref = find_controller(c, c.band_controller);
        const double edge = loop_indices(loop_for(c, ref), cfg).omega_c;
        loop_cfg.index.band_edge = edge;
        band_note = "omega_c = " + format_number(edge) + " is the band edge of controller " + ref.name +
                    ", shared by every loop of the case";
    }
    for (const ControllerDef& ctrl : c.controllers) {
        try {
            LoopReport l = analyze_loop(ctrl.name, loop_for(c, ctrl), loop_cfg, omega_l, c.singular_point);
            if (!band_note.empty()) {
                l.notes.push_back(band_note);
                if (ctrl.name != c.band_controller) {
                    const SensitivityIndices own = extract_indices(l.model, l.sweep, cfg.index);
                    l.notes.push_back("with its own crossover: omega_c " + format_number(own.omega_c) + ", rho " +
                                      format_number(own.rho));
                }
            }
            r.loops.push_back(std::move(l));
        } catch (const Error& e) {
            throw Error(e.code(), "case " + c.name + ", controller " + ctrl.name + ": " + e.detail());
        }
    }
    const ControllerDef& mm_ctrl =
        c.mismatch_controller.empty() ? c.controllers.front() : find_controller(c, c.mismatch_controller);
    r.mismatch_controller = mm_ctrl.name;
    if (c.compensate) {
        const TransferFunction reflected = reflect_unstable_poles(loop_for(c, mm_ctrl), cfg.shaping);
        r.compensated = analyze_loop(mm_ctrl.name + "+reflected", reflected, cfg, omega_l, c.singular_point, true);
    }
    if (with_mismatch) {
        for (const MismatchDef& m : c.mismatches) {
            try {
                r.mismatches.push_back(run_mismatch(c, m, cfg));
            } catch (const Error& e) {
                throw Error(e.code(), "case " + c.name + ", mismatch " + m.name + ": " + e.detail());
            }
        }
    }
    return r;
}

}  // namespace sensint
