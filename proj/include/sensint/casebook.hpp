#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sensint/bounds.hpp"
#include "sensint/integrals.hpp"
#include "sensint/sensitivity.hpp"
#include "sensint/sweep.hpp"
#include "sensint/transfer_function.hpp"

namespace sensint {

struct ControllerDef {
    std::string name;
    TransferFunction tf;
};

struct MismatchDef {
    std::string name;
    PerturbationSpec spec;
};

struct CaseDefinition {
    std::string name;
    std::string title;
    ParametricTransfer plant;
    std::vector<ControllerDef> controllers;
    std::optional<SingularPoint> singular_point;  ///< empty: resolve per loop
    double omega_l = 10.0;
    std::vector<MismatchDef> mismatches;
    /// Which parameters a mismatch level moves: a level p perturbs each by
    /// p times its weight.
    PerturbationSpec mismatch_weights{1.0, 1.0, 1.0};
    std::string mismatch_controller;  ///< empty: the first controller
    bool compensate = false;          ///< also study the loop with reflected unstable poles
    /// When set, every loop of the case uses this controller's omega_c as its
    /// band edge instead of its own crossover.
    std::string band_controller;
};

struct CaseOptions {
    /// Derivative filter ratio of the filtered (series) PID on the foipdt case.
    double filter_alpha = 0.1;
};

std::vector<std::string> builtin_case_names();

/// foipdt, cstr or sopdt; anything else throws UnknownCase.
CaseDefinition load_case(std::string_view name, const CaseOptions& opts = {});

/// kc (1 + ti s + ti td s^2) / (ti s).
TransferFunction ideal_pid(double kc, double ti, double td);
/// kc (1 + ti s)(1 + td s) / (ti s (alpha td s + 1)).
TransferFunction series_pid(double kc, double ti, double td, double alpha);

/// Mismatch of `pct` percent along the case's weights.
MismatchDef mismatch_at(const CaseDefinition& c, double pct);

const ControllerDef& find_controller(const CaseDefinition& c, std::string_view name);
TransferFunction loop_for(const CaseDefinition& c, const ControllerDef& ctrl, const PerturbationSpec& spec = {});

struct AnalysisConfig {
    ShapingConfig shaping;
    QuadratureConfig quadrature;
    IndexConfig index;
    int sweep_points = 2000;
    std::optional<SweepWindow> window;
    std::optional<double> omega_l;          ///< overrides the case value
    std::optional<SingularPoint> singular;  ///< overrides the case value
    bool integrals = true;
};

struct LoopReport {
    std::string name;
    SensitivityModel model;
    SingularPoint sp;
    SweepSamples sweep;
    SensitivityIndices indices;
    std::optional<IntegralResult> poisson;
    std::string poisson_error;
    std::optional<IntegralResult> bode;
    std::string bode_error;
    double g_at_sp = 0.0;
    std::optional<double> bode_a;
    double omega_l = 0.0;
    std::vector<BoundReport> bounds;
    /// Poisson-Jensen bound with one pole of each conjugate alpha pair.
    std::optional<double> single_pole_pj_bound;
    std::vector<std::string> notes;

    const BoundReport* bound(BoundVariant v) const;
    bool any_condition_not_met() const;
};

struct MismatchReport {
    std::string name;
    PerturbationSpec spec;
    SensitivityIndices uncompensated;
    std::optional<SensitivityIndices> compensated;
};

struct CaseReport {
    std::string name;
    std::string title;
    std::vector<LoopReport> loops;
    std::optional<LoopReport> compensated;  ///< nominal loop with reflected poles
    std::string mismatch_controller;
    std::vector<MismatchReport> mismatches;

    const LoopReport& loop(std::string_view controller) const;
    bool any_condition_not_met() const;
};

/// Sweep, indices, integrals and bounds for one loop. `modified` selects the
/// bounds for a compensated loop (Poisson-Jensen on g~ and the gain-only
/// Bode form).
LoopReport analyze_loop(std::string name, const LoopTransfer& G, const AnalysisConfig& cfg, double omega_l,
                        std::optional<SingularPoint> sp, bool modified = false);

/// Indices only.
SensitivityIndices loop_indices(const LoopTransfer& G, const AnalysisConfig& cfg);

MismatchReport run_mismatch(const CaseDefinition& c, const MismatchDef& m, const AnalysisConfig& cfg);

CaseReport run_case(const CaseDefinition& c, const AnalysisConfig& cfg = {}, bool with_mismatch = true);

}  // namespace sensint
