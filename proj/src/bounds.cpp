#include "sensint/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sensint {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void check_indices(const SensitivityIndices& idx) {
    if (!(idx.rho > 0.0 && idx.rho < 1.0)) {
        std::ostringstream msg;
        msg << "rho must lie in (0, 1), got " << idx.rho;
        fail(ErrorCode::InvalidArgument, msg.str());
    }
    if (!(idx.omega_c > 0.0)) fail(ErrorCode::InvalidArgument, "omega_c must be positive");
    if (!(idx.s_max > 0.0)) fail(ErrorCode::InvalidArgument, "s_max must be positive");
}

double alpha_terms(const BoundInputs& in) {
    const double s = in.sp.sigma;
    double k = 0.0;
    for (const Complex& a : in.alpha) k += std::log(std::abs((s - a) / (s + std::conj(a))));
    return k;
}

double beta_terms(const BoundInputs& in) {
    const double s = in.sp.sigma;
    double k = 0.0;
    for (const Complex& b : in.beta) k += std::log(std::abs((s + std::conj(b)) / (s - b)));
    return k;
}

}  // namespace

std::string_view to_string(BoundVariant v) {
    switch (v) {
        case BoundVariant::pj_arbitrary: return "PJ_arbitrary";
        case BoundVariant::pj_at_nmp_zero: return "PJ_at_nmp_zero";
        case BoundVariant::pj_stable: return "PJ_stable";
        case BoundVariant::pj_modified: return "PJ_modified";
        case BoundVariant::bode: return "Bode";
        case BoundVariant::bode_modified: return "Bode_modified";
    }
    return "unknown";
}

std::optional<BoundVariant> bound_variant_from_string(std::string_view s) {
    for (BoundVariant v : {BoundVariant::pj_arbitrary, BoundVariant::pj_at_nmp_zero, BoundVariant::pj_stable,
                           BoundVariant::pj_modified, BoundVariant::bode, BoundVariant::bode_modified}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

bool is_poisson_variant(BoundVariant v) {
    return v != BoundVariant::bode && v != BoundVariant::bode_modified;
}

double pj_condition(const BoundInputs& in, BoundVariant variant) {
    switch (variant) {
        case BoundVariant::pj_arbitrary: return -std::log(in.g_at_sp) + alpha_terms(in) + beta_terms(in);
        case BoundVariant::pj_at_nmp_zero: return alpha_terms(in) + beta_terms(in);
        case BoundVariant::pj_stable: return alpha_terms(in);
        case BoundVariant::pj_modified:
            return in.sp.strategy == SingularStrategy::explicit_point ? -std::log(in.g_at_sp) : 0.0;
        default: break;
    }
    fail(ErrorCode::InvalidArgument, "not a Poisson-Jensen variant");
}

BoundReport pj_bound(const BoundInputs& in, BoundVariant variant) {
    if (!is_poisson_variant(variant)) fail(ErrorCode::InvalidArgument, "not a Poisson-Jensen variant");
    check_indices(in.indices);
    if (in.sp.eta != 0.0) fail(ErrorCode::InvalidArgument, "Poisson-Jensen bounds need a real singular point");
    if (!(in.sp.sigma > 0.0)) fail(ErrorCode::InvalidArgument, "singular point needs sigma > 0");
    if (variant == BoundVariant::pj_arbitrary || variant == BoundVariant::pj_modified) {
        if (!(in.g_at_sp > 0.0)) fail(ErrorCode::InvalidArgument, "|g(s0)| must be positive");
    }

    BoundReport r;
    r.variant = variant;
    r.condition_value = pj_condition(in, variant);
    r.condition = "K <= 0";
    r.condition_met = r.condition_value <= 0.0;
    if (!r.condition_met) {
        std::ostringstream msg;
        msg << to_string(variant) << ": K = " << r.condition_value << " > 0, no lower bound";
        fail(ErrorCode::ConditionNotMet, msg.str());
    }
    const double phi = std::atan(in.indices.omega_c / in.sp.sigma);
    r.bound_nats = (-kHalfPi * r.condition_value - phi * std::log(in.indices.rho)) / (kHalfPi - phi);
    r.measured_ln_smax = std::log(in.indices.s_max);
    return verdict(r);
}

BoundReport bode_bound(const BoundInputs& in, BoundVariant variant) {
    if (is_poisson_variant(variant)) fail(ErrorCode::InvalidArgument, "not a Bode variant");
    check_indices(in.indices);
    if (!(in.omega_l > in.indices.omega_c) || !std::isfinite(in.omega_l)) {
        std::ostringstream msg;
        msg << "omega_l = " << in.omega_l << " must be finite and exceed omega_c = " << in.indices.omega_c;
        fail(ErrorCode::InvalidTruncation, msg.str());
    }
    double numerator = -in.a * kHalfPi - in.indices.omega_c * std::log(in.indices.rho);
    if (variant == BoundVariant::bode) {
        Complex sa = 0.0;
        Complex sb = 0.0;
        for (const Complex& a : in.alpha) sa += a;
        for (const Complex& b : in.beta) sb += b;
        numerator += std::numbers::pi * (sa.real() - sb.real());
    }
    BoundReport r;
    r.variant = variant;
    r.condition = "numerator > 0";
    r.condition_value = numerator;
    r.condition_met = numerator > 0.0;
    if (!r.condition_met) {
        std::ostringstream msg;
        msg << to_string(variant) << ": numerator " << numerator << " <= 0, no lower bound";
        fail(ErrorCode::ConditionNotMet, msg.str());
    }
    r.bound_nats = numerator / (in.omega_l - in.indices.omega_c);
    r.measured_ln_smax = std::log(in.indices.s_max);
    return verdict(r);
}

BoundReport verdict(BoundReport report) {
    report.satisfied = report.measured_ln_smax >= report.bound_nats;
    report.margin = report.measured_ln_smax - report.bound_nats;
    return report;
}

BoundReport try_bound(const BoundInputs& in, BoundVariant variant) {
    try {
        return is_poisson_variant(variant) ? pj_bound(in, variant) : bode_bound(in, variant);
    } catch (const Error& e) {
        BoundReport r;
        r.variant = variant;
        r.error = e.code();
        r.error_message = e.detail();
        r.measured_ln_smax = in.indices.s_max > 0.0 ? std::log(in.indices.s_max) : 0.0;
        r.bound_nats = std::nan("");
        if (e.code() == ErrorCode::ConditionNotMet) {
            r.condition = is_poisson_variant(variant) ? "K <= 0" : "numerator > 0";
            try {
                r.condition_value = is_poisson_variant(variant) ? pj_condition(in, variant) : 0.0;
            } catch (const Error&) {
            }
        }
        return r;
    }
}

}  // namespace sensint
