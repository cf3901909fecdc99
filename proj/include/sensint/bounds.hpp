#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sensint/errors.hpp"
#include "sensint/sensitivity.hpp"
#include "sensint/sweep.hpp"

namespace sensint {

enum class BoundVariant {
    pj_arbitrary,    ///< Poisson-Jensen at an arbitrary real point
    pj_at_nmp_zero,  ///< Poisson-Jensen at an open-loop NMP zero (no |g(s0)| term)
    pj_stable,       ///< open-loop NMP zero, unstable open-loop poles only
    pj_modified,     ///< modified sensitivity, K = -ln|g~(s0)|, 0 at a zero-like point
    bode,            ///< truncated Bode integral with alpha/beta sums
    bode_modified,   ///< truncated Bode integral, gain term only
};

std::string_view to_string(BoundVariant v);
std::optional<BoundVariant> bound_variant_from_string(std::string_view s);
bool is_poisson_variant(BoundVariant v);

struct BoundInputs {
    SensitivityIndices indices;
    SingularPoint sp;
    std::vector<Complex> alpha;
    std::vector<Complex> beta;
    double g_at_sp = 1.0;  ///< |g(s0)| (or |g~(s0)| for pj_modified)
    double a = 0.0;
    double omega_l = 0.0;
};

struct BoundReport {
    BoundVariant variant = BoundVariant::pj_arbitrary;
    double bound_nats = 0.0;
    double measured_ln_smax = 0.0;
    bool satisfied = false;
    double margin = 0.0;
    std::string condition;       ///< the sign condition, spelled out
    double condition_value = 0.0;  ///< K for Poisson-Jensen, the numerator for Bode
    bool condition_met = false;
    std::optional<ErrorCode> error;  ///< set when the bound could not be formed
    std::string error_message;
};

/// Sign-condition quantity K of the Poisson-Jensen variants; the bound
/// exists when K <= 0.
double pj_condition(const BoundInputs& in, BoundVariant variant);

/// (-(pi/2) K - atan(wc/sigma) ln rho) / (pi/2 - atan(wc/sigma)).
/// Throws ConditionNotMet when K > 0.
BoundReport pj_bound(const BoundInputs& in, BoundVariant variant);

/// (-a pi/2 + pi sum alpha - pi sum beta - wc ln rho) / (wl - wc); the
/// modified variant drops the sums. Throws InvalidTruncation for wl <= wc and
/// ConditionNotMet for a non-positive numerator.
BoundReport bode_bound(const BoundInputs& in, BoundVariant variant);

/// Fills satisfied and margin from measured_ln_smax and bound_nats.
BoundReport verdict(BoundReport report);

/// pj_bound or bode_bound with failures recorded in the report instead of
/// thrown.
BoundReport try_bound(const BoundInputs& in, BoundVariant variant);

}  // namespace sensint
