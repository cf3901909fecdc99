#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sensint/polynomial.hpp"
#include "sensint/transfer_function.hpp"

namespace sensint {

enum class SensitivityKind { plain, modified };

enum class SingularStrategy { explicit_point, open_loop_nmp_zero, delay_heuristic };

std::string_view to_string(SensitivityKind kind);
std::string_view to_string(SingularStrategy strategy);

/// Point sigma + j*eta in the open right half plane where the Poisson kernel
/// is centred.
struct SingularPoint {
    double sigma = 1.0;
    double eta = 0.0;
    SingularStrategy strategy = SingularStrategy::explicit_point;

    Complex value() const noexcept { return {sigma, eta}; }
};

struct ShapingConfig {
    double root_tol = kDefaultRootTol;
    double rhp_tol = kDefaultRhpTol;
    int pade_order = 6;
};

/// kappa(s) = prod (s + conj(a))/(s - a) * prod (s - b)/(s + conj(b)).
class AllPass {
public:
    AllPass() = default;
    AllPass(std::vector<Complex> alpha, std::vector<Complex> beta);

    const std::vector<Complex>& alpha() const noexcept { return alpha_; }
    const std::vector<Complex>& beta() const noexcept { return beta_; }
    bool is_identity() const noexcept { return alpha_.empty() && beta_.empty(); }

    Complex operator()(Complex s) const;

    /// prod (s - a), real coefficients.
    Polynomial alpha_poles() const;
    /// prod (s + conj(a)), real coefficients.
    Polynomial alpha_zeros() const;
    /// prod (s + conj(b)), real coefficients.
    Polynomial beta_poles() const;
    /// prod (s - b), real coefficients.
    Polynomial beta_zeros() const;

    Polynomial numerator() const { return alpha_zeros() * beta_zeros(); }
    Polynomial denominator() const { return alpha_poles() * beta_poles(); }

private:
    std::vector<Complex> alpha_;
    std::vector<Complex> beta_;
};

/// Throws InvalidBlaschkeFactor unless every root lies in the open RHP.
AllPass all_pass_kappa(const RootSet& alpha, const RootSet& beta);

/// Right-half-plane roots of 1 + G(s) = 0.
struct ClosedLoopPoles {
    RootSet beta;
    int winding_count = 0;
    double winding_raw = 0.0;
    bool exact = false;  ///< true when G has no delay and no surrogate was needed
};

/// Closed-loop RHP poles: exact characteristic polynomial without delay,
/// otherwise a Pade surrogate whose RHP count must agree with the
/// argument-principle count along the imaginary axis.
ClosedLoopPoles closed_loop_rhp_poles(const LoopTransfer& G, const ShapingConfig& cfg = {});

/// g(s) = kappa(s) / (1 + G(s)), with kappa = 1 for the plain kind.
class SensitivityModel {
public:
    SensitivityModel() = default;
    SensitivityModel(LoopTransfer loop, SensitivityKind kind, RootSet alpha, RootSet beta, RootSet zeta,
                     AllPass kappa);

    const LoopTransfer& loop() const noexcept { return loop_; }
    SensitivityKind kind() const noexcept { return kind_; }
    const RootSet& alpha() const noexcept { return alpha_; }
    const RootSet& beta() const noexcept { return beta_; }
    const RootSet& zeta() const noexcept { return zeta_; }
    const AllPass& kappa() const noexcept { return kappa_; }

    Complex operator()(Complex s) const;
    /// g(j*omega). Throws MarginallyStableLoop where 1 + G vanishes on the axis.
    Complex at_frequency(double omega) const;
    double magnitude(double omega) const { return std::abs(at_frequency(omega)); }
    double log_magnitude(double omega) const { return std::log(magnitude(omega)); }

    /// Frequencies on the axis where g is exactly zero (axis poles of G).
    std::vector<double> axis_zeros() const;

private:
    LoopTransfer loop_;
    SensitivityKind kind_ = SensitivityKind::plain;
    RootSet alpha_;
    RootSet beta_;
    RootSet zeta_;
    AllPass kappa_;
};

/// Plain sensitivity 1/(1+G) with alpha (RHP poles of G), zeta (RHP zeros of
/// a single-term G) and beta (RHP closed-loop poles).
SensitivityModel make_sensitivity(const LoopTransfer& G, const ShapingConfig& cfg = {});

/// kappa * g for the same loop; the result has empty alpha and beta and keeps
/// the reflected sets inside its AllPass.
SensitivityModel modified_sensitivity(const SensitivityModel& m);

/// G~ = (1 - kappa + G)/kappa as a sum of delayed rational terms over a
/// denominator from which the alpha factors have been divided out exactly.
LoopTransfer modified_forward_path(const LoopTransfer& G, const AllPass& kappa);

/// G(s) * prod (s - a)/(s + conj(a)) over the RHP poles a of G, built by
/// replacing each unstable denominator factor with its mirror image.
TransferFunction reflect_unstable_poles(const TransferFunction& G, const ShapingConfig& cfg = {});

/// Explicit point if given; otherwise the largest-real-part open-loop NMP
/// zero, then sigma = 2/td for delayed loops. Throws InvalidArgument when no
/// rule applies.
SingularPoint resolve_singular_point(const SensitivityModel& m, std::optional<SingularPoint> explicit_point = {});

}  // namespace sensint
