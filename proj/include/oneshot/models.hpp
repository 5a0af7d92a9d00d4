#pragma once

#include "oneshot/spectral.hpp"
#include "oneshot/stochastics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace oneshot {

using State = std::vector<double>;

// Chain families. Each is an iterated random function X_n = g(theta_n, X_{n-1}).

/// X_{n+1} = (X_n - sin X_n) / 2 + Z.
struct NonlinearAR {
    bool operator==(const NonlinearAR&) const = default;
};

/// X_n = a X_{n-1} + sigma Z.
struct ARNormal1D {
    double a = 0.5;
    double sigma = 1.0;
    bool operator==(const ARNormal1D&) const = default;
};

/// X_n = A X_{n-1} + Sigma Z, Z a standard normal vector.
struct ARNormalD {
    Matrix A;
    Matrix Sigma;
    bool operator==(const ARNormalD&) const = default;
};

/// d independent copies of ARNormal1D(a, sigma).
struct ARNormalIndependent {
    int d = 1;
    double a = 0.5;
    double sigma = 1.0;
    bool operator==(const ARNormalIndependent&) const = default;
};

/// Precision chain of the normal location Gibbs sampler:
///   tau^{-1}_n = X Y tau^{-1}_{n-1} + Y,
///   X ~ Gamma(1/2, S/2), Y ~ InverseGamma((J+2)/2, S/2).
/// ybar only positions the reconstructed mean draw.
struct LocationGibbsTau {
    int J = 3;
    double S = 1.0;
    double ybar = 0.0;
    bool operator==(const LocationGibbsTau&) const = default;
};

/// Variance chain of the Bayesian regression Gibbs sampler:
///   sigma^2_n = X Y sigma^2_{n-1} + Y,
///   X ~ Gamma(p/2, C/2), Y ~ InverseGamma((k+p)/2, C/2).
struct RegressionGibbsSigma {
    int k = 3;
    int p = 1;
    double C = 1.0;
    bool operator==(const RegressionGibbsSigma&) const = default;
};

/// X_n = (beta0 + beta1 X_{n-1}) Z with Z > 0. With Z ~ ChiSquare(1) this is
/// the squared chain of the LARCH model driven by a standard normal.
struct LARCH {
    double beta0 = 1.0;
    double beta1 = 0.5;
    Dist z = ChiSquare{1.0};
    bool operator==(const LARCH&) const = default;
};

/// X_n = sqrt((a X_{n-1} + b)^2 + c^2) Z.
struct AsymARCH {
    double a = 0.5;
    double b = 0.0;
    double c = 1.0;
    Dist z = Normal{};
    bool operator==(const AsymARCH&) const = default;
};

/// X_n = sigma_n Z, sigma^2_n = alpha2 + beta2 X^2_{n-1} + gamma2 sigma^2_{n-1}.
/// State is the pair (X, sigma^2).
struct GARCH {
    double alpha2 = 0.1;
    double beta2 = 0.1;
    double gamma2 = 0.1;
    Dist z = Normal{};
    bool operator==(const GARCH&) const = default;
};

class ModelSpec {
public:
    using Variant = std::variant<NonlinearAR, ARNormal1D, ARNormalD, ARNormalIndependent,
                                 LocationGibbsTau, RegressionGibbsSigma, LARCH, AsymARCH, GARCH>;

    template <class F>
    ModelSpec(F family) : family_(std::move(family)) {  // NOLINT(google-explicit-constructor)
        validate();
    }

    [[nodiscard]] const Variant& family() const noexcept { return family_; }
    [[nodiscard]] std::string name() const;

    [[nodiscard]] std::size_t state_dim() const;
    /// Number of raw draws consumed by one transition.
    [[nodiscard]] std::size_t noise_dim() const;

    void draw_noise(NoiseStream& stream, std::span<double> out) const;
    /// Transition in place. Deterministic given the state and the draws.
    void advance(State& x, std::span<const double> noise) const;

    /// Throws StateError when x is not a valid state of this family.
    void check_state(const State& x) const;

    /// Scalar coordinate whose law is compared in TV curves.
    [[nodiscard]] double observe(const State& x) const { return x[0]; }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

private:
    void validate() const;
    Variant family_;
};

/// One transition with explicit draws.
State step(const ModelSpec& model, const State& x, std::span<const double> noise);

enum class CouplingMode { Shared, Independent };

struct CoupledState {
    State x;
    State x_prime;
    int iteration = 0;
};

/// Advances both copies. Shared mode drives both with draws from `stream`;
/// Independent mode draws the second copy's innovations from `stream_prime`.
CoupledState couple_step(const ModelSpec& model, const CoupledState& cs, CouplingMode mode,
                         NoiseStream& stream, NoiseStream& stream_prime);

struct DeinitDraw {
    double reduced;  // tau^{-1}_n or sigma^2_n
    /// Full Gibbs draw at step n. Location: (mu_n, tau^{-1}_n). Regression:
    /// (u_1..u_p, sigma^2_n) where u = sigma_{n-1} eps are the whitened
    /// coefficients, beta_n = beta_tilde + A^{-1/2} u.
    State full;
};

/// One Gibbs scan driven by the same draws as the reduced chain; the full
/// draw at step n depends on the reduced value at step n-1 only.
DeinitDraw deinit_pair_step(const ModelSpec& model, double reduced_prev, NoiseStream& stream);

/// Full Gibbs update computed through the conditional laws rather than the
/// reduced recursion; used to cross-check the algebraic reduction.
DeinitDraw full_gibbs_step(const ModelSpec& model, double reduced_prev,
                           std::span<const double> noise);

}  // namespace oneshot
