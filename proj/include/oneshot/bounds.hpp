#pragma once

#include "oneshot/spectral.hpp"
#include "oneshot/stochastics.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace oneshot {

/// bound(n) = C * D^e * gap for n > n0, with e = floor((n - n0 - exponent_offset) / stride).
/// The default offset 1 and stride 1 give C * D^{n - n0 - 1} * gap.
struct BoundCertificate {
    double C = 0.0;
    double D = 0.0;
    int n0 = 0;
    double gap = 0.0;
    std::string family;
    std::vector<std::string> notes;
    int exponent_offset = 1;
    int stride = 1;
    /// Alternative constants carried alongside the ones in use.
    std::map<std::string, double> extras;
};

struct BoundValue {
    double raw;
    double clamped;  // raw clipped to [0, 1]
};

/// Throws ParameterError on C < 0, D outside [0, 1), negative gap, n0 < 0,
/// an offset other than 0 or 1, or a stride < 1.
void validate(const BoundCertificate& cert);

/// Throws DomainError for n <= n0.
BoundValue bound_eval(const BoundCertificate& cert, std::int64_t n);

/// Smallest n > n0 with bound_eval(n).raw < eps.
std::int64_t iterations_to_epsilon(const BoundCertificate& cert, double eps);

/// Coalescing constant for additive-noise chains whose noise density has
/// height K and M modes: K (M + 1) / 2 + [M > 1] / L.
double sideways_C(double K, int M, double L = 1.0);

/// A factor of the random coefficient theta_1: a constant or an independent
/// random variable.
using CoeffFactor = std::variant<double, Dist>;

/// E|theta_1| for theta_1 a product of independent factors. Throws
/// NoContractionError when the value is >= 1.
double random_coeff_D(std::span<const CoeffFactor> factors);

/// Density of InverseGamma(alpha, beta) at its mode beta / (alpha + 1).
double inverse_gamma_mode_height(double alpha, double beta);

/// The location-model coalescing constant as printed:
///   (S/2)^{(J-1)/2} / Gamma((J-1)/2) * (S/(J+1))^{-(J-3)/2} * e^{-(J+1)/2}.
double location_printed_K(int J, double S);

BoundCertificate regression_gibbs_certificate(int k, int p, double C_stat, double gap);

/// C is the printed constant; extras carry the mode heights
/// "K_mode_height" (shape (J-1)/2) and "K_jacobian" (shape (J+3)/2).
BoundCertificate location_gibbs_certificate(int J, double S, double gap);

/// E[V(X_n) | X_{n-1}] <= lambda V(X_{n-1}) + b with V(x) = (x + h)^2.
struct DriftSpec {
    double lambda = 0.5;
    double b = 0.0;
    double h = 0.0;
};

/// sqrt(b / (1 - lambda)) + E|X_0 + h|.
double drift_expected_distance(const DriftSpec& drift, double e_abs_x0_plus_h);

/// E[V(tau^{-1}_n) | tau^{-1}_{n-1} = t] = quad t^2 + lin t + cst.
struct DriftReport {
    double mean_x = 0.0;   // E[X]
    double mean_x2 = 0.0;  // E[X^2]
    double mean_y = 0.0;   // E[Y]
    double mean_y2 = 0.0;  // E[Y^2]
    double quad = 0.0;
    double lin = 0.0;
    double cst = 0.0;
    /// lambda = lin / (2h), b = cst - lambda h^2; for h = 0, lambda = quad, b = E[Y^2].
    DriftSpec matched;
    /// True when 0 < lambda < 1, lambda >= quad and the linear term is matched.
    bool consistent = false;
    std::string note;
};

DriftReport location_drift_constants(int J, double S, double h);

/// Weighted least-squares fit of E[V(tau^{-1}_1) | tau^{-1}_0 = t] on a grid
/// of t values, each estimated from `draws` transitions on its own stream.
struct DriftFit {
    double quad = 0.0;
    double lin = 0.0;
    double cst = 0.0;
    DriftSpec matched;
    std::vector<double> grid;
    std::vector<double> means;
};

DriftFit fit_location_drift_mc(int J, double S, double h, std::span<const double> grid,
                               std::int64_t draws, std::uint64_t seed);

/// A r^n bound for one coordinate.
struct RateBound {
    double A = 0.0;
    double r = 0.0;
};

/// d coordinates evolving independently: A' = d * max A, r' = max r.
RateBound independent_coordinates(std::span<const RateBound> coords, int d);

/// d independent AR(1) coordinates (a, sigma), per-coordinate gap `gap`.
/// Bound d * K * gap * |a|^n with K the N(0, sigma^2) density height.
BoundCertificate ar_normal_independent_certificate(int d, double a, double sigma, double gap);

/// Sideways bound for X_n = a X_{n-1} + sigma Z.
BoundCertificate ar1_certificate(double a, double sigma, double gap);

/// Symmetric A only. C = sqrt(d / 2 pi) frob(Sigma^{-1}) frob(P) frob(P^{-1}),
/// gap = ||x0 - x0'||_2, D = max |lambda_i|, bound C D^n gap.
BoundCertificate ar_normal_d_certificate(const Matrix& A, const Matrix& Sigma,
                                         std::span<const double> x0,
                                         std::span<const double> x0_prime);

/// Two-step contraction ratio for the nonlinear AR chain; continuous on the
/// diagonal.
double nonlinear_ar_ratio(double x, double y);

struct NonlinearD {
    double D = 0.0;
    double D2 = 0.0;
    double grid_sup = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/// sup of nonlinear_ar_ratio over a grid x grid lattice on [-range, range]^2,
/// then refined by Nelder-Mead from the grid argmax.
NonlinearD nonlinear_ar_D(int grid = 2001, double range = 12.566370614359172, int workers = 0,
                          bool refine = true);

/// Bound (1 / sqrt(2 pi)) * D2^{floor(n/2)} * gap.
BoundCertificate nonlinear_ar_certificate(double D2, double gap);

/// C = beta1 (M + 1) / (2 beta0) sup_x e^x f_Z(e^x), D = beta1 E|Z|.
BoundCertificate larch_certificate(double beta0, double beta1, const Dist& z, int M, double gap);

/// C = |a| / c. D is the Jensen-relaxed |a| sqrt(E Z^2) when `jensen` holds,
/// else the exact |a| E|Z|; both are kept in extras.
BoundCertificate asym_arch_certificate(double a, double b, double c, const Dist& z, double gap,
                                       bool jensen = true);

struct GarchInputs {
    double alpha2 = 0.0;
    double beta2 = 0.0;
    double gamma2 = 0.0;
    Dist z = Normal{};
    double x0 = 0.0;
    double x0p = 0.0;
    double s20 = 0.0;
    double s20p = 0.0;
};

/// n0 = 1, C = D / (sqrt(alpha2) E|Z|), gap = sqrt(beta2 |x0^2 - x0'^2| +
/// gamma2 |s20 - s20'|) E|Z|, D = sqrt(beta2 E Z^2 + gamma2).
BoundCertificate garch_certificate(const GarchInputs& in);

/// D^{n-1} / sqrt(alpha2) * sqrt(beta2 |x0^2 - x0'^2| + gamma2 |s20 - s20'|), n >= 1.
double garch_direct_bound(const GarchInputs& in, std::int64_t n);

}  // namespace oneshot
