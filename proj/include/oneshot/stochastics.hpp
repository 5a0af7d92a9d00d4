#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>

namespace oneshot {

// Gamma and InverseGamma use the SHAPE-RATE parametrization everywhere:
//   Gamma(a, b)        has mean a / b
//   InverseGamma(a, b) has mean b / (a - 1) for a > 1
// i.e. InverseGamma(a, b) is the law of 1 / G with G ~ Gamma(a, b).

struct Normal {
    double mu = 0.0;
    double sigma = 1.0;
    bool operator==(const Normal&) const = default;
};

struct ChiSquare {
    double nu = 1.0;
    bool operator==(const ChiSquare&) const = default;
};

struct Gamma {
    double shape = 1.0;
    double rate = 1.0;
    bool operator==(const Gamma&) const = default;
};

struct InverseGamma {
    double shape = 1.0;
    double rate = 1.0;
    bool operator==(const InverseGamma&) const = default;
};

/// One of the four innovation laws used by the chain families.
class Dist {
public:
    using Variant = std::variant<Normal, ChiSquare, Gamma, InverseGamma>;

    Dist() : law_(Normal{}) {}
    Dist(Normal d);        // NOLINT(google-explicit-constructor)
    Dist(ChiSquare d);     // NOLINT(google-explicit-constructor)
    Dist(Gamma d);         // NOLINT(google-explicit-constructor)
    Dist(InverseGamma d);  // NOLINT(google-explicit-constructor)

    [[nodiscard]] const Variant& law() const noexcept { return law_; }
    [[nodiscard]] std::string describe() const;

    /// True when the law is supported on (0, inf).
    [[nodiscard]] bool positive_support() const noexcept;
    /// True when the density is symmetric about zero and decreasing in |x|.
    [[nodiscard]] bool centred_unimodal() const noexcept;

    friend bool operator==(const Dist&, const Dist&) = default;

private:
    Variant law_;
};

/// Reproducible source of innovations. Identical (seed, stream id) pairs give
/// bit-identical draw sequences; distinct stream ids seed independent engines.
/// A stream is owned by one thread at a time.
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, std::uint64_t stream_id);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    double standard_normal() { return std_normal_(engine_); }
    /// Gamma(shape, rate 1).
    double standard_gamma(double shape);
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> std_normal_{0.0, 1.0};
};

double sample(const Dist& dist, NoiseStream& stream);

/// Normalized density; zero outside the support. Evaluated in log space.
double density(const Dist& dist, double x);
double log_density(const Dist& dist, double x);

/// E[|X|^k] in closed form. Throws DomainError when the moment does not exist
/// or has no closed form here (non-centred normal with k > 2).
double abs_moment(const Dist& dist, int k);

/// sup_x e^x f(e^x): the height of the density of log X for a positive law.
double log_density_sup(const Dist& dist);

/// sup_x (2 pi)^{-1/2} exp((x - e^x) / 2) = 1 / sqrt(2 pi e), the peak of the
/// density of log Z^2 with Z standard normal.
double log_chi2_density_sup();

double std_normal_cdf(double x);

/// Throws ParameterError unless every parameter is in range.
void validate(const Dist& dist);

}  // namespace oneshot
