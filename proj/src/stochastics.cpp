#include "oneshot/stochastics.hpp"

#include "oneshot/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace oneshot {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// log of the Gamma(shape, rate) density at x > 0
double log_gamma_pdf(double shape, double rate, double x) {
    return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

}  // namespace

Dist::Dist(Normal d) : law_(d) { validate(*this); }
Dist::Dist(ChiSquare d) : law_(d) { validate(*this); }
Dist::Dist(Gamma d) : law_(d) { validate(*this); }
Dist::Dist(InverseGamma d) : law_(d) { validate(*this); }

void validate(const Dist& dist) {
    std::visit(Overloaded{
                   [](const Normal& d) {
                       if (!std::isfinite(d.mu) || !positive_finite(d.sigma))
                           throw ParameterError("normal: sigma must be > 0 and mu finite");
                   },
                   [](const ChiSquare& d) {
                       if (!positive_finite(d.nu)) throw ParameterError("chi2: nu must be > 0");
                   },
                   [](const Gamma& d) {
                       if (!positive_finite(d.shape) || !positive_finite(d.rate))
                           throw ParameterError("gamma: shape and rate must be > 0");
                   },
                   [](const InverseGamma& d) {
                       if (!positive_finite(d.shape) || !positive_finite(d.rate))
                           throw ParameterError("inverse-gamma: shape and rate must be > 0");
                   },
               },
               dist.law());
}

std::string Dist::describe() const {
    std::ostringstream os;
    os.precision(9);
    std::visit(Overloaded{
                   [&](const Normal& d) { os << "Normal(" << d.mu << ", " << d.sigma << ")"; },
                   [&](const ChiSquare& d) { os << "ChiSquare(" << d.nu << ")"; },
                   [&](const Gamma& d) { os << "Gamma(" << d.shape << ", rate " << d.rate << ")"; },
                   [&](const InverseGamma& d) {
                       os << "InverseGamma(" << d.shape << ", rate " << d.rate << ")";
                   },
               },
               law_);
    return os.str();
}

bool Dist::positive_support() const noexcept { return !std::holds_alternative<Normal>(law_); }

bool Dist::centred_unimodal() const noexcept {
    const auto* n = std::get_if<Normal>(&law_);
    return n != nullptr && n->mu == 0.0;
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x6f6e6573u};
    engine_.seed(seq);
}

double NoiseStream::standard_gamma(double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

double sample(const Dist& dist, NoiseStream& stream) {
    return std::visit(Overloaded{
                          [&](const Normal& d) { return d.mu + d.sigma * stream.standard_normal(); },
                          [&](const ChiSquare& d) {
                              if (d.nu == 1.0) {
                                  const double z = stream.standard_normal();
                                  return z * z;
                              }
                              return 2.0 * stream.standard_gamma(0.5 * d.nu);
                          },
                          [&](const Gamma& d) { return stream.standard_gamma(d.shape) / d.rate; },
                          [&](const InverseGamma& d) {
                              return d.rate / stream.standard_gamma(d.shape);
                          },
                      },
                      dist.law());
}

double log_density(const Dist& dist, double x) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    return std::visit(
        Overloaded{
            [&](const Normal& d) {
                const double z = (x - d.mu) / d.sigma;
                return -0.5 * z * z - std::log(d.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
            },
            [&](const ChiSquare& d) { return x > 0.0 ? log_gamma_pdf(0.5 * d.nu, 0.5, x) : neg_inf; },
            [&](const Gamma& d) { return x > 0.0 ? log_gamma_pdf(d.shape, d.rate, x) : neg_inf; },
            [&](const InverseGamma& d) {
                if (x <= 0.0) return neg_inf;
                return d.shape * std::log(d.rate) - std::lgamma(d.shape) -
                       (d.shape + 1.0) * std::log(x) - d.rate / x;
            },
        },
        dist.law());
}

double density(const Dist& dist, double x) { return std::exp(log_density(dist, x)); }

double abs_moment(const Dist& dist, int k) {
    if (k < 0) throw DomainError("abs_moment: k must be >= 0");
    if (k == 0) return 1.0;
    const double kd = k;
    return std::visit(
        Overloaded{
            [&](const Normal& d) {
                if (d.mu == 0.0) {
                    // E|Z|^k = 2^{k/2} Gamma((k+1)/2) / sqrt(pi)
                    return std::pow(d.sigma, kd) *
                           std::exp(0.5 * kd * std::log(2.0) + std::lgamma(0.5 * (kd + 1.0)) -
                                    0.5 * std::log(std::numbers::pi));
                }
                if (k == 1) {
                    const double r = d.mu / d.sigma;
                    return d.sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * r * r) +
                           d.mu * (1.0 - 2.0 * std_normal_cdf(-r));
                }
                if (k == 2) return d.mu * d.mu + d.sigma * d.sigma;
                throw DomainError("abs_moment: no closed form for a non-centred normal with k > 2");
            },
            [&](const ChiSquare& d) {
                const double a = 0.5 * d.nu;
                return std::exp(kd * std::log(2.0) + std::lgamma(a + kd) - std::lgamma(a));
            },
            [&](const Gamma& d) {
                return std::exp(std::lgamma(d.shape + kd) - std::lgamma(d.shape) -
                                kd * std::log(d.rate));
            },
            [&](const InverseGamma& d) {
                if (d.shape <= kd)
                    throw DomainError("abs_moment: inverse-gamma moment of order " +
                                      std::to_string(k) + " needs shape > " + std::to_string(k));
                return std::exp(kd * std::log(d.rate) + std::lgamma(d.shape - kd) -
                                std::lgamma(d.shape));
            },
        },
        dist.law());
}

double log_density_sup(const Dist& dist) {
    // For a Gamma(a, b) law, e^x f(e^x) peaks at e^x = a / b with height
    // a^a e^{-a} / Gamma(a); the rate cancels. log of an InverseGamma(a, b)
    // variable is the negated log of a Gamma(a, b) one, so the height agrees.
    auto height = [](double a) { return std::exp(a * std::log(a) - a - std::lgamma(a)); };
    return std::visit(Overloaded{
                          [](const Normal&) -> double {
                              throw ParameterError(
                                  "log-density height needs a positive law; normal is not");
                          },
                          [&](const ChiSquare& d) { return height(0.5 * d.nu); },
                          [&](const Gamma& d) { return height(d.shape); },
                          [&](const InverseGamma& d) { return height(d.shape); },
                      },
                      dist.law());
}

double log_chi2_density_sup() { return 1.0 / std::sqrt(2.0 * std::numbers::pi * std::numbers::e); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace oneshot
