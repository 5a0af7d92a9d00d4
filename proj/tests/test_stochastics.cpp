#include "oneshot/errors.hpp"
#include "oneshot/stochastics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace oneshot;

namespace {

constexpr double kTreesS = 295.437419354838709677;

struct Moments {
    double mean;
    double se;
};

Moments mc_abs_moment(const Dist& d, int k, int n, std::uint64_t stream) {
    NoiseStream s(42, stream);
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = std::pow(std::abs(sample(d, s)), k);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    return {mean, std::sqrt((sum2 / n - mean * mean) / n)};
}

std::vector<Dist> zoo() {
    return {Normal{0.0, 1.0},      Normal{-1.5, 0.3},       ChiSquare{1.0},
            ChiSquare{5.0},        Gamma{0.5, kTreesS / 2}, Gamma{3.0, 2.0},
            InverseGamma{16.5, kTreesS / 2}, InverseGamma{3.5, 1.0}};
}

}  // namespace

TEST_CASE("sample means match the shape-rate parametrization") {
    NoiseStream s(7, 0);
    const int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample(Normal{}, s);
    CHECK(std::abs(sum / n) < 4e-3);

    const double S = kTreesS;
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample(Gamma{0.5, S / 2}, s);
    CHECK(sum / n == doctest::Approx(1.0 / S).epsilon(0.01));

    const double S2 = 295.0;
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample(InverseGamma{16.5, S2 / 2}, s);
    CHECK(sum / n == doctest::Approx((S2 / 2) / 15.5).epsilon(0.01));
}

TEST_CASE("density at reference points") {
    CHECK(density(Normal{}, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
    CHECK(density(ChiSquare{1.0}, 1.0) == doctest::Approx(0.241970724519143349798));
    CHECK(density(InverseGamma{1.0, 2.0}, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(density(Gamma{2.0, 1.0}, -1.0) == 0.0);
    CHECK(density(InverseGamma{2.0, 1.0}, 0.0) == 0.0);
}

TEST_CASE("densities integrate to one") {
    for (const Dist& d : zoo()) {
        CAPTURE(d.describe());
        auto f = [&](double x) { return density(d, x); };
        double total = 0.0;
        if (d.positive_support()) {
            total = oracle::integrate_half_line(f);
        } else {
            total = oracle::integrate_real_line(f);
        }
        CHECK(std::abs(total - 1.0) < 1e-6);
    }
}

TEST_CASE("large shapes stay finite in log space") {
    const Dist d = InverseGamma{170.5, 13000.0};
    const double mode = 13000.0 / 171.5;
    CHECK(std::isfinite(log_density(d, mode)));
    CHECK(density(d, mode) > 0.0);
}

TEST_CASE("samples agree with the density (Kolmogorov-Smirnov)") {
    std::uint64_t stream = 100;
    for (const Dist& d : zoo()) {
        CAPTURE(d.describe());
        NoiseStream s(11, stream++);
        std::vector<double> xs(100'000);
        for (double& x : xs) x = sample(d, s);
        const double lo = d.positive_support() ? 0.0 : -20.0;
        const double ks = oracle::ks_statistic(xs, [&](double x) { return density(d, x); }, lo);
        CHECK(ks < 0.01);
    }
}

TEST_CASE("absolute moments in closed form") {
    CHECK(abs_moment(Normal{}, 1) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)));
    CHECK(abs_moment(Normal{}, 2) == doctest::Approx(1.0));
    CHECK(abs_moment(Normal{0.0, 2.0}, 4) == doctest::Approx(3.0 * 16.0));
    CHECK(abs_moment(Normal{1.0, 1.0}, 2) == doctest::Approx(2.0));
    CHECK(abs_moment(ChiSquare{1.0}, 1) == doctest::Approx(1.0));
    CHECK(abs_moment(ChiSquare{1.0}, 2) == doctest::Approx(3.0));

    const int k = 333;
    const int p = 4;
    const double C = 12345.0;
    const double prod = abs_moment(Gamma{p / 2.0, C / 2}, 1) *
                        abs_moment(InverseGamma{(k + p) / 2.0, C / 2}, 1);
    CHECK(prod == doctest::Approx(double(p) / (k + p - 2)).epsilon(1e-12));

    CHECK_THROWS_AS(abs_moment(InverseGamma{2.0, 1.0}, 2), DomainError);
    CHECK_THROWS_AS(abs_moment(Normal{1.0, 1.0}, 3), DomainError);
}

TEST_CASE("absolute moments agree with Monte Carlo") {
    std::uint64_t stream = 200;
    for (const Dist& d : zoo()) {
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(d.describe());
            CAPTURE(k);
            const Moments m = mc_abs_moment(d, k, 1'000'000, stream++);
            CHECK(std::abs(m.mean - abs_moment(d, k)) <= 3.0 * m.se);
        }
    }
}

TEST_CASE("height of the log chi-square density") {
    const double expect = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
    CHECK(log_chi2_density_sup() == doctest::Approx(expect).epsilon(1e-15));
    auto f = [](double x) { return std::exp(0.5 * (x - std::exp(x))) / std::sqrt(2 * std::numbers::pi); };
    const auto [x, fx] = oracle::golden_max(f, -10.0, 10.0);
    CHECK(std::abs(fx - log_chi2_density_sup()) < 1e-9);
    CHECK(std::abs(x) < 1e-5);
    // log-density (x - e^x)/2 is stationary at 0
    const double h = 1e-6;
    const double slope = ((h - std::exp(h)) - (-h - std::exp(-h))) / (4 * h);
    CHECK(std::abs(slope) < 1e-9);
    CHECK(log_density_sup(ChiSquare{1.0}) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("height of the log density for gamma-type laws") {
    for (const Dist& d : {Dist(Gamma{3.0, 2.0}), Dist(InverseGamma{4.5, 7.0}), Dist(ChiSquare{3.0})}) {
        CAPTURE(d.describe());
        auto f = [&](double x) { return std::exp(x) * density(d, std::exp(x)); };
        const auto [x, fx] = oracle::golden_max(f, -20.0, 20.0);
        CHECK(log_density_sup(d) == doctest::Approx(fx).epsilon(1e-9));
    }
    CHECK_THROWS_AS(log_density_sup(Normal{}), ParameterError);
}

TEST_CASE("streams are reproducible and independent") {
    NoiseStream a(99, 3);
    NoiseStream b(99, 3);
    NoiseStream c(99, 4);
    bool same = true;
    double sxy = 0.0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const double x = a.standard_normal();
        const double y = b.standard_normal();
        same = same && (x == y);
        sxy += x * c.standard_normal();
    }
    CHECK(same);
    CHECK(std::abs(sxy / n) < 4.0 / std::sqrt(double(n)));

    NoiseStream g1(5, 0);
    NoiseStream g2(5, 0);
    for (int i = 0; i < 1000; ++i) CHECK(g1.standard_gamma(0.3) == g2.standard_gamma(0.3));
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(Dist(Normal{0.0, 0.0}), ParameterError);
    CHECK_THROWS_AS(Dist(ChiSquare{-1.0}), ParameterError);
    CHECK_THROWS_AS(Dist(Gamma{1.0, 0.0}), ParameterError);
    CHECK_THROWS_AS(Dist(InverseGamma{0.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(Dist(Normal{std::nan(""), 1.0}), ParameterError);
}
