#pragma once

#include "oneshot/bounds.hpp"
#include "oneshot/models.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oneshot {

/// Joint bin counts of paired samples (a_j, b_j) on a grid of width
/// `bin_width` anchored at `origin`. Bin i covers [origin + i w, origin + (i+1) w).
class PairHistogram {
public:
    explicit PairHistogram(double bin_width, double origin = 0.0);

    void add(double a, double b);
    /// Integer addition; the result is independent of merge order.
    void merge(const PairHistogram& other);

    [[nodiscard]] double bin_width() const noexcept { return width_; }
    [[nodiscard]] double origin() const noexcept { return origin_; }
    [[nodiscard]] std::int64_t total() const noexcept { return total_; }

    struct Cell {
        std::int64_t a = 0;
        std::int64_t b = 0;
        std::int64_t both = 0;  // pairs with a_j and b_j in this bin
    };
    /// Occupied bins in increasing index order.
    [[nodiscard]] std::map<std::int64_t, Cell> cells() const;

private:
    [[nodiscard]] std::int64_t index(double x) const;
    Cell& cell(std::int64_t i);

    double width_;
    double origin_;
    std::int64_t total_ = 0;
    std::int64_t base_ = 0;
    std::vector<Cell> dense_;
    std::map<std::int64_t, Cell> sparse_;
};

struct TVEstimate {
    double estimate = 0.0;
    /// Half the sum over bins of the per-bin standard errors of the count
    /// difference; dominates the expected absolute sampling error.
    double mc_se = 0.0;
};

TVEstimate tv_histogram(const PairHistogram& h);

/// Pairs samples by index. Throws ParameterError for empty or unequal sets.
TVEstimate tv_histogram(std::span<const double> a, std::span<const double> b, double bin_width);

/// Exact TV between the n-step laws of X_n = a X_{n-1} + sigma Z started at x0 and x0p.
double tv_exact_ar1(double a, double sigma, double x0, double x0p, std::int64_t n);

/// tv_exact_ar1 with a = 1/2, sigma = sqrt(3/4).
double tv_exact_ar_normal(double x0, double x0p, std::int64_t n);

struct TVRow {
    std::int64_t n = 0;
    std::optional<double> bound;
    std::optional<double> bound_clamped;
    std::optional<double> tv_sim;
    std::optional<double> tv_exact;
    std::optional<double> mc_se;
};

struct TVCurve {
    std::vector<TVRow> rows;
};

/// CSV with header n,bound,bound_clamped,tv_sim,tv_exact,mc_se; 9 significant
/// digits; absent values as empty cells.
std::string to_csv(const TVCurve& curve);

struct CurveOptions {
    std::int64_t n_max = 10;
    std::int64_t n_paths = 1'000'000;
    double bin_width = 0.01;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: hardware concurrency
    /// Drive both copies with one innovation sequence instead of two.
    bool shared_noise = false;
};

/// Paths are processed in blocks of kCurveBlock; block b draws from streams
/// (seed, 2b) and (seed, 2b + 1), so output is identical for any worker count.
inline constexpr std::int64_t kCurveBlock = 8192;

/// Simulates n_paths pairs from x0 and x0p and records the histogram TV of the
/// observed coordinate at n = 1..n_max. `cert` fills the bound columns where
/// n > n0; the exact column is filled for the ar1 family.
TVCurve simulate_tv_curve(const ModelSpec& model, const State& x0, const State& x0p,
                          const CurveOptions& opts, const BoundCertificate* cert = nullptr);

struct ShiftedL1Options {
    double center = 0.0;
    double half_width = 16.0;  // initial domain, doubled until the tails vanish
    double tol = 1e-6;
};

/// Integral of |f(x + delta) - f(x)| over the real line by refined trapezoid
/// quadrature. Throws PrecisionError when the error estimate exceeds tol.
double shifted_l1(const std::function<double(double)>& f, double delta,
                  const ShiftedL1Options& opts = {});

}  // namespace oneshot
