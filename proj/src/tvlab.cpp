#include "oneshot/tvlab.hpp"

#include "oneshot/errors.hpp"

#include <boost/math/quadrature/trapezoidal.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace oneshot {

namespace {

constexpr std::int64_t kDenseLimit = 1 << 18;

}  // namespace

PairHistogram::PairHistogram(double bin_width, double origin) : width_(bin_width), origin_(origin) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw ParameterError("histogram: bin width must be > 0");
    if (!std::isfinite(origin)) throw ParameterError("histogram: origin must be finite");
}

std::int64_t PairHistogram::index(double x) const {
    if (!std::isfinite(x)) throw StateError("histogram: non-finite sample");
    const double i = std::floor((x - origin_) / width_);
    if (std::abs(i) > 9.0e18) throw StateError("histogram: sample outside the representable grid");
    return static_cast<std::int64_t>(i);
}

PairHistogram::Cell& PairHistogram::cell(std::int64_t i) {
    if (dense_.empty()) {
        base_ = i - 512;
        dense_.resize(1024);
    }
    if (i >= base_ && i < base_ + std::int64_t(dense_.size())) return dense_[i - base_];

    const std::int64_t lo = std::min(i, base_);
    const std::int64_t hi = std::max(i + 1, base_ + std::int64_t(dense_.size()));
    if (hi - lo > kDenseLimit) return sparse_[i];
    // grow geometrically in the direction of the new bin
    std::int64_t size = std::int64_t(dense_.size());
    while (size < hi - lo) size *= 2;
    size = std::min(size, kDenseLimit);
    const std::int64_t new_base = i < base_ ? hi - size : lo;
    std::vector<Cell> grown(static_cast<std::size_t>(size));
    std::copy(dense_.begin(), dense_.end(), grown.begin() + (base_ - new_base));
    dense_.swap(grown);
    base_ = new_base;
    return dense_[i - base_];
}

void PairHistogram::add(double a, double b) {
    const std::int64_t ia = index(a);
    const std::int64_t ib = index(b);
    ++cell(ia).a;
    ++cell(ib).b;
    if (ia == ib) ++cell(ia).both;
    ++total_;
}

std::map<std::int64_t, PairHistogram::Cell> PairHistogram::cells() const {
    std::map<std::int64_t, Cell> out = sparse_;
    for (std::size_t k = 0; k < dense_.size(); ++k) {
        const Cell& c = dense_[k];
        if (c.a == 0 && c.b == 0) continue;
        Cell& o = out[base_ + std::int64_t(k)];
        o.a += c.a;
        o.b += c.b;
        o.both += c.both;
    }
    return out;
}

void PairHistogram::merge(const PairHistogram& other) {
    if (other.width_ != width_ || other.origin_ != origin_)
        throw ParameterError("histogram: cannot merge histograms on different grids");
    for (const auto& [i, c] : other.cells()) {
        Cell& mine = cell(i);
        mine.a += c.a;
        mine.b += c.b;
        mine.both += c.both;
    }
    total_ += other.total_;
}

TVEstimate tv_histogram(const PairHistogram& h) {
    if (h.total() == 0) throw ParameterError("tv_histogram: empty samples");
    const double n = double(h.total());
    double sum_abs = 0.0;
    double sum_se = 0.0;
    for (const auto& [i, c] : h.cells()) {
        const double d = double(c.a - c.b) / n;
        sum_abs += std::abs(d);
        // u_j = 1{a_j in bin} - 1{b_j in bin}; E[u^2] = (a + b - 2 both) / n
        const double second = double(c.a + c.b - 2 * c.both) / n;
        const double var = std::max(second - d * d, 0.0);
        sum_se += std::sqrt(var / n);
    }
    return {0.5 * sum_abs, 0.5 * sum_se};
}

TVEstimate tv_histogram(std::span<const double> a, std::span<const double> b, double bin_width) {
    if (a.empty() || b.empty()) throw ParameterError("tv_histogram: empty samples");
    if (a.size() != b.size()) throw ParameterError("tv_histogram: sample sets differ in size");
    PairHistogram h(bin_width);
    for (std::size_t j = 0; j < a.size(); ++j) h.add(a[j], b[j]);
    return tv_histogram(h);
}

double tv_exact_ar1(double a, double sigma, double x0, double x0p, std::int64_t n) {
    if (n < 1) throw DomainError("tv_exact_ar1: n must be >= 1");
    if (!(sigma > 0.0)) throw ParameterError("tv_exact_ar1: sigma must be > 0");
    const double shift = std::abs(std::pow(a, double(n)) * (x0 - x0p));
    if (shift == 0.0) return 0.0;
    const double a2 = a * a;
    const double var = a2 == 1.0 ? sigma * sigma * double(n)
                                 : sigma * sigma * (1.0 - std::pow(a2, double(n))) / (1.0 - a2);
    return 1.0 - 2.0 * std_normal_cdf(-shift / (2.0 * std::sqrt(var)));
}

double tv_exact_ar_normal(double x0, double x0p, std::int64_t n) {
    return tv_exact_ar1(0.5, std::sqrt(0.75), x0, x0p, n);
}

std::string to_csv(const TVCurve& curve) {
    std::string out = "n,bound,bound_clamped,tv_sim,tv_exact,mc_se\n";
    char buf[64];
    auto cell = [&](const std::optional<double>& v) {
        out += ',';
        if (v) {
            std::snprintf(buf, sizeof buf, "%.9g", *v);
            out += buf;
        }
    };
    for (const auto& r : curve.rows) {
        out += std::to_string(r.n);
        cell(r.bound);
        cell(r.bound_clamped);
        cell(r.tv_sim);
        cell(r.tv_exact);
        cell(r.mc_se);
        out += '\n';
    }
    return out;
}

TVCurve simulate_tv_curve(const ModelSpec& model, const State& x0, const State& x0p,
                          const CurveOptions& opts, const BoundCertificate* cert) {
    if (opts.n_max < 1) throw ParameterError("simulate_tv_curve: n_max must be >= 1");
    if (opts.n_paths < 1) throw ParameterError("simulate_tv_curve: n_paths must be >= 1");
    if (!(opts.bin_width > 0.0)) throw ParameterError("simulate_tv_curve: bin width must be > 0");
    model.check_state(x0);
    model.check_state(x0p);
    if (cert != nullptr) validate(*cert);

    const std::int64_t blocks = (opts.n_paths + kCurveBlock - 1) / kCurveBlock;
    int workers = opts.workers > 0 ? opts.workers
                                   : int(std::max(1u, std::thread::hardware_concurrency()));
    workers = int(std::min<std::int64_t>(workers, blocks));

    using Hists = std::vector<PairHistogram>;
    auto fresh = [&] { return Hists(std::size_t(opts.n_max), PairHistogram(opts.bin_width)); };
    std::vector<Hists> per_worker(std::size_t(workers), Hists{});
    std::atomic<std::int64_t> next{0};
    std::mutex err_mu;
    std::exception_ptr failure;

    auto work = [&](int w) {
        try {
            Hists hists = fresh();
            const std::size_t nd = model.noise_dim();
            std::vector<double> noise(nd);
            State x;
            State xp;
            for (std::int64_t b = next++; b < blocks; b = next++) {
                NoiseStream sa(opts.seed, 2 * std::uint64_t(b));
                NoiseStream sb(opts.seed, 2 * std::uint64_t(b) + 1);
                const std::int64_t count = std::min(kCurveBlock, opts.n_paths - b * kCurveBlock);
                for (std::int64_t j = 0; j < count; ++j) {
                    x = x0;
                    xp = x0p;
                    for (std::int64_t n = 0; n < opts.n_max; ++n) {
                        model.draw_noise(sa, noise);
                        model.advance(x, noise);
                        if (!opts.shared_noise) model.draw_noise(sb, noise);
                        model.advance(xp, noise);
                        hists[std::size_t(n)].add(model.observe(x), model.observe(xp));
                    }
                }
            }
            per_worker[std::size_t(w)] = std::move(hists);
        } catch (...) {
            std::lock_guard lock(err_mu);
            if (!failure) failure = std::current_exception();
            next = blocks;
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    Hists total = fresh();
    for (const auto& hs : per_worker)
        for (std::size_t n = 0; n < hs.size(); ++n) total[n].merge(hs[n]);

    const auto* ar1 = std::get_if<ARNormal1D>(&model.family());
    TVCurve curve;
    for (std::int64_t n = 1; n <= opts.n_max; ++n) {
        TVRow row;
        row.n = n;
        const TVEstimate est = tv_histogram(total[std::size_t(n - 1)]);
        row.tv_sim = est.estimate;
        row.mc_se = est.mc_se;
        if (cert != nullptr && n > cert->n0) {
            const BoundValue v = bound_eval(*cert, n);
            row.bound = v.raw;
            row.bound_clamped = v.clamped;
        }
        if (ar1 != nullptr) row.tv_exact = tv_exact_ar1(ar1->a, ar1->sigma, x0[0], x0p[0], n);
        curve.rows.push_back(row);
    }
    return curve;
}

double shifted_l1(const std::function<double(double)>& f, double delta,
                  const ShiftedL1Options& opts) {
    if (!std::isfinite(delta)) throw ParameterError("shifted_l1: delta must be finite");
    if (!(opts.half_width > 0.0) || !(opts.tol > 0.0))
        throw ParameterError("shifted_l1: half width and tolerance must be > 0");
    if (delta == 0.0) return 0.0;

    auto integrand = [&](double x) { return std::abs(f(x + delta) - f(x)); };
    auto integrate = [&](double r, double& err) {
        double l1 = 0.0;
        return boost::math::quadrature::trapezoidal(integrand, opts.center - r, opts.center + r,
                                                    1e-13, 22, &err, &l1);
    };

    double r = opts.half_width;
    double err = 0.0;
    double prev = integrate(r, err);
    for (int k = 0; k < 20; ++k) {
        r *= 2.0;
        double err2 = 0.0;
        const double cur = integrate(r, err2);
        const double tail = std::abs(cur - prev);
        prev = cur;
        err = err2;
        if (tail < 0.1 * opts.tol) {
            if (err + tail >= opts.tol)
                throw PrecisionError("shifted_l1: quadrature error estimate " +
                                     std::to_string(err + tail) + " exceeds tolerance");
            return cur;
        }
    }
    throw PrecisionError("shifted_l1: integrand tails did not vanish");
}

}  // namespace oneshot
