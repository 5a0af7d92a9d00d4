#include "oneshot/bounds.hpp"

#include "oneshot/errors.hpp"
#include "oneshot/models.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace oneshot {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

void require_contraction(double D, const std::string& what) {
    if (!(D < 1.0))
        throw NoContractionError(what + ": contraction rate D = " + std::to_string(D) +
                                 " is not below 1");
}

std::int64_t exponent_at(const BoundCertificate& c, std::int64_t n) {
    return (n - c.n0 - c.exponent_offset) / c.stride;
}

}  // namespace

void validate(const BoundCertificate& c) {
    require(std::isfinite(c.C) && c.C >= 0.0, "certificate: C must be finite and >= 0");
    require(std::isfinite(c.D) && c.D >= 0.0, "certificate: D must be >= 0");
    require_contraction(c.D, "certificate");
    require(std::isfinite(c.gap) && c.gap >= 0.0, "certificate: gap must be finite and >= 0");
    require(c.n0 >= 0, "certificate: n0 must be >= 0");
    require(c.exponent_offset == 0 || c.exponent_offset == 1,
            "certificate: exponent offset must be 0 or 1");
    require(c.stride >= 1, "certificate: stride must be >= 1");
}

BoundValue bound_eval(const BoundCertificate& cert, std::int64_t n) {
    validate(cert);
    if (n <= cert.n0)
        throw DomainError("bound_eval: n = " + std::to_string(n) + " must exceed n0 = " +
                          std::to_string(cert.n0));
    const double scale = cert.C * cert.gap;
    const double raw = scale == 0.0 ? 0.0 : scale * std::pow(cert.D, double(exponent_at(cert, n)));
    return {raw, std::clamp(raw, 0.0, 1.0)};
}

std::int64_t iterations_to_epsilon(const BoundCertificate& cert, double eps) {
    validate(cert);
    require(eps > 0.0 && eps < 1.0, "iterations_to_epsilon: epsilon must lie in (0, 1)");
    const std::int64_t first = cert.n0 + 1;
    const double scale = cert.C * cert.gap;
    if (bound_eval(cert, first).raw < eps) return first;
    std::int64_t e = 1;
    if (cert.D > 0.0) {
        const double need = std::log(eps / scale) / std::log(cert.D);
        e = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(need)));
    }
    std::int64_t n = cert.n0 + cert.exponent_offset + cert.stride * e;
    n = std::max(n, first);
    while (n > first && bound_eval(cert, n - 1).raw < eps) --n;
    while (bound_eval(cert, n).raw >= eps) ++n;
    return n;
}

double sideways_C(double K, int M, double L) {
    require(std::isfinite(K) && K > 0.0, "sideways_C: K must be > 0");
    require(M >= 1, "sideways_C: M must be >= 1");
    if (M == 1) return K;
    require(std::isfinite(L) && L > 0.0, "sideways_C: L must be > 0 when M > 1");
    return K * (M + 1) / 2.0 + 1.0 / L;
}

double random_coeff_D(std::span<const CoeffFactor> factors) {
    require(!factors.empty(), "random_coeff_D: no factors given");
    double d = 1.0;
    for (const auto& f : factors) {
        if (const double* c = std::get_if<double>(&f)) {
            require(std::isfinite(*c), "random_coeff_D: constant factor must be finite");
            d *= std::abs(*c);
        } else {
            d *= abs_moment(std::get<Dist>(f), 1);
        }
    }
    require_contraction(d, "random_coeff_D");
    return d;
}

double inverse_gamma_mode_height(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && std::isfinite(beta) && beta > 0.0,
            "inverse_gamma_mode_height: alpha and beta must be > 0");
    const double a1 = alpha + 1.0;
    return std::exp(alpha * std::log(beta) - std::lgamma(alpha) + a1 * std::log(a1 / beta) - a1);
}

double location_printed_K(int J, double S) {
    require(J >= 3, "location_printed_K: J must be >= 3");
    require(std::isfinite(S) && S > 0.0, "location_printed_K: S must be > 0");
    const double a = 0.5 * (J - 1);
    return std::exp(a * std::log(0.5 * S) - std::lgamma(a) -
                    0.5 * (J - 3) * std::log(S / (J + 1)) - 0.5 * (J + 1));
}

BoundCertificate regression_gibbs_certificate(int k, int p, double C_stat, double gap) {
    require(k >= 1 && p >= 1, "regression_gibbs_certificate: k and p must be >= 1");
    require(k + p > 2, "regression_gibbs_certificate: k + p must exceed 2");
    require(std::isfinite(C_stat) && C_stat > 0.0, "regression_gibbs_certificate: C must be > 0");
    require(std::isfinite(gap) && gap >= 0.0, "regression_gibbs_certificate: gap must be >= 0");
    const double D = double(p) / double(k + p - 2);
    require_contraction(D, "regression_gibbs_certificate");

    BoundCertificate c;
    c.family = "regression-gibbs";
    c.C = inverse_gamma_mode_height(0.5 * (k + 2 * p), 0.5 * C_stat);
    c.D = D;
    c.gap = gap;
    c.notes.push_back("C: inverse-gamma mode height, shape (k+2p)/2, rate C/2");
    c.notes.push_back("D = p/(k+p-2)");
    return c;
}

BoundCertificate location_gibbs_certificate(int J, double S, double gap) {
    require(J >= 3, "location_gibbs_certificate: J must be >= 3");
    require(std::isfinite(gap) && gap >= 0.0, "location_gibbs_certificate: gap must be >= 0");
    BoundCertificate c;
    c.family = "location-gibbs";
    c.C = location_printed_K(J, S);
    c.D = 1.0 / J;
    c.gap = gap;
    c.extras["K_printed"] = c.C;
    c.extras["K_mode_height"] = inverse_gamma_mode_height(0.5 * (J - 1), 0.5 * S);
    c.extras["K_jacobian"] = inverse_gamma_mode_height(0.5 * (J + 3), 0.5 * S);
    c.notes.push_back("C uses the printed K formula with exponent -(J-3)/2");
    c.notes.push_back(
        "K_mode_height: inverse-gamma((J-1)/2, S/2) mode height; "
        "K_jacobian: mode height with the change-of-variables shape (J+3)/2");
    c.notes.push_back("D = 1/J");
    return c;
}

double drift_expected_distance(const DriftSpec& drift, double e_abs_x0_plus_h) {
    require(std::isfinite(drift.lambda) && drift.lambda >= 0.0 && drift.lambda < 1.0,
            "drift_expected_distance: lambda must lie in [0, 1)");
    require(std::isfinite(drift.b) && drift.b >= 0.0, "drift_expected_distance: b must be >= 0");
    require(std::isfinite(e_abs_x0_plus_h) && e_abs_x0_plus_h >= 0.0,
            "drift_expected_distance: E|X0 + h| must be >= 0");
    return std::sqrt(drift.b / (1.0 - drift.lambda)) + e_abs_x0_plus_h;
}

namespace {

DriftSpec match_drift(double quad, double lin, double cst, double h, double mean_y2) {
    if (h == 0.0) return {quad, mean_y2, 0.0};
    const double lambda = lin / (2.0 * h);
    return {lambda, cst - lambda * h * h, h};
}

}  // namespace

DriftReport location_drift_constants(int J, double S, double h) {
    require(J >= 5, "location_drift_constants: J must be >= 5");
    require(std::isfinite(S) && S > 0.0, "location_drift_constants: S must be > 0");
    require(std::isfinite(h), "location_drift_constants: h must be finite");
    const Dist X = Gamma{0.5, 0.5 * S};
    const Dist Y = InverseGamma{0.5 * (J + 2), 0.5 * S};

    DriftReport r;
    r.mean_x = abs_moment(X, 1);
    r.mean_x2 = abs_moment(X, 2);
    r.mean_y = abs_moment(Y, 1);
    r.mean_y2 = abs_moment(Y, 2);
    // (XYt + Y + h)^2 expanded and averaged over independent X, Y
    r.quad = r.mean_x2 * r.mean_y2;
    r.lin = 2.0 * (r.mean_x * r.mean_y2 + h * r.mean_x * r.mean_y);
    r.cst = r.mean_y2 + 2.0 * h * r.mean_y + h * h;
    r.matched = match_drift(r.quad, r.lin, r.cst, h, r.mean_y2);

    const bool lin_ok = h != 0.0 || r.lin == 0.0;
    r.consistent = lin_ok && r.matched.lambda > 0.0 && r.matched.lambda < 1.0 &&
                   r.matched.lambda >= r.quad && r.matched.b >= 0.0;
    if (!lin_ok)
        r.note = "h = 0 leaves the linear term " + std::to_string(r.lin) + " undominated";
    else if (!r.consistent)
        r.note = "matched lambda " + std::to_string(r.matched.lambda) +
                 " does not dominate the quadratic term or is not below 1";
    return r;
}

DriftFit fit_location_drift_mc(int J, double S, double h, std::span<const double> grid,
                               std::int64_t draws, std::uint64_t seed) {
    require(grid.size() >= 3, "fit_location_drift_mc: need at least 3 grid points");
    require(draws >= 2, "fit_location_drift_mc: need at least 2 draws");
    const ModelSpec model = LocationGibbsTau{J, S, 0.0};

    DriftFit fit;
    fit.grid.assign(grid.begin(), grid.end());
    std::vector<double> var(grid.size());
    std::array<double, 2> noise{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] > 0.0, "fit_location_drift_mc: grid values must be > 0");
        NoiseStream stream(seed, i);
        double mean = 0.0;
        double m2 = 0.0;
        for (std::int64_t j = 0; j < draws; ++j) {
            State x{grid[i]};
            model.draw_noise(stream, noise);
            model.advance(x, noise);
            const double v = (x[0] + h) * (x[0] + h);
            const double delta = v - mean;
            mean += delta / double(j + 1);
            m2 += delta * (v - mean);
        }
        fit.means.push_back(mean);
        var[i] = m2 / double(draws - 1) / double(draws);
    }

    // weighted normal equations for mean_i ~ quad t^2 + lin t + cst
    double N[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double basis[3] = {t * t, t, 1.0};
        const double w = var[i] > 0.0 ? 1.0 / var[i] : 1.0;
        for (int r = 0; r < 3; ++r) {
            rhs[r] += w * basis[r] * fit.means[i];
            for (int c = 0; c < 3; ++c) N[r][c] += w * basis[r] * basis[c];
        }
    }
    Matrix normal(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) normal(r, c) = N[r][c];
    // columns span t^2 and 1 over wide grids; equilibrate before inverting
    std::vector<double> s(3);
    for (int r = 0; r < 3; ++r) s[r] = 1.0 / std::sqrt(normal(r, r));
    Matrix scaled(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) scaled(r, c) = normal(r, c) * s[r] * s[c];
    const Matrix inv = inverse(scaled);
    double coef[3] = {};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) coef[r] += s[r] * inv(r, c) * s[c] * rhs[c];
    fit.quad = coef[0];
    fit.lin = coef[1];
    fit.cst = coef[2];
    const double mean_y2 = abs_moment(InverseGamma{0.5 * (J + 2), 0.5 * S}, 2);
    fit.matched = match_drift(fit.quad, fit.lin, fit.cst, h, mean_y2);
    return fit;
}

RateBound independent_coordinates(std::span<const RateBound> coords, int d) {
    require(d >= 1, "independent_coordinates: d must be >= 1");
    require(!coords.empty(), "independent_coordinates: no coordinates given");
    RateBound out;
    for (const auto& c : coords) {
        require(c.A >= 0.0 && c.r >= 0.0, "independent_coordinates: A and r must be >= 0");
        out.A = std::max(out.A, c.A);
        out.r = std::max(out.r, c.r);
    }
    out.A *= d;
    return out;
}

BoundCertificate ar1_certificate(double a, double sigma, double gap) {
    require(std::isfinite(a), "ar1_certificate: a must be finite");
    require(std::isfinite(sigma) && sigma > 0.0, "ar1_certificate: sigma must be > 0");
    require(std::isfinite(gap) && gap >= 0.0, "ar1_certificate: gap must be >= 0");
    BoundCertificate c;
    c.family = "ar1";
    c.C = sideways_C(kInvSqrt2Pi / sigma, 1);
    c.D = std::abs(a);
    require_contraction(c.D, "ar1_certificate");
    c.gap = gap;
    c.notes.push_back("C: normal density height 1/(sigma sqrt(2 pi)), one mode");
    c.notes.push_back("D = |a|");
    return c;
}

BoundCertificate ar_normal_independent_certificate(int d, double a, double sigma, double gap) {
    const BoundCertificate one = ar1_certificate(a, sigma, gap);
    const RateBound coord{one.C * one.gap, one.D};
    const RateBound all = independent_coordinates(std::span(&coord, 1), d);
    BoundCertificate c;
    c.family = "ar-normal-independent";
    c.C = all.A;
    c.D = all.r;
    c.gap = 1.0;
    c.exponent_offset = 0;
    c.extras["coordinate_gap"] = gap;
    c.notes.push_back("bound d * K * gap * |a|^n; C already carries d and the coordinate gap");
    return c;
}

BoundCertificate ar_normal_d_certificate(const Matrix& A, const Matrix& Sigma,
                                         std::span<const double> x0,
                                         std::span<const double> x0_prime) {
    require(A.square() && A.rows() > 0, "ar_normal_d_certificate: A must be square");
    const std::size_t d = A.rows();
    require(Sigma.rows() == d && Sigma.cols() == d,
            "ar_normal_d_certificate: Sigma must match A");
    require(x0.size() == d && x0_prime.size() == d,
            "ar_normal_d_certificate: initial states must have dimension d");

    const SymEigen eig = sym_eigen(A);
    double rate = 0.0;
    for (double l : eig.values) rate = std::max(rate, std::abs(l));
    require_contraction(rate, "ar_normal_d_certificate");
    const Matrix sigma_inv = inverse(Sigma);
    const Matrix& P = eig.vectors;
    const Matrix P_inv = P.transpose();

    std::vector<double> diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x0[i] - x0_prime[i];

    BoundCertificate c;
    c.family = "ar-normal-d";
    c.C = std::sqrt(double(d) / (2.0 * std::numbers::pi)) * frobenius(sigma_inv) * frobenius(P) *
          frobenius(P_inv);
    c.D = rate;
    c.gap = vector_norm(diff);
    c.exponent_offset = 0;
    c.extras["frobenius_sigma_inv"] = frobenius(sigma_inv);
    c.notes.push_back("A symmetric: P orthogonal, P^{-1} = P^T");
    c.notes.push_back("bound C D^n gap with D the spectral radius of A");
    return c;
}

double nonlinear_ar_ratio(double x, double y) {
    const double e_half = std::exp(-0.5);
    const double e_two = std::exp(-2.0);
    if (std::abs(x - y) < 1e-7) {
        const double m = 0.5 * (x + y);
        const double k = 0.5 * (m - std::sin(m));
        return (1.0 - std::cos(m)) / 8.0 *
               std::sqrt(6.0 - 8.0 * e_half * std::cos(k) + 2.0 * e_two * std::cos(2.0 * k));
    }
    const double h = 0.25 * (y - x + std::sin(x) - std::sin(y));
    const double k = 0.25 * (x + y - std::sin(y) - std::sin(x));
    const double sh = std::sin(h);
    const double ck = std::cos(k);
    const double sk = std::sin(k);
    const double inner = 4.0 * h * h - 8.0 * e_half * h * sh * ck +
                         2.0 * sh * sh * (1.0 + e_two * (ck * ck - sk * sk));
    return std::sqrt(std::max(inner, 0.0)) / (2.0 * std::abs(x - y));
}

namespace {

struct Point {
    double x;
    double y;
    double f;
};

Point nelder_mead_max(Point start, double step) {
    auto f = [](double x, double y) { return nonlinear_ar_ratio(x, y); };
    std::array<Point, 3> s = {start, Point{start.x + step, start.y, 0.0},
                              Point{start.x, start.y + step, 0.0}};
    for (int i = 1; i < 3; ++i) s[i].f = f(s[i].x, s[i].y);
    for (int iter = 0; iter < 2000; ++iter) {
        std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) { return a.f > b.f; });
        if (std::abs(s[0].f - s[2].f) < 1e-15 &&
            std::hypot(s[0].x - s[2].x, s[0].y - s[2].y) < 1e-12)
            break;
        const double cx = 0.5 * (s[0].x + s[1].x);
        const double cy = 0.5 * (s[0].y + s[1].y);
        auto along = [&](double t) {
            Point p{cx + t * (s[2].x - cx), cy + t * (s[2].y - cy), 0.0};
            p.f = f(p.x, p.y);
            return p;
        };
        const Point r = along(-1.0);
        if (r.f > s[0].f) {
            const Point e = along(-2.0);
            s[2] = e.f > r.f ? e : r;
        } else if (r.f > s[1].f) {
            s[2] = r;
        } else {
            const Point c = r.f > s[2].f ? along(-0.5) : along(0.5);
            if (c.f > std::max(r.f, s[2].f)) {
                s[2] = c;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].f = f(s[i].x, s[i].y);
                }
            }
        }
    }
    return *std::max_element(s.begin(), s.end(),
                             [](const Point& a, const Point& b) { return a.f < b.f; });
}

}  // namespace

NonlinearD nonlinear_ar_D(int grid, double range, int workers, bool refine) {
    require(grid >= 2, "nonlinear_ar_D: grid must have at least 2 points per axis");
    require(std::isfinite(range) && range > 0.0, "nonlinear_ar_D: range must be > 0");
    const double h = 2.0 * range / (grid - 1);
    auto coord = [&](int i) { return -range + h * i; };

    std::vector<Point> row_best(grid, Point{0.0, 0.0, -1.0});
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < grid; i = next++) {
            Point best{0.0, 0.0, -1.0};
            const double x = coord(i);
            for (int j = 0; j < grid; ++j) {
                const double y = coord(j);
                const double v = nonlinear_ar_ratio(x, y);
                if (v > best.f) best = {x, y, v};
            }
            row_best[i] = best;
        }
    };
    int n = workers > 0 ? workers : int(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min(n, grid);
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    Point best = row_best[0];
    for (const auto& p : row_best)
        if (p.f > best.f) best = p;

    NonlinearD out;
    out.grid_sup = best.f;
    if (refine) {
        const Point r = nelder_mead_max(best, h);
        if (r.f > best.f) best = r;
    }
    out.D2 = best.f;
    out.D = std::sqrt(best.f);
    out.x = best.x;
    out.y = best.y;
    return out;
}

BoundCertificate nonlinear_ar_certificate(double D2, double gap) {
    require(std::isfinite(D2) && D2 >= 0.0, "nonlinear_ar_certificate: D2 must be >= 0");
    require_contraction(D2, "nonlinear_ar_certificate");
    require(std::isfinite(gap) && gap >= 0.0, "nonlinear_ar_certificate: gap must be >= 0");
    BoundCertificate c;
    c.family = "nonlinear-ar";
    c.C = sideways_C(kInvSqrt2Pi, 1);
    c.D = D2;
    c.gap = gap;
    c.exponent_offset = 0;
    c.stride = 2;
    c.extras["D_one_step"] = std::sqrt(D2);
    c.notes.push_back("two-step contraction: bound C (D^2)^{floor(n/2)} gap");
    return c;
}

BoundCertificate larch_certificate(double beta0, double beta1, const Dist& z, int M, double gap) {
    require(std::isfinite(beta0) && beta0 > 0.0 && std::isfinite(beta1) && beta1 > 0.0,
            "larch_certificate: beta0 and beta1 must be > 0");
    require(z.positive_support(), "larch_certificate: Z must be positive almost surely");
    require(M >= 1, "larch_certificate: M must be >= 1");
    require(std::isfinite(gap) && gap >= 0.0, "larch_certificate: gap must be >= 0");
    const auto* chi = std::get_if<ChiSquare>(&z.law());
    const double height =
        chi != nullptr && chi->nu == 1.0 ? log_chi2_density_sup() : log_density_sup(z);

    BoundCertificate c;
    c.family = "larch";
    c.C = beta1 * (M + 1) / (2.0 * beta0) * height;
    c.D = beta1 * abs_moment(z, 1);
    require_contraction(c.D, "larch_certificate");
    c.gap = gap;
    c.extras["log_density_sup"] = height;
    c.notes.push_back("C = beta1 (M+1) / (2 beta0) sup_x e^x f_Z(e^x)");
    c.notes.push_back("D = beta1 E[Z]");
    return c;
}

BoundCertificate asym_arch_certificate(double a, double b, double c_, const Dist& z, double gap,
                                       bool jensen) {
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c_),
            "asym_arch_certificate: a, b, c must be finite");
    require(c_ != 0.0, "asym_arch_certificate: c must be nonzero");
    require(z.centred_unimodal(),
            "asym_arch_certificate: Z needs a density symmetric and decreasing about 0");
    require(std::isfinite(gap) && gap >= 0.0, "asym_arch_certificate: gap must be >= 0");
    const double exact = std::abs(a) * abs_moment(z, 1);
    const double relaxed = std::abs(a) * std::sqrt(abs_moment(z, 2));

    BoundCertificate c;
    c.family = "asym-arch";
    c.C = std::abs(a) / std::abs(c_);
    c.D = jensen ? relaxed : exact;
    require_contraction(c.D, "asym_arch_certificate");
    c.gap = gap;
    c.extras["D_exact"] = exact;
    c.extras["D_jensen"] = relaxed;
    c.notes.push_back(jensen ? "D = |a| sqrt(E Z^2), Jensen-relaxed" : "D = |a| E|Z|, exact");
    return c;
}

namespace {

void check_garch(const GarchInputs& in) {
    require(std::isfinite(in.alpha2) && in.alpha2 > 0.0, "garch_certificate: alpha2 must be > 0");
    require(std::isfinite(in.beta2) && in.beta2 >= 0.0 && std::isfinite(in.gamma2) &&
                in.gamma2 >= 0.0,
            "garch_certificate: beta2 and gamma2 must be >= 0");
    require(std::isfinite(in.x0) && std::isfinite(in.x0p),
            "garch_certificate: initial x must be finite");
    require(std::isfinite(in.s20) && in.s20 >= 0.0 && std::isfinite(in.s20p) && in.s20p >= 0.0,
            "garch_certificate: initial sigma^2 must be >= 0");
}

double garch_rate(const GarchInputs& in) {
    const double D = std::sqrt(in.beta2 * abs_moment(in.z, 2) + in.gamma2);
    require_contraction(D, "garch_certificate");
    return D;
}

double garch_initial(const GarchInputs& in) {
    return std::sqrt(in.beta2 * std::abs(in.x0 * in.x0 - in.x0p * in.x0p) +
                     in.gamma2 * std::abs(in.s20 - in.s20p));
}

}  // namespace

BoundCertificate garch_certificate(const GarchInputs& in) {
    check_garch(in);
    const double D = garch_rate(in);
    const double ez = abs_moment(in.z, 1);
    BoundCertificate c;
    c.family = "garch";
    c.n0 = 1;
    c.D = D;
    c.C = D / (std::sqrt(in.alpha2) * ez);
    c.gap = garch_initial(in) * ez;
    c.extras["coefficient"] = garch_initial(in) / std::sqrt(in.alpha2);
    c.notes.push_back("bound(n) = coefficient * D^{n-1}; n0 = 1 so n = 1 uses the direct form");
    return c;
}

double garch_direct_bound(const GarchInputs& in, std::int64_t n) {
    check_garch(in);
    if (n < 1) throw DomainError("garch_direct_bound: n must be >= 1");
    const double D = garch_rate(in);
    const double w = garch_initial(in) / std::sqrt(in.alpha2);
    return w == 0.0 ? 0.0 : w * std::pow(D, double(n - 1));
}

}  // namespace oneshot
