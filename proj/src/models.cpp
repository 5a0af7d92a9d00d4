#include "oneshot/models.hpp"

#include "oneshot/errors.hpp"

#include <cmath>

namespace oneshot {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string ModelSpec::name() const {
    return std::visit(Overloaded{
                          [](const NonlinearAR&) { return std::string("nonlinear-ar"); },
                          [](const ARNormal1D&) { return std::string("ar1"); },
                          [](const ARNormalD&) { return std::string("ar-normal-d"); },
                          [](const ARNormalIndependent&) {
                              return std::string("ar-normal-independent");
                          },
                          [](const LocationGibbsTau&) { return std::string("location-gibbs"); },
                          [](const RegressionGibbsSigma&) {
                              return std::string("regression-gibbs");
                          },
                          [](const LARCH&) { return std::string("larch"); },
                          [](const AsymARCH&) { return std::string("asym-arch"); },
                          [](const GARCH&) { return std::string("garch"); },
                      },
                      family_);
}

void ModelSpec::validate() const {
    std::visit(
        Overloaded{
            [](const NonlinearAR&) {},
            [](const ARNormal1D& m) {
                require(std::isfinite(m.a), "ar1: a must be finite");
                require(finite_positive(m.sigma), "ar1: sigma must be > 0");
            },
            [](const ARNormalD& m) {
                require(m.A.square() && m.A.rows() > 0, "ar-normal-d: A must be square");
                require(m.Sigma.rows() == m.A.rows() && m.Sigma.cols() == m.A.cols(),
                        "ar-normal-d: Sigma must match the dimension of A");
                for (double v : m.A.data()) require(std::isfinite(v), "ar-normal-d: A not finite");
                for (double v : m.Sigma.data())
                    require(std::isfinite(v), "ar-normal-d: Sigma not finite");
            },
            [](const ARNormalIndependent& m) {
                require(m.d >= 1, "ar-normal-independent: d must be >= 1");
                require(std::isfinite(m.a), "ar-normal-independent: a must be finite");
                require(finite_positive(m.sigma), "ar-normal-independent: sigma must be > 0");
            },
            [](const LocationGibbsTau& m) {
                require(m.J >= 1, "location-gibbs: J must be >= 1");
                require(finite_positive(m.S), "location-gibbs: S must be > 0");
                require(std::isfinite(m.ybar), "location-gibbs: ybar must be finite");
            },
            [](const RegressionGibbsSigma& m) {
                require(m.k >= 1 && m.p >= 1, "regression-gibbs: k and p must be >= 1");
                require(finite_positive(m.C), "regression-gibbs: C must be > 0");
            },
            [](const LARCH& m) {
                require(finite_positive(m.beta0) && finite_positive(m.beta1),
                        "larch: beta0 and beta1 must be > 0");
                require(m.z.positive_support(), "larch: Z must be positive almost surely");
            },
            [](const AsymARCH& m) {
                require(std::isfinite(m.a) && std::isfinite(m.b) && std::isfinite(m.c),
                        "asym-arch: a, b, c must be finite");
            },
            [](const GARCH& m) {
                require(finite_positive(m.alpha2) && finite_positive(m.beta2) &&
                            finite_positive(m.gamma2),
                        "garch: alpha2, beta2, gamma2 must be > 0");
            },
        },
        family_);
}

std::size_t ModelSpec::state_dim() const {
    return std::visit(Overloaded{
                          [](const ARNormalD& m) { return m.A.rows(); },
                          [](const ARNormalIndependent& m) { return std::size_t(m.d); },
                          [](const GARCH&) { return std::size_t{2}; },
                          [](const auto&) { return std::size_t{1}; },
                      },
                      family_);
}

std::size_t ModelSpec::noise_dim() const {
    return std::visit(Overloaded{
                          [](const ARNormalD& m) { return m.A.rows(); },
                          [](const ARNormalIndependent& m) { return std::size_t(m.d); },
                          [](const LocationGibbsTau&) { return std::size_t{2}; },
                          [](const RegressionGibbsSigma& m) { return std::size_t(m.p) + 1; },
                          [](const auto&) { return std::size_t{1}; },
                      },
                      family_);
}

void ModelSpec::draw_noise(NoiseStream& stream, std::span<double> out) const {
    std::visit(Overloaded{
                   [&](const LocationGibbsTau& m) {
                       out[0] = stream.standard_normal();
                       out[1] = stream.standard_gamma(0.5 * (m.J + 2));
                   },
                   [&](const RegressionGibbsSigma& m) {
                       for (int i = 0; i < m.p; ++i) out[i] = stream.standard_normal();
                       out[m.p] = stream.standard_gamma(0.5 * (m.k + m.p));
                   },
                   [&](const LARCH& m) { out[0] = sample(m.z, stream); },
                   [&](const AsymARCH& m) { out[0] = sample(m.z, stream); },
                   [&](const GARCH& m) { out[0] = sample(m.z, stream); },
                   [&](const auto&) {
                       for (double& v : out) v = stream.standard_normal();
                   },
               },
               family_);
}

void ModelSpec::advance(State& x, std::span<const double> noise) const {
    std::visit(Overloaded{
                   [&](const NonlinearAR&) { x[0] = 0.5 * (x[0] - std::sin(x[0])) + noise[0]; },
                   [&](const ARNormal1D& m) { x[0] = m.a * x[0] + m.sigma * noise[0]; },
                   [&](const ARNormalD& m) {
                       const std::size_t d = x.size();
                       State next(d, 0.0);
                       for (std::size_t i = 0; i < d; ++i) {
                           double s = 0.0;
                           for (std::size_t j = 0; j < d; ++j)
                               s += m.A(i, j) * x[j] + m.Sigma(i, j) * noise[j];
                           next[i] = s;
                       }
                       x.swap(next);
                   },
                   [&](const ARNormalIndependent& m) {
                       for (std::size_t i = 0; i < x.size(); ++i)
                           x[i] = m.a * x[i] + m.sigma * noise[i];
                   },
                   [&](const LocationGibbsTau& m) {
                       x[0] = (m.S + noise[0] * noise[0] * x[0]) / (2.0 * noise[1]);
                   },
                   [&](const RegressionGibbsSigma& m) {
                       double q = 0.0;
                       for (int i = 0; i < m.p; ++i) q += noise[i] * noise[i];
                       x[0] = (m.C + q * x[0]) / (2.0 * noise[m.p]);
                   },
                   [&](const LARCH& m) { x[0] = (m.beta0 + m.beta1 * x[0]) * noise[0]; },
                   [&](const AsymARCH& m) {
                       const double u = m.a * x[0] + m.b;
                       x[0] = std::sqrt(u * u + m.c * m.c) * noise[0];
                   },
                   [&](const GARCH& m) {
                       const double s2 = m.alpha2 + m.beta2 * x[0] * x[0] + m.gamma2 * x[1];
                       x[1] = s2;
                       x[0] = std::sqrt(s2) * noise[0];
                   },
               },
               family_);
}

void ModelSpec::check_state(const State& x) const {
    if (x.size() != state_dim())
        throw StateError(name() + ": state has dimension " + std::to_string(x.size()) +
                         ", expected " + std::to_string(state_dim()));
    for (double v : x)
        if (!std::isfinite(v)) throw StateError(name() + ": state is not finite");
    std::visit(Overloaded{
                   [&](const LocationGibbsTau&) {
                       if (!(x[0] > 0.0)) throw StateError("location-gibbs: tau^-1 must be > 0");
                   },
                   [&](const RegressionGibbsSigma&) {
                       if (!(x[0] > 0.0)) throw StateError("regression-gibbs: sigma^2 must be > 0");
                   },
                   [&](const LARCH&) {
                       if (x[0] < 0.0) throw StateError("larch: state must be >= 0");
                   },
                   [&](const GARCH&) {
                       if (x[1] < 0.0) throw StateError("garch: sigma^2 must be >= 0");
                   },
                   [](const auto&) {},
               },
               family_);
}

State step(const ModelSpec& model, const State& x, std::span<const double> noise) {
    model.check_state(x);
    if (noise.size() != model.noise_dim())
        throw ParameterError(model.name() + ": expected " + std::to_string(model.noise_dim()) +
                             " innovation draws, got " + std::to_string(noise.size()));
    State out = x;
    model.advance(out, noise);
    return out;
}

CoupledState couple_step(const ModelSpec& model, const CoupledState& cs, CouplingMode mode,
                         NoiseStream& stream, NoiseStream& stream_prime) {
    model.check_state(cs.x);
    model.check_state(cs.x_prime);
    std::vector<double> noise(model.noise_dim());
    CoupledState out = cs;
    model.draw_noise(stream, noise);
    model.advance(out.x, noise);
    if (mode == CouplingMode::Independent) model.draw_noise(stream_prime, noise);
    model.advance(out.x_prime, noise);
    ++out.iteration;
    return out;
}

DeinitDraw full_gibbs_step(const ModelSpec& model, double reduced_prev,
                           std::span<const double> noise) {
    if (!(reduced_prev > 0.0) || !std::isfinite(reduced_prev))
        throw StateError(model.name() + ": reduced state must be > 0");
    if (const auto* m = std::get_if<LocationGibbsTau>(&model.family())) {
        // mu_n | tau_{n-1} ~ N(ybar, 1 / (J tau_{n-1}))
        const double mu = m->ybar + noise[0] * std::sqrt(reduced_prev / m->J);
        // tau_n | mu_n ~ Gamma((J+2)/2, rate (S + J (mu_n - ybar)^2) / 2)
        const double dev = mu - m->ybar;
        const double rate = 0.5 * (m->S + m->J * dev * dev);
        const double tau_inv = rate / noise[1];
        return {tau_inv, {mu, tau_inv}};
    }
    if (const auto* m = std::get_if<RegressionGibbsSigma>(&model.family())) {
        // whitened beta_n - beta_tilde ~ N(0, sigma^2_{n-1} I)
        State full(static_cast<std::size_t>(m->p) + 1);
        const double sd = std::sqrt(reduced_prev);
        double quad = 0.0;
        for (int i = 0; i < m->p; ++i) {
            full[i] = sd * noise[i];
            quad += full[i] * full[i];
        }
        // sigma^2_n | beta_n ~ InverseGamma((k+p)/2, (C + quad) / 2)
        const double s2 = 0.5 * (m->C + quad) / noise[m->p];
        full[m->p] = s2;
        return {s2, std::move(full)};
    }
    throw ParameterError(model.name() + ": de-initialization needs a Gibbs family");
}

DeinitDraw deinit_pair_step(const ModelSpec& model, double reduced_prev, NoiseStream& stream) {
    std::vector<double> noise(model.noise_dim());
    model.draw_noise(stream, noise);
    return full_gibbs_step(model, reduced_prev, noise);
}

}  // namespace oneshot
