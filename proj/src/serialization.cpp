#include "oneshot/serialization.hpp"

#include "oneshot/errors.hpp"

#include <cmath>
#include <numbers>

namespace oneshot {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double number(const Json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParameterError(ctx + ": missing field '" + key + "'");
    const Json& v = obj.at(key);
    if (!v.is_number()) throw ParameterError(ctx + ": field '" + key + "' must be a number");
    return v.get<double>();
}

double number_or(const Json& obj, const char* key, double fallback, const std::string& ctx) {
    return obj.contains(key) ? number(obj, key, ctx) : fallback;
}

int integer(const Json& obj, const char* key, const std::string& ctx) {
    const double v = number(obj, key, ctx);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ParameterError(ctx + ": field '" + key + "' must be an integer");
    return int(v);
}

Matrix matrix_from_json(const Json& j, const std::string& ctx) {
    if (j.is_object() && j.contains("tridiagonal")) {
        const Json& t = j.at("tridiagonal");
        const int d = integer(t, "d", ctx);
        if (d < 1) throw ParameterError(ctx + ": tridiagonal d must be >= 1");
        const double diag = number(t, "diag", ctx);
        const double off = number(t, "off", ctx);
        Matrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            m(i, i) = diag;
            if (i + 1 < d) m(i, i + 1) = m(i + 1, i) = off;
        }
        return m;
    }
    if (!j.is_array() || j.empty()) throw ParameterError(ctx + ": matrix must be a nested array");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
    if (cols == 0) throw ParameterError(ctx + ": matrix rows must be non-empty arrays");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw ParameterError(ctx + ": matrix rows have unequal length");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row.at(c).is_number()) throw ParameterError(ctx + ": matrix entry is not a number");
            m(r, c) = row.at(c).get<double>();
        }
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

Dist dist_or(const Json& params, const Dist& fallback) {
    return params.contains("z") ? dist_from_json(params.at("z")) : fallback;
}

}  // namespace

Dist dist_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ParameterError("distribution: expected an object with a string 'type'");
    const std::string type = j.at("type").get<std::string>();
    const std::string ctx = "distribution '" + type + "'";
    if (type == "normal") return Normal{number_or(j, "mu", 0.0, ctx), number_or(j, "sigma", 1.0, ctx)};
    if (type == "chi2") return ChiSquare{number(j, "nu", ctx)};
    if (type == "gamma") return Gamma{number(j, "shape", ctx), number(j, "rate", ctx)};
    if (type == "inverse-gamma") return InverseGamma{number(j, "shape", ctx), number(j, "rate", ctx)};
    throw ParameterError("distribution: unknown type '" + type + "'");
}

Json dist_to_json(const Dist& d) {
    return std::visit(
        Overloaded{
            [](const Normal& n) { return Json{{"type", "normal"}, {"mu", n.mu}, {"sigma", n.sigma}}; },
            [](const ChiSquare& c) { return Json{{"type", "chi2"}, {"nu", c.nu}}; },
            [](const Gamma& g) {
                return Json{{"type", "gamma"}, {"shape", g.shape}, {"rate", g.rate}};
            },
            [](const InverseGamma& g) {
                return Json{{"type", "inverse-gamma"}, {"shape", g.shape}, {"rate", g.rate}};
            },
        },
        d.law());
}

ModelSpec model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw ParameterError("model: expected an object with a string 'family'");
    const std::string family = j.at("family").get<std::string>();
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    if (!params.is_object()) throw ParameterError("model: 'params' must be an object");
    const std::string ctx = family;

    if (family == "nonlinear-ar") return NonlinearAR{};
    if (family == "ar1") return ARNormal1D{number(params, "a", ctx), number(params, "sigma", ctx)};
    if (family == "ar-normal-d") {
        if (!params.contains("A")) throw ParameterError(ctx + ": missing field 'A'");
        Matrix A = matrix_from_json(params.at("A"), ctx + " A");
        Matrix Sigma;
        const Json s = params.contains("Sigma") ? params.at("Sigma") : Json("identity");
        if (s.is_string()) {
            const std::string how = s.get<std::string>();
            if (how == "A")
                Sigma = A;
            else if (how == "sqrt(A)")
                Sigma = sym_sqrt(A);
            else if (how == "identity")
                Sigma = Matrix::identity(A.rows());
            else
                throw ParameterError(ctx + ": Sigma must be a matrix, \"A\", \"sqrt(A)\" or \"identity\"");
        } else {
            Sigma = matrix_from_json(s, ctx + " Sigma");
        }
        return ARNormalD{std::move(A), std::move(Sigma)};
    }
    if (family == "ar-normal-independent")
        return ARNormalIndependent{integer(params, "d", ctx), number(params, "a", ctx),
                                   number(params, "sigma", ctx)};
    if (family == "location-gibbs")
        return LocationGibbsTau{integer(params, "J", ctx), number(params, "S", ctx),
                                number_or(params, "ybar", 0.0, ctx)};
    if (family == "regression-gibbs")
        return RegressionGibbsSigma{integer(params, "k", ctx), integer(params, "p", ctx),
                                    number(params, "C", ctx)};
    if (family == "larch")
        return LARCH{number(params, "beta0", ctx), number(params, "beta1", ctx),
                     dist_or(params, ChiSquare{1.0})};
    if (family == "asym-arch")
        return AsymARCH{number(params, "a", ctx), number(params, "b", ctx), number(params, "c", ctx),
                        dist_or(params, Normal{})};
    if (family == "garch")
        return GARCH{number(params, "alpha2", ctx), number(params, "beta2", ctx),
                     number(params, "gamma2", ctx), dist_or(params, Normal{})};
    throw ParameterError("model: unknown family '" + family + "'");
}

Json model_to_json(const ModelSpec& m) {
    Json params = std::visit(
        Overloaded{
            [](const NonlinearAR&) { return Json::object(); },
            [](const ARNormal1D& f) { return Json{{"a", f.a}, {"sigma", f.sigma}}; },
            [](const ARNormalD& f) {
                return Json{{"A", matrix_to_json(f.A)}, {"Sigma", matrix_to_json(f.Sigma)}};
            },
            [](const ARNormalIndependent& f) {
                return Json{{"d", f.d}, {"a", f.a}, {"sigma", f.sigma}};
            },
            [](const LocationGibbsTau& f) { return Json{{"J", f.J}, {"S", f.S}, {"ybar", f.ybar}}; },
            [](const RegressionGibbsSigma& f) { return Json{{"k", f.k}, {"p", f.p}, {"C", f.C}}; },
            [](const LARCH& f) {
                return Json{{"beta0", f.beta0}, {"beta1", f.beta1}, {"z", dist_to_json(f.z)}};
            },
            [](const AsymARCH& f) {
                return Json{{"a", f.a}, {"b", f.b}, {"c", f.c}, {"z", dist_to_json(f.z)}};
            },
            [](const GARCH& f) {
                return Json{{"alpha2", f.alpha2},
                            {"beta2", f.beta2},
                            {"gamma2", f.gamma2},
                            {"z", dist_to_json(f.z)}};
            },
        },
        m.family());
    return Json{{"family", m.name()}, {"params", params}};
}

Json certificate_to_json(const BoundCertificate& c) {
    return Json{{"C", c.C},           {"D", c.D},
                {"n0", c.n0},         {"gap", c.gap},
                {"family", c.family}, {"notes", c.notes},
                {"exponent_offset", c.exponent_offset},
                {"stride", c.stride}, {"extras", c.extras}};
}

BoundCertificate certificate_from_json(const Json& j) {
    const std::string ctx = "certificate";
    BoundCertificate c;
    c.C = number(j, "C", ctx);
    c.D = number(j, "D", ctx);
    c.n0 = j.contains("n0") ? integer(j, "n0", ctx) : 0;
    c.gap = number(j, "gap", ctx);
    if (j.contains("family") && j.at("family").is_string()) c.family = j.at("family").get<std::string>();
    if (j.contains("notes") && j.at("notes").is_array())
        for (const auto& n : j.at("notes"))
            if (n.is_string()) c.notes.push_back(n.get<std::string>());
    c.exponent_offset = j.contains("exponent_offset") ? integer(j, "exponent_offset", ctx) : 1;
    c.stride = j.contains("stride") ? integer(j, "stride", ctx) : 1;
    if (j.contains("extras") && j.at("extras").is_object())
        for (const auto& [k, v] : j.at("extras").items())
            if (v.is_number()) c.extras[k] = v.get<double>();
    validate(c);
    return c;
}

CertifyInputs certify_inputs_from_json(const Json& j) {
    CertifyInputs in;
    if (j.is_null()) return in;
    if (!j.is_object()) throw ParameterError("certificate inputs: expected an object");
    const std::string ctx = "certificate inputs";
    auto state = [&](const char* key) -> std::optional<State> {
        if (!j.contains(key)) return std::nullopt;
        const Json& v = j.at(key);
        if (v.is_number()) return State{v.get<double>()};
        if (!v.is_array()) throw ParameterError(ctx + ": '" + key + "' must be a number or array");
        State s;
        for (const auto& e : v) {
            if (!e.is_number()) throw ParameterError(ctx + ": '" + key + "' holds a non-number");
            s.push_back(e.get<double>());
        }
        return s;
    };
    if (j.contains("gap")) in.gap = number(j, "gap", ctx);
    in.x0 = state("x0");
    in.x0p = state("x0p");
    if (j.contains("M")) in.M = integer(j, "M", ctx);
    if (j.contains("jensen")) {
        if (!j.at("jensen").is_boolean()) throw ParameterError(ctx + ": 'jensen' must be a boolean");
        in.jensen = j.at("jensen").get<bool>();
    }
    if (j.contains("D2")) in.D2 = number(j, "D2", ctx);
    if (j.contains("grid")) in.grid = integer(j, "grid", ctx);
    if (j.contains("workers")) in.workers = integer(j, "workers", ctx);
    return in;
}

namespace {

double gap_of(const CertifyInputs& in, const std::string& family) {
    if (in.gap) return *in.gap;
    if (!in.x0 || !in.x0p)
        throw ParameterError(family + ": supply a gap or both initial states x0 and x0p");
    if (in.x0->size() != in.x0p->size())
        throw ParameterError(family + ": initial states differ in dimension");
    std::vector<double> diff(in.x0->size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (*in.x0)[i] - (*in.x0p)[i];
    return vector_norm(diff);
}

}  // namespace

BoundCertificate certify(const ModelSpec& model, const CertifyInputs& in) {
    const std::string name = model.name();
    return std::visit(
        Overloaded{
            [&](const NonlinearAR&) {
                const double d2 = in.D2 ? *in.D2 : nonlinear_ar_D(in.grid, 4.0 * std::numbers::pi, in.workers).D2;
                return nonlinear_ar_certificate(d2, gap_of(in, name));
            },
            [&](const ARNormal1D& f) { return ar1_certificate(f.a, f.sigma, gap_of(in, name)); },
            [&](const ARNormalD& f) {
                if (!in.x0 || !in.x0p) throw ParameterError(name + ": x0 and x0p are required");
                return ar_normal_d_certificate(f.A, f.Sigma, *in.x0, *in.x0p);
            },
            [&](const ARNormalIndependent& f) {
                double gap = 0.0;
                if (in.gap) {
                    gap = *in.gap;
                } else {
                    if (!in.x0 || !in.x0p || in.x0->size() != in.x0p->size())
                        throw ParameterError(name + ": supply a gap or x0 and x0p of equal size");
                    for (std::size_t i = 0; i < in.x0->size(); ++i)
                        gap = std::max(gap, std::abs((*in.x0)[i] - (*in.x0p)[i]));
                }
                return ar_normal_independent_certificate(f.d, f.a, f.sigma, gap);
            },
            [&](const LocationGibbsTau& f) {
                return location_gibbs_certificate(f.J, f.S, gap_of(in, name));
            },
            [&](const RegressionGibbsSigma& f) {
                return regression_gibbs_certificate(f.k, f.p, f.C, gap_of(in, name));
            },
            [&](const LARCH& f) {
                return larch_certificate(f.beta0, f.beta1, f.z, in.M, gap_of(in, name));
            },
            [&](const AsymARCH& f) {
                return asym_arch_certificate(f.a, f.b, f.c, f.z, gap_of(in, name), in.jensen);
            },
            [&](const GARCH& f) {
                if (!in.x0 || !in.x0p || in.x0->size() != 2 || in.x0p->size() != 2)
                    throw ParameterError(name + ": x0 and x0p must be [x, sigma^2] pairs");
                GarchInputs g{f.alpha2, f.beta2, f.gamma2, f.z,
                              (*in.x0)[0], (*in.x0p)[0], (*in.x0)[1], (*in.x0p)[1]};
                return garch_certificate(g);
            },
        },
        model.family());
}

}  // namespace oneshot
