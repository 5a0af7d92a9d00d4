#include "oneshot/oneshot.h"

#include "oneshot/data.hpp"
#include "oneshot/errors.hpp"
#include "oneshot/repro.hpp"
#include "oneshot/serialization.hpp"
#include "oneshot/tvlab.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

struct osc_model {
    oneshot::ModelSpec spec;
};

struct osc_certificate {
    oneshot::BoundCertificate cert;
};

struct osc_curve {
    oneshot::TVCurve curve;
};

namespace {

thread_local std::string g_last_error;

osc_status status_of(oneshot::ErrorKind k) {
    switch (k) {
        case oneshot::ErrorKind::Parameter: return OSC_ERR_PARAMETER;
        case oneshot::ErrorKind::Domain: return OSC_ERR_DOMAIN;
        case oneshot::ErrorKind::NoContraction: return OSC_ERR_NO_CONTRACTION;
        case oneshot::ErrorKind::State: return OSC_ERR_STATE;
        case oneshot::ErrorKind::Ingestion: return OSC_ERR_INGESTION;
        case oneshot::ErrorKind::Precision: return OSC_ERR_PRECISION;
        case oneshot::ErrorKind::Unsupported: return OSC_ERR_UNSUPPORTED;
    }
    return OSC_ERR_INTERNAL;
}

osc_status fail(osc_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
osc_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return OSC_OK;
    } catch (const oneshot::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(OSC_ERR_INVALID_ARGUMENT, std::string("malformed JSON: ") + e.what());
    } catch (const std::bad_alloc&) {
        return fail(OSC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OSC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OSC_ERR_INTERNAL, "unknown failure");
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p == nullptr) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

#define OSC_REQUIRE(ptr)                                                          \
    do {                                                                          \
        if ((ptr) == nullptr) return fail(OSC_ERR_INVALID_ARGUMENT, #ptr " is null"); \
    } while (0)

oneshot::Json parse(const char* text) {
    if (text == nullptr) return oneshot::Json();
    return oneshot::Json::parse(text);
}

oneshot::Json dataset_stats(const oneshot::Json& req) {
    using namespace oneshot;
    if (!req.is_object()) throw ParameterError("dataset request: expected an object");
    Dataset data;
    if (req.contains("builtin")) {
        data = builtin_dataset(req.at("builtin").get<std::string>());
    } else {
        if (!req.contains("path")) throw ParameterError("dataset request: give 'builtin' or 'path'");
        const std::string path = req.at("path").get<std::string>();
        const std::string y = req.value("y", std::string());
        if (y.empty()) throw ParameterError("dataset request: 'y' column is required");
        std::vector<std::string> xs;
        if (req.contains("x")) xs = req.at("x").get<std::vector<std::string>>();
        std::optional<double> lambda;
        if (req.contains("lambda")) lambda = req.at("lambda").get<double>();
        if (!xs.empty() && !lambda)
            throw ParameterError("dataset request: regression data needs 'lambda'");
        data = load_csv(path, y, xs, lambda);
    }

    if (const auto* loc = std::get_if<LocationData>(&data)) {
        const LocationStats s = location_stats(*loc);
        Json out{{"kind", "location"}, {"J", s.J}, {"ybar", s.y_bar}, {"S", s.S}};
        out["D"] = 1.0 / s.J;
        out["K_printed"] = location_printed_K(s.J, s.S);
        out["K_mode_height"] = inverse_gamma_mode_height(0.5 * (s.J - 1), 0.5 * s.S);
        out["K_jacobian"] = inverse_gamma_mode_height(0.5 * (s.J + 3), 0.5 * s.S);
        return out;
    }
    const auto& reg = std::get<RegressionData>(data);
    const RegressionStats s = regression_stats(reg);
    Json out{{"kind", "regression"}, {"k", s.k},           {"p", s.p},
             {"lambda", reg.prior_lambda}, {"condition", s.condition}, {"C_stat", s.C_stat},
             {"beta_tilde", s.beta_tilde}};
    if (s.C_stat > 0.0) out["K"] = inverse_gamma_mode_height(0.5 * (s.k + 2 * s.p), 0.5 * s.C_stat);
    if (s.k + s.p > 2) out["D"] = double(s.p) / double(s.k + s.p - 2);
    return out;
}

}  // namespace

extern "C" {

const char* osc_last_error(void) { return g_last_error.c_str(); }

const char* osc_status_name(osc_status status) {
    switch (status) {
        case OSC_OK: return "ok";
        case OSC_ERR_PARAMETER: return "parameter";
        case OSC_ERR_DOMAIN: return "domain";
        case OSC_ERR_NO_CONTRACTION: return "no-contraction";
        case OSC_ERR_STATE: return "state";
        case OSC_ERR_INGESTION: return "ingestion";
        case OSC_ERR_PRECISION: return "precision";
        case OSC_ERR_UNSUPPORTED: return "unsupported";
        case OSC_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case OSC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* osc_version(void) { return "1.0.0"; }

void osc_string_free(char* s) { std::free(s); }

osc_status osc_model_from_json(const char* json, osc_model** out) {
    OSC_REQUIRE(json);
    OSC_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new osc_model{oneshot::model_from_json(parse(json))}; });
}

osc_status osc_model_to_json(const osc_model* model, char** out) {
    OSC_REQUIRE(model);
    OSC_REQUIRE(out);
    return guarded([&] { *out = dup_string(oneshot::model_to_json(model->spec).dump()); });
}

osc_status osc_model_state_dim(const osc_model* model, size_t* out) {
    OSC_REQUIRE(model);
    OSC_REQUIRE(out);
    return guarded([&] { *out = model->spec.state_dim(); });
}

void osc_model_free(osc_model* model) { delete model; }

osc_status osc_certificate_build(const osc_model* model, const char* inputs_json,
                                 osc_certificate** out) {
    OSC_REQUIRE(model);
    OSC_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const auto in = oneshot::certify_inputs_from_json(parse(inputs_json));
        *out = new osc_certificate{oneshot::certify(model->spec, in)};
    });
}

osc_status osc_certificate_from_json(const char* json, osc_certificate** out) {
    OSC_REQUIRE(json);
    OSC_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new osc_certificate{oneshot::certificate_from_json(parse(json))}; });
}

osc_status osc_certificate_to_json(const osc_certificate* cert, char** out) {
    OSC_REQUIRE(cert);
    OSC_REQUIRE(out);
    return guarded([&] { *out = dup_string(oneshot::certificate_to_json(cert->cert).dump()); });
}

osc_status osc_certificate_bound(const osc_certificate* cert, int64_t n, double* raw,
                                 double* clamped) {
    OSC_REQUIRE(cert);
    return guarded([&] {
        const auto v = oneshot::bound_eval(cert->cert, n);
        if (raw != nullptr) *raw = v.raw;
        if (clamped != nullptr) *clamped = v.clamped;
    });
}

osc_status osc_certificate_iterations(const osc_certificate* cert, double epsilon, int64_t* out) {
    OSC_REQUIRE(cert);
    OSC_REQUIRE(out);
    return guarded([&] { *out = oneshot::iterations_to_epsilon(cert->cert, epsilon); });
}

void osc_certificate_free(osc_certificate* cert) { delete cert; }

osc_curve_options osc_curve_options_default(void) {
    const oneshot::CurveOptions d;
    return {d.n_max, d.n_paths, d.bin_width, d.seed, d.workers, d.shared_noise ? 1 : 0};
}

osc_status osc_curve_simulate(const osc_model* model, const double* x0, size_t x0_len,
                              const double* x0p, size_t x0p_len, const osc_certificate* cert,
                              const osc_curve_options* options, osc_curve** out) {
    OSC_REQUIRE(model);
    OSC_REQUIRE(x0);
    OSC_REQUIRE(x0p);
    OSC_REQUIRE(options);
    OSC_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        oneshot::CurveOptions o;
        o.n_max = options->n_max;
        o.n_paths = options->n_paths;
        o.bin_width = options->bin_width;
        o.seed = options->seed;
        o.workers = options->workers;
        o.shared_noise = options->shared_noise != 0;
        const oneshot::State a(x0, x0 + x0_len);
        const oneshot::State b(x0p, x0p + x0p_len);
        auto curve = oneshot::simulate_tv_curve(model->spec, a, b, o,
                                                cert != nullptr ? &cert->cert : nullptr);
        *out = new osc_curve{std::move(curve)};
    });
}

osc_status osc_curve_to_csv(const osc_curve* curve, char** out) {
    OSC_REQUIRE(curve);
    OSC_REQUIRE(out);
    return guarded([&] { *out = dup_string(oneshot::to_csv(curve->curve)); });
}

size_t osc_curve_rows(const osc_curve* curve) {
    return curve == nullptr ? 0 : curve->curve.rows.size();
}

osc_status osc_curve_row(const osc_curve* curve, size_t index, int64_t* n, double values[5]) {
    OSC_REQUIRE(curve);
    OSC_REQUIRE(values);
    if (index >= curve->curve.rows.size())
        return fail(OSC_ERR_DOMAIN, "curve row index out of range");
    const auto& r = curve->curve.rows[index];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (n != nullptr) *n = r.n;
    values[0] = r.bound.value_or(nan);
    values[1] = r.bound_clamped.value_or(nan);
    values[2] = r.tv_sim.value_or(nan);
    values[3] = r.tv_exact.value_or(nan);
    values[4] = r.mc_se.value_or(nan);
    g_last_error.clear();
    return OSC_OK;
}

void osc_curve_free(osc_curve* curve) { delete curve; }

osc_status osc_dataset_stats(const char* request_json, char** out_json) {
    OSC_REQUIRE(request_json);
    OSC_REQUIRE(out_json);
    return guarded([&] { *out_json = dup_string(dataset_stats(parse(request_json)).dump()); });
}

osc_status osc_repro_run(const char* options_json, char** out_csv) {
    OSC_REQUIRE(out_csv);
    return guarded([&] {
        oneshot::ReproOptions o;
        const oneshot::Json j = parse(options_json);
        if (j.is_object()) {
            o.seed = j.value("seed", o.seed);
            o.drift_draws = j.value("drift_draws", o.drift_draws);
            o.workers = j.value("workers", o.workers);
        }
        *out_csv = dup_string(oneshot::repro_csv(oneshot::run_repro(o)));
    });
}

}  // extern "C"
