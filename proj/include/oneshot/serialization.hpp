#pragma once

#include "oneshot/bounds.hpp"
#include "oneshot/models.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace oneshot {

using Json = nlohmann::json;

/// {"type": "normal", "mu", "sigma"} | {"type": "chi2", "nu"} |
/// {"type": "gamma" | "inverse-gamma", "shape", "rate"}
Dist dist_from_json(const Json& j);
Json dist_to_json(const Dist& d);

/// {"family": name, "params": {...}}. Matrices are nested arrays; A may also be
/// {"tridiagonal": {"d", "diag", "off"}}, Sigma may be "A", "sqrt(A)" or
/// "identity". Throws ParameterError on unknown families or missing fields.
ModelSpec model_from_json(const Json& j);
Json model_to_json(const ModelSpec& m);

Json certificate_to_json(const BoundCertificate& c);
BoundCertificate certificate_from_json(const Json& j);

/// Extra inputs a family's certificate needs beyond the model parameters.
struct CertifyInputs {
    std::optional<double> gap;
    std::optional<State> x0;
    std::optional<State> x0p;
    int M = 1;
    bool jensen = true;
    std::optional<double> D2;  // nonlinear-ar: skip the grid search
    int grid = 2001;
    int workers = 0;
};

CertifyInputs certify_inputs_from_json(const Json& j);

/// Builds the family's certificate. The gap defaults to |x0 - x0'| (Euclidean
/// norm for vector states) when only initial states are supplied.
BoundCertificate certify(const ModelSpec& model, const CertifyInputs& in);

}  // namespace oneshot
