#include "oneshot/errors.hpp"
#include "oneshot/serialization.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace oneshot;

TEST_CASE("distributions round-trip") {
    for (const Dist& d : {Dist(Normal{0.3, 2.0}), Dist(ChiSquare{1.0}), Dist(Gamma{2.5, 0.5}),
                          Dist(InverseGamma{16.5, 147.7})}) {
        CHECK(dist_from_json(dist_to_json(d)) == d);
        CHECK(dist_from_json(Json::parse(dist_to_json(d).dump())) == d);
    }
    CHECK(dist_from_json(Json{{"type", "normal"}}) == Dist(Normal{}));
    CHECK_THROWS_AS(dist_from_json(Json{{"type", "cauchy"}}), ParameterError);
    CHECK_THROWS_AS(dist_from_json(Json{{"type", "gamma"}, {"shape", 1.0}}), ParameterError);
    CHECK_THROWS_AS(dist_from_json(Json{{"type", "chi2"}, {"nu", -1.0}}), ParameterError);
    CHECK_THROWS_AS(dist_from_json(Json::array()), ParameterError);
}

TEST_CASE("models round-trip") {
    const std::vector<ModelSpec> models{
        NonlinearAR{},
        ARNormal1D{0.5, 0.8},
        ARNormalD{Matrix{{0.5, 0.1}, {0.1, 0.4}}, Matrix{{1.0, 0.0}, {0.0, 2.0}}},
        ARNormalIndependent{100, 0.5, std::sqrt(0.75)},
        LocationGibbsTau{31, 295.4, 13.2},
        RegressionGibbsSigma{333, 4, 26123.2},
        LARCH{1.0, 0.5, ChiSquare{1.0}},
        AsymARCH{0.5, 3.0, 5.0, Normal{}},
        GARCH{0.13, 0.1266, 0.7922, Normal{}},
    };
    for (const ModelSpec& m : models) {
        CAPTURE(m.name());
        const Json j = model_to_json(m);
        CHECK(j.at("family") == m.name());
        CHECK(model_from_json(Json::parse(j.dump())) == m);
    }
}

TEST_CASE("matrix shorthands") {
    const Json tri = Json::parse(R"({"family": "ar-normal-d",
        "params": {"A": {"tridiagonal": {"d": 5, "diag": 0.5, "off": 0.125}}, "Sigma": "A"}})");
    const ModelSpec m = model_from_json(tri);
    const auto& f = std::get<ARNormalD>(m.family());
    CHECK(f.A(0, 0) == 0.5);
    CHECK(f.A(3, 4) == 0.125);
    CHECK(f.A(0, 2) == 0.0);
    CHECK(f.Sigma == f.A);

    Json root = tri;
    root["params"]["Sigma"] = "sqrt(A)";
    const auto& g = std::get<ARNormalD>(model_from_json(root).family());
    CHECK(frobenius(g.Sigma * g.Sigma - g.A) < 1e-12);

    root["params"].erase("Sigma");
    CHECK(std::get<ARNormalD>(model_from_json(root).family()).Sigma == Matrix::identity(5));

    root["params"]["Sigma"] = "cholesky";
    CHECK_THROWS_AS(model_from_json(root), ParameterError);
    root["params"]["Sigma"] = Json::parse("[[1, 2], [3]]");
    CHECK_THROWS_AS(model_from_json(root), ParameterError);
}

TEST_CASE("model errors") {
    CHECK_THROWS_AS(model_from_json(Json{{"family", "arma"}}), ParameterError);
    CHECK_THROWS_AS(model_from_json(Json::parse(R"({"family": "ar1", "params": {"a": 0.5}})")),
                    ParameterError);
    CHECK_THROWS_AS(
        model_from_json(Json::parse(R"({"family": "ar1", "params": {"a": "x", "sigma": 1}})")),
        ParameterError);
    CHECK_THROWS_AS(
        model_from_json(Json::parse(R"({"family": "ar1", "params": {"a": 0.5, "sigma": -1}})")),
        ParameterError);
    CHECK_THROWS_AS(model_from_json(Json::parse(
                        R"({"family": "location-gibbs", "params": {"J": 31.5, "S": 1}})")),
                    ParameterError);
}

TEST_CASE("certificates round-trip") {
    BoundCertificate c = location_gibbs_certificate(31, 295.437419354838709677, 18.12198);
    c.notes.push_back("a note");
    const BoundCertificate back = certificate_from_json(Json::parse(certificate_to_json(c).dump()));
    CHECK(back.C == c.C);
    CHECK(back.D == c.D);
    CHECK(back.n0 == c.n0);
    CHECK(back.gap == c.gap);
    CHECK(back.family == c.family);
    CHECK(back.notes == c.notes);
    CHECK(back.extras == c.extras);
    CHECK(back.exponent_offset == c.exponent_offset);
    CHECK(back.stride == c.stride);

    const BoundCertificate minimal =
        certificate_from_json(Json{{"C", 1.0}, {"D", 0.5}, {"gap", 2.0}});
    CHECK(minimal.n0 == 0);
    CHECK(minimal.exponent_offset == 1);
    CHECK(bound_eval(minimal, 2).raw == 1.0);
    CHECK_THROWS_AS(certificate_from_json(Json{{"C", 1.0}, {"D", 1.5}, {"gap", 2.0}}),
                    NoContractionError);
    CHECK_THROWS_AS(certificate_from_json(Json{{"C", 1.0}, {"gap", 2.0}}), ParameterError);
}

TEST_CASE("certify dispatches by family") {
    CertifyInputs in;
    in.x0 = State{1.0};
    in.x0p = State{0.0};
    const BoundCertificate ar = certify(ARNormal1D{0.5, std::sqrt(0.75)}, in);
    CHECK(ar.gap == 1.0);
    CHECK(iterations_to_epsilon(ar, 0.01) == 7);

    CertifyInputs gi = certify_inputs_from_json(
        Json::parse(R"({"x0": [0.1, 0.0001], "x0p": [-0.1, 0.01]})"));
    const BoundCertificate g = certify(GARCH{0.13, 0.1266, 0.7922, Normal{}}, gi);
    CHECK(iterations_to_epsilon(g, 0.01) == 77);

    CertifyInputs ind;
    ind.x0 = State{1.0, -2.0, 0.5};
    ind.x0p = State{0.0, 0.0, 0.0};
    CHECK(certify(ARNormalIndependent{3, 0.5, 1.0}, ind).gap == 1.0);
    CHECK(certify(ARNormalIndependent{3, 0.5, 1.0}, ind).C ==
          doctest::Approx(3 * 2.0 / std::sqrt(2 * std::numbers::pi)));

    CertifyInputs nl;
    nl.D2 = 0.661;
    nl.gap = 1.0;
    CHECK(certify(NonlinearAR{}, nl).D == 0.661);

    CHECK_THROWS_AS(certify(ARNormal1D{0.5, 1.0}, CertifyInputs{}), ParameterError);
    CHECK_THROWS_AS(certify(GARCH{0.13, 0.1266, 0.7922, Normal{}}, in), ParameterError);
    CHECK_THROWS_AS(certify_inputs_from_json(Json{{"jensen", 1}}), ParameterError);
    CHECK_THROWS_AS(certify_inputs_from_json(Json{{"x0", "one"}}), ParameterError);
}
