#include "oneshot/data.hpp"
#include "oneshot/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <random>

using namespace oneshot;

namespace {

double two_pass_S(const std::vector<double>& y) {
    double m = 0.0;
    for (double v : y) m += v;
    m /= double(y.size());
    double s = 0.0;
    for (double v : y) s += (v - m) * (v - m);
    return s;
}

double naive_S(const std::vector<double>& y) {
    long double sum = 0.0L;
    long double sq = 0.0L;
    for (double v : y) {
        sum += v;
        sq += (long double)v * v;
    }
    return double(sq - sum * sum / (long double)y.size());
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const IngestionError& e) {
        return e.what();
    }
    return {};
}

RegressionData random_regression(std::uint64_t seed, std::size_t k, std::size_t p, double lambda) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    RegressionData d;
    d.X = Matrix(k, p);
    d.Y.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < p; ++j) d.X(i, j) = n(g);
        d.Y[i] = 1.0 + 2.0 * d.X(i, 0) + n(g);
    }
    d.prior_lambda = lambda;
    return d;
}

}  // namespace

TEST_CASE("embedded tree girths") {
    REQUIRE(builtin_datasets() == std::vector<std::string>{"trees-girth"});
    const LocationData d = builtin_dataset("trees-girth");
    const LocationStats s = location_stats(d);
    CHECK(s.J == 31);
    CHECK(s.y_bar == doctest::Approx(13.2483870967741935).epsilon(1e-15));
    CHECK(s.S == doctest::Approx(295.437419354838709677).epsilon(1e-13));
    CHECK(s.S == doctest::Approx(naive_S(d.y)).epsilon(1e-12));
    CHECK_THROWS_AS(builtin_dataset("phd-delay"), IngestionError);
}

TEST_CASE("sum of squares is stable for offset data") {
    std::vector<double> y;
    std::mt19937_64 g(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) y.push_back(1e8 + n(g));
    const LocationStats s = location_stats({y});
    CHECK(s.S == doctest::Approx(two_pass_S(y)).epsilon(1e-12));
    CHECK(s.S > 800.0);
    CHECK(s.S < 1200.0);
    CHECK_THROWS_AS(location_stats({{1.0, 2.0}}), ParameterError);
}

TEST_CASE("CSV parsing") {
    const std::string text = "id,y,x1,x2\n1,2.5,1,0\n2,-1e-1,+3,4.25\n3,7,0.5,-2\n";
    const Dataset loc = parse_csv(text, "y");
    REQUIRE(std::holds_alternative<LocationData>(loc));
    CHECK(std::get<LocationData>(loc).y == std::vector<double>{2.5, -0.1, 7.0});

    const Dataset reg = parse_csv(text, "y", {"x1", "x2"}, 0.5);
    REQUIRE(std::holds_alternative<RegressionData>(reg));
    const auto& r = std::get<RegressionData>(reg);
    CHECK(r.X.rows() == 3);
    CHECK(r.X.cols() == 2);
    CHECK(r.X(1, 0) == 3.0);
    CHECK(r.X(1, 1) == 4.25);
    CHECK(r.prior_lambda == 0.5);

    const std::string bad = message_of([] { parse_csv("y,x\n1,2\n3,abc\n", "y", {"x"}, 1.0, "toy.csv"); });
    CHECK(bad.find("toy.csv") != std::string::npos);
    CHECK(bad.find("row 3, column 'x'") != std::string::npos);
    const std::string missing = message_of([] { parse_csv("y,x\n1,\n", "y", {"x"}, 1.0); });
    CHECK(missing.find("row 2, column 'x'") != std::string::npos);

    CHECK_THROWS_AS(parse_csv("", "y"), IngestionError);
    CHECK_THROWS_AS(parse_csv("y\n", "y"), IngestionError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2\n", "y"), IngestionError);
    CHECK_THROWS_AS(parse_csv("y,x\n1,2\n", "y", {"x"}), IngestionError);
    CHECK_THROWS_AS(parse_csv("y,x\n1,2,3\n", "y"), IngestionError);
    CHECK_THROWS_AS(parse_csv("y\n1;5\n", "y"), IngestionError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "y"), IngestionError);
}

TEST_CASE("CSV from a file") {
    const std::string path = "oneshot_test_data.csv";
    {
        std::ofstream out(path);
        out << "Girth,Height\r\n8.3,70\r\n8.6,65\r\n8.8,63\r\n";
    }
    const Dataset d = load_csv(path, "Girth");
    std::remove(path.c_str());
    CHECK(std::get<LocationData>(d).y == std::vector<double>{8.3, 8.6, 8.8});
}

TEST_CASE("regression statistics") {
    SUBCASE("intercept only with a flat prior gives the sum of squares") {
        const LocationData t = builtin_dataset("trees-girth");
        RegressionData d;
        d.Y = t.y;
        d.X = Matrix(t.y.size(), 1, 1.0);
        d.prior_lambda = 0.0;
        const RegressionStats s = regression_stats(d);
        CHECK(s.C_stat == doctest::Approx(295.437419354838709677).epsilon(1e-11));
        CHECK(s.beta_tilde[0] == doctest::Approx(13.2483870967741935).epsilon(1e-14));
        CHECK(s.k == 31);
        CHECK(s.p == 1);
    }
    SUBCASE("orthonormal design") {
        RegressionData d;
        d.X = Matrix(4, 2);
        d.X(0, 0) = d.X(1, 0) = d.X(2, 0) = d.X(3, 0) = 0.5;
        d.X(0, 1) = d.X(1, 1) = 0.5;
        d.X(2, 1) = d.X(3, 1) = -0.5;
        d.Y = {1.0, 2.0, 3.0, 5.0};
        d.prior_lambda = 1.0;
        const RegressionStats s = regression_stats(d);
        // X^T Y = (5.5, -2.5); beta = X^T Y / 2
        CHECK(s.beta_tilde[0] == doctest::Approx(2.75));
        CHECK(s.beta_tilde[1] == doctest::Approx(-1.25));
        CHECK(s.C_stat == doctest::Approx(39.0 - (5.5 * 5.5 + 2.5 * 2.5) / 2));
        CHECK(s.A == Matrix{{2.0, 0.0}, {0.0, 2.0}});
    }
    SUBCASE("residual identity") {
        for (double lambda : {0.0, 0.3, 10.0}) {
            const RegressionData d = random_regression(17, 40, 4, lambda);
            const RegressionStats s = regression_stats(d);
            double resid = 0.0;
            for (std::size_t i = 0; i < 40; ++i) {
                double fit = 0.0;
                for (std::size_t j = 0; j < 4; ++j) fit += d.X(i, j) * s.beta_tilde[j];
                resid += (d.Y[i] - fit) * (d.Y[i] - fit);
            }
            double shrink = 0.0;
            for (double b : s.beta_tilde) shrink += b * b;
            CHECK(s.C_stat == doctest::Approx(resid + lambda * shrink).epsilon(1e-8));
        }
    }
    SUBCASE("nondecreasing in the prior precision") {
        double prev = -1.0;
        double y2 = 0.0;
        const RegressionData base = random_regression(23, 30, 3, 0.0);
        for (double v : base.Y) y2 += v * v;
        for (double lambda : {0.0, 0.01, 0.1, 1.0, 10.0, 100.0, 1e4, 1e7}) {
            RegressionData d = base;
            d.prior_lambda = lambda;
            const double c = regression_stats(d).C_stat;
            CHECK(c >= prev - 1e-9);
            CHECK(c <= y2 * (1 + 1e-12));
            prev = c;
        }
        CHECK(prev == doctest::Approx(y2).epsilon(1e-4));
    }
    SUBCASE("invalid inputs") {
        RegressionData d = random_regression(5, 10, 2, 1.0);
        d.prior_lambda = -1.0;
        CHECK_THROWS_AS(regression_stats(d), ParameterError);
        RegressionData collinear = random_regression(5, 10, 2, 0.0);
        for (std::size_t i = 0; i < 10; ++i) collinear.X(i, 1) = 2 * collinear.X(i, 0);
        CHECK_THROWS_AS(regression_stats(collinear), ParameterError);
        RegressionData tiny = random_regression(5, 2, 2, 1.0);
        CHECK_THROWS_AS(regression_stats(tiny), ParameterError);
    }
}
