#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" ONESHOT_CLI "\" " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("certificate subcommand") {
    const Run ar = run("certificate --family ar1 --a 0.5 --sigma 0.8660 --gap 1");
    REQUIRE(ar.code == 0);
    const auto j = nlohmann::json::parse(ar.out);
    CHECK(j.at("D").get<double>() == 0.5);
    CHECK(j.at("gap").get<double>() == 1.0);

    const Run g = run("certificate --family garch --alpha2 0.13 --beta2 0.1266 --gamma2 0.7922 "
                      "--x0 0.1,0.0001 --x0p -0.1,0.01");
    REQUIRE(g.code == 0);
    const auto gj = nlohmann::json::parse(g.out);
    CHECK(gj.at("extras").at("coefficient").get<double>() == doctest::Approx(0.2456).epsilon(0.002));
    CHECK(gj.at("n0") == 1);

    const Run zero = run("certificate --family ar1 --a 0.5 --sigma 1 --gap 0");
    REQUIRE(zero.code == 0);
    CHECK(nlohmann::json::parse(zero.out).at("gap").get<double>() == 0.0);

    const Run json_params =
        run("certificate --family asym-arch --params '{\"a\": 0.5, \"b\": 3, \"c\": 5}' --gap 5");
    REQUIRE(json_params.code == 0);
    CHECK(nlohmann::json::parse(json_params.out).at("D").get<double>() == doctest::Approx(0.5));
}

TEST_CASE("iters subcommand") {
    CHECK(run("iters --family location-gibbs --J 31 --S 295.437419354838 --gap 18.12198").out == "4\n");
    CHECK(run("iters --family garch --alpha2 0.13 --beta2 0.1266 --gamma2 0.7922 "
              "--x0 0.1,0.0001 --x0p -0.1,0.01").out == "77\n");
    const std::string model =
        R"('{"family": "ar-normal-d", "params": {"A": {"tridiagonal": {"d": 100, "diag": 0.5, "off": 0.125}}, "Sigma": "A"}}')";
    std::string ones = "1";
    std::string zeros = "0";
    for (int i = 1; i < 100; ++i) {
        ones += ",1";
        zeros += ",0";
    }
    CHECK(run("iters --model " + model + " --x0 " + ones + " --x0p " + zeros).out == "56\n");
    CHECK(run("iters --family ar1 --a 0.5 --sigma 0.8660254 --gap 1 --epsilon 0.01").out == "7\n");
}

TEST_CASE("config files") {
    const std::string path = std::string(ONESHOT_TEST_DIR) + "/cli_config.json";
    {
        std::ofstream f(path);
        f << R"({"model": {"family": "asym-arch", "params": {"a": 0.5, "b": 3, "c": 5}},
                 "gap": 5, "epsilon": 0.01})";
    }
    const Run r = run("iters --config " + path);
    std::remove(path.c_str());
    CHECK(r.code == 0);
    CHECK(r.out == "7\n");
}

TEST_CASE("curve subcommand") {
    const Run one = run("curve --family ar1 --a 0.5 --sigma 0.8660254 --x0 1 --x0p 0 --paths 1 --n-max 3");
    CHECK(one.code == 0);
    CHECK(one.out.rfind("n,bound,bound_clamped,tv_sim,tv_exact,mc_se\n", 0) == 0);

    const std::string base =
        "curve --family larch --beta0 1 --beta1 0.5 --x0 1.2 --x0p 0 --paths 30000 --n-max 4 --seed 5";
    const Run w1 = run(base + " --workers 1");
    const Run w3 = run(base + " --workers 3");
    REQUIRE(w1.code == 0);
    CHECK(w1.out == w3.out);

    const std::string unseeded =
        "curve --family ar1 --a 0.5 --sigma 1 --x0 1 --x0p 0 --paths 20000 --n-max 2 --no-bound";
    const Run e1 = run(unseeded, false, "ONESHOT_SEED=42");
    const Run s1 = run(unseeded + " --seed 42");
    const Run e2 = run(unseeded, false, "ONESHOT_SEED=43");
    CHECK(e1.out == s1.out);
    CHECK(e1.out != e2.out);

    CHECK(run("curve --family ar1 --a 0.5 --sigma 1 --x0 1 --x0p 0 --paths 0").code == 2);
    CHECK(run("curve --family ar1 --a 0.5 --sigma 1 --x0 1,2 --x0p 0 --paths 10 --no-bound").code == 3);
}

TEST_CASE("dataset-stats subcommand") {
    const Run r = run("dataset-stats --builtin trees-girth");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("J") == 31);
    CHECK(j.at("S").get<double>() == doctest::Approx(295.437419354838709677));

    const Run missing = run("dataset-stats --csv /nonexistent/data.csv --y y", true);
    CHECK(missing.code == 2);
    CHECK(missing.out.rfind("oneshot: error[ingestion]: ", 0) == 0);
    CHECK(missing.out.find('\n') == missing.out.size() - 1);
}

TEST_CASE("usage errors") {
    CHECK(run("certificate --family garch").code == 2);
    CHECK(run("certificate --family martingale --gap 1").code == 2);
    CHECK(run("certificate --family ar1 --a 1.5 --sigma 1 --gap 1").code == 2);
    CHECK(run("no-such-command").code == 2);
    CHECK(run("curve --family ar1 --a 0.5 --sigma 1 --x0 1 --x0p 0", false, "ONESHOT_SEED=abc").code == 2);
}
