#include "oneshot/oneshot.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::json;

namespace {

/// Carries an exit code and a reason prefix out of a command.
struct Failure {
    int code;
    std::string kind;
    std::string message;
};

int exit_code_for(osc_status s) {
    switch (s) {
        case OSC_ERR_STATE:
        case OSC_ERR_PRECISION:
        case OSC_ERR_INTERNAL: return 3;
        default: return 2;
    }
}

void check(osc_status s) {
    if (s != OSC_OK) throw Failure{exit_code_for(s), osc_status_name(s), osc_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{2, "usage", msg}; }

std::string take_string(char* s) {
    std::string out = s != nullptr ? s : "";
    osc_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{2, "ingestion", path + ": cannot open file"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Failure{2, "parameter", what + " is not valid JSON: " + e.what()};
    }
}

Json inline_or_file(const std::string& arg, const std::string& what) {
    if (!arg.empty() && arg.front() == '@') return parse_json(read_file(arg.substr(1)), what);
    return parse_json(arg, what);
}

std::vector<double> number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage(what + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) usage(what + ": empty list");
    return out;
}

struct Handles {
    std::unique_ptr<osc_model, decltype(&osc_model_free)> model{nullptr, osc_model_free};
    std::unique_ptr<osc_certificate, decltype(&osc_certificate_free)> cert{nullptr,
                                                                           osc_certificate_free};
};

/// Options shared by the model-driven commands.
struct ModelArgs {
    std::string family;
    std::string params;
    std::string model;
    std::string config;
    std::string x0;
    std::string x0p;
    std::optional<double> gap;
    std::optional<int> modes;
    bool exact_d = false;
    std::optional<double> d2;
    std::optional<int> grid;
    std::optional<int> workers;
    std::string out;
    Json config_json = Json::object();

    void attach(CLI::App* app, bool want_cert_flags) {
        app->add_option("--family", family, "chain family, e.g. garch");
        app->add_option("--params", params, "family parameters as a JSON object");
        app->add_option("--model", model, "model JSON, or @file");
        app->add_option("--config", config, "run configuration JSON file");
        app->add_option("--x0", x0, "initial state, comma separated");
        app->add_option("--x0p", x0p, "second initial state, comma separated");
        app->add_option("--workers", workers, "worker threads (default: all cores)");
        app->add_option("--out", out, "output path (default: stdout)");
        if (want_cert_flags) {
            app->add_option("--gap", gap, "initial expected distance E|X0 - X0'|");
            app->add_option("--modes", modes, "mode count M of the noise density (larch)");
            app->add_flag("--exact-D", exact_d, "asym-arch: use |a| E|Z| instead of the Jensen rate");
            app->add_option("--D2", d2, "nonlinear-ar: two-step rate, skips the grid search");
            app->add_option("--grid", grid, "nonlinear-ar: grid points per axis");
        }
        app->allow_extras();
    }

    void load_config() {
        if (!config.empty()) config_json = parse_json(read_file(config), config);
        if (!config_json.is_object()) usage("--config must hold a JSON object");
    }

    /// --family with --params and --<name> value extras, else --model, else the config.
    Json model_json(const std::vector<std::string>& extras) const {
        Json p = params.empty() ? Json::object() : parse_json(params, "--params");
        if (!p.is_object()) usage("--params must be a JSON object");
        if (extras.size() % 2 != 0) usage("unpaired argument '" + extras.back() + "'");
        for (std::size_t i = 0; i < extras.size(); i += 2) {
            const std::string& key = extras[i];
            if (key.rfind("--", 0) != 0 || key.size() < 3) usage("unexpected argument '" + key + "'");
            const std::string name = key.substr(2);
            Json value;
            try {
                value = Json::parse(extras[i + 1]);
            } catch (const Json::exception&) {
                value = extras[i + 1];
            }
            p[name] = value;
        }
        if (!family.empty()) return Json{{"family", family}, {"params", p}};
        if (!extras.empty() || !params.empty()) usage("parameters given without --family");
        if (!model.empty()) return inline_or_file(model, "--model");
        if (config_json.contains("model")) return config_json.at("model");
        usage("give --family, --model or a config with a 'model' entry");
    }

    std::optional<std::vector<double>> state(const std::string& flag, const char* key) const {
        if (!flag.empty()) return number_list(flag, key);
        if (config_json.contains(key)) {
            const Json& v = config_json.at(key);
            if (v.is_number()) return std::vector<double>{v.get<double>()};
            if (v.is_array()) return v.get<std::vector<double>>();
            usage(std::string("config field '") + key + "' must be a number or array");
        }
        return std::nullopt;
    }

    Json cert_inputs() const {
        Json in = Json::object();
        if (auto v = state(x0, "x0")) in["x0"] = *v;
        if (auto v = state(x0p, "x0p")) in["x0p"] = *v;
        if (gap)
            in["gap"] = *gap;
        else if (config_json.contains("gap"))
            in["gap"] = config_json.at("gap");
        if (modes) in["M"] = *modes;
        if (exact_d) in["jensen"] = false;
        if (d2) in["D2"] = *d2;
        if (grid) in["grid"] = *grid;
        if (workers) in["workers"] = *workers;
        return in;
    }

    Handles build(const std::vector<std::string>& extras, bool with_cert) const {
        Handles h;
        osc_model* m = nullptr;
        check(osc_model_from_json(model_json(extras).dump().c_str(), &m));
        h.model.reset(m);
        if (with_cert) {
            osc_certificate* c = nullptr;
            check(osc_certificate_build(m, cert_inputs().dump().c_str(), &c));
            h.cert.reset(c);
        }
        return h;
    }

    void emit(const std::string& text) const {
        const std::string path = !out.empty() ? out : config_json.value("out", std::string());
        if (path.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Failure{3, "io", path + ": cannot write output"};
        f << text;
    }
};

template <class T>
T config_or(const Json& cfg, const char* key, std::optional<T> flag, T fallback) {
    if (flag) return *flag;
    if (cfg.contains(key)) return cfg.at(key).get<T>();
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-shot coupling bound certificates and total-variation curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(osc_version()));

    ModelArgs cert_args;
    auto* cmd_cert = app.add_subcommand("certificate", "build a bound certificate (JSON)");
    cert_args.attach(cmd_cert, true);

    ModelArgs iter_args;
    std::optional<double> epsilon;
    auto* cmd_iters = app.add_subcommand("iters", "smallest n with bound below epsilon");
    iter_args.attach(cmd_iters, true);
    cmd_iters->add_option("--epsilon", epsilon, "target total variation (default 0.01)");

    ModelArgs curve_args;
    std::optional<std::int64_t> n_max;
    std::optional<std::int64_t> n_paths;
    std::optional<double> bin_width;
    std::optional<std::uint64_t> seed;
    bool shared_noise = false;
    bool no_bound = false;
    auto* cmd_curve = app.add_subcommand("curve", "simulate a total-variation curve (CSV)");
    curve_args.attach(cmd_curve, true);
    cmd_curve->add_option("--n-max", n_max, "last iteration (default 10)");
    cmd_curve->add_option("--paths", n_paths, "coupled paths (default 1000000)");
    cmd_curve->add_option("--bin-width", bin_width, "histogram bin width (default 0.01)");
    cmd_curve->add_option("--seed", seed, "random seed (default: $ONESHOT_SEED, else 1)");
    cmd_curve->add_flag("--shared-noise", shared_noise, "drive both copies with one noise sequence");
    cmd_curve->add_flag("--no-bound", no_bound, "leave the bound columns empty");

    std::string builtin;
    std::string csv_path;
    std::string y_col;
    std::vector<std::string> x_cols;
    std::optional<double> prior_lambda;
    std::string stats_out;
    auto* cmd_stats = app.add_subcommand("dataset-stats", "sufficient statistics of a dataset");
    cmd_stats->add_option("--builtin", builtin, "embedded dataset name (trees-girth)");
    cmd_stats->add_option("--csv", csv_path, "CSV file with a header row");
    cmd_stats->add_option("--y", y_col, "response column");
    cmd_stats->add_option("--x", x_cols, "covariate columns")->delimiter(',');
    cmd_stats->add_option("--lambda", prior_lambda, "prior precision for regression data");
    cmd_stats->add_option("--out", stats_out, "output path (default: stdout)");

    std::optional<std::uint64_t> repro_seed;
    std::optional<std::int64_t> drift_draws;
    std::optional<int> repro_workers;
    std::string repro_out;
    auto* cmd_repro = app.add_subcommand("repro", "published constants against computed values");
    cmd_repro->add_option("--seed", repro_seed, "seed of the drift fit");
    cmd_repro->add_option("--drift-draws", drift_draws, "draws per grid point of the drift fit");
    cmd_repro->add_option("--workers", repro_workers, "worker threads");
    cmd_repro->add_option("--out", repro_out, "output path (default: stdout)");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            usage(e.what());
        }

        auto env_seed = []() -> std::optional<std::uint64_t> {
            const char* s = std::getenv("ONESHOT_SEED");
            if (s == nullptr || *s == '\0') return std::nullopt;
            char* end = nullptr;
            const unsigned long long v = std::strtoull(s, &end, 10);
            if (end == nullptr || *end != '\0') usage("ONESHOT_SEED must be an unsigned integer");
            return std::uint64_t(v);
        };

        if (cmd_cert->parsed()) {
            cert_args.load_config();
            Handles h = cert_args.build(cmd_cert->remaining(), true);
            char* text = nullptr;
            check(osc_certificate_to_json(h.cert.get(), &text));
            cert_args.emit(parse_json(take_string(text), "certificate").dump(2) + "\n");
        } else if (cmd_iters->parsed()) {
            iter_args.load_config();
            Handles h = iter_args.build(cmd_iters->remaining(), true);
            const double eps = config_or(iter_args.config_json, "epsilon", epsilon, 0.01);
            std::int64_t n = 0;
            check(osc_certificate_iterations(h.cert.get(), eps, &n));
            iter_args.emit(std::to_string(n) + "\n");
        } else if (cmd_curve->parsed()) {
            curve_args.load_config();
            const Json& cfg = curve_args.config_json;
            Handles h = curve_args.build(cmd_curve->remaining(), !no_bound);
            const auto x0 = curve_args.state(curve_args.x0, "x0");
            const auto x0p = curve_args.state(curve_args.x0p, "x0p");
            if (!x0 || !x0p) usage("curve needs --x0 and --x0p");
            osc_curve_options o = osc_curve_options_default();
            o.n_max = config_or(cfg, "n_max", n_max, o.n_max);
            o.n_paths = config_or(cfg, "n_paths", n_paths, o.n_paths);
            o.bin_width = config_or(cfg, "bin_width", bin_width, o.bin_width);
            std::optional<std::uint64_t> s = seed ? seed : env_seed();
            o.seed = config_or(cfg, "seed", s, std::uint64_t(1));
            o.workers = config_or(cfg, "workers", curve_args.workers, 0);
            o.shared_noise = shared_noise || cfg.value("shared_noise", false);
            if (o.n_max < 1) usage("--n-max must be >= 1");
            if (o.n_paths < 1) usage("--paths must be >= 1");
            if (!(o.bin_width > 0.0)) usage("--bin-width must be > 0");

            osc_curve* c = nullptr;
            const osc_status st = osc_curve_simulate(h.model.get(), x0->data(), x0->size(),
                                                     x0p->data(), x0p->size(), h.cert.get(), &o, &c);
            if (st != OSC_OK) {
                const int code = st == OSC_ERR_PARAMETER || st == OSC_ERR_INVALID_ARGUMENT ? 2 : 3;
                throw Failure{code, osc_status_name(st), osc_last_error()};
            }
            std::unique_ptr<osc_curve, decltype(&osc_curve_free)> curve(c, osc_curve_free);
            char* text = nullptr;
            check(osc_curve_to_csv(curve.get(), &text));
            curve_args.emit(take_string(text));
        } else if (cmd_stats->parsed()) {
            Json req;
            if (!builtin.empty()) {
                req["builtin"] = builtin;
            } else if (!csv_path.empty()) {
                if (y_col.empty()) usage("--csv needs --y");
                req = Json{{"path", csv_path}, {"y", y_col}};
                if (!x_cols.empty()) req["x"] = x_cols;
                if (prior_lambda) req["lambda"] = *prior_lambda;
            } else {
                usage("dataset-stats needs --builtin or --csv");
            }
            char* text = nullptr;
            check(osc_dataset_stats(req.dump().c_str(), &text));
            ModelArgs sink;
            sink.out = stats_out;
            sink.emit(parse_json(take_string(text), "statistics").dump(2) + "\n");
        } else if (cmd_repro->parsed()) {
            Json opts = Json::object();
            std::optional<std::uint64_t> s = repro_seed ? repro_seed : env_seed();
            if (s) opts["seed"] = *s;
            if (drift_draws) opts["drift_draws"] = *drift_draws;
            if (repro_workers) opts["workers"] = *repro_workers;
            char* text = nullptr;
            check(osc_repro_run(opts.dump().c_str(), &text));
            ModelArgs sink;
            sink.out = repro_out;
            sink.emit(take_string(text));
        }
    } catch (const Failure& f) {
        std::string msg = f.message;
        for (char& ch : msg)
            if (ch == '\n' || ch == '\r') ch = ' ';
        std::fprintf(stderr, "oneshot: error[%s]: %s\n", f.kind.c_str(), msg.c_str());
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "oneshot: error[internal]: %s\n", e.what());
        return 3;
    }
    return 0;
}
