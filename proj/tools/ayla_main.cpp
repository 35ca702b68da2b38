#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ayla/harness.hpp"
#include "ayla/selftest.hpp"

using nlohmann::json;

namespace {

struct CliValues {
    std::string optimizer;
    bool ayla = false;
    double n1, n2, lr, start_x = -1.0;
    std::size_t epochs, hidden, batch_size = 256, per_class;
    std::uint64_t seed = 1;
    std::string data_dir, out = "trace.csv", config_path;
};

std::string default_data_dir() {
    const char* env = std::getenv("AYLA_DATA_DIR");
    return env && *env ? env : "data";
}

void add_common_flags(CLI::App* sub, CliValues& v) {
    sub->add_option("--optimizer", v.optimizer, "Base optimizer: sgd or adam")
        ->check(CLI::IsMember({"sgd", "adam"}));
    sub->add_flag("--ayla", v.ayla, "Enable the loss-transformation wrapper");
    sub->add_option("--n1", v.n1, "Power applied when |loss| < 1");
    sub->add_option("--n2", v.n2, "Power applied when |loss| > 1");
    sub->add_option("--lr", v.lr, "Learning rate");
    sub->add_option("--epochs", v.epochs, "Epoch count");
    sub->add_option("--hidden", v.hidden, "Hidden layer width");
    sub->add_option("--batch-size", v.batch_size, "Mini-batch size");
    sub->add_option("--seed", v.seed, "Run seed");
    sub->add_option("--start-x", v.start_x, "Start point (poly only)");
    sub->add_option("--per-class", v.per_class, "Stratified per-class subset size (0 = full)");
    sub->add_option("--data-dir", v.data_dir, "Dataset directory (default $AYLA_DATA_DIR or ./data)");
    sub->add_option("--out", v.out, "Output CSV path");
    sub->add_option("--config", v.config_path, "JSON config file (flags override file values)");
}

// file values apply only where the flag was not given explicitly
void overlay_json(CLI::App* sub, CliValues& v) {
    if (v.config_path.empty()) return;
    std::ifstream in(v.config_path);
    if (!in) throw std::runtime_error("cannot open config file " + v.config_path);
    json j = json::parse(in);

    auto unset = [&](const char* flag) { return sub->count(flag) == 0; };
    if (j.contains("optimizer") && unset("--optimizer")) v.optimizer = j["optimizer"];
    if (j.contains("ayla") && unset("--ayla")) v.ayla = j["ayla"];
    if (j.contains("n1") && unset("--n1")) v.n1 = j["n1"];
    if (j.contains("n2") && unset("--n2")) v.n2 = j["n2"];
    if (j.contains("lr") && unset("--lr")) v.lr = j["lr"];
    if (j.contains("epochs") && unset("--epochs")) v.epochs = j["epochs"];
    if (j.contains("hidden") && unset("--hidden")) v.hidden = j["hidden"];
    if (j.contains("batch_size") && unset("--batch-size")) v.batch_size = j["batch_size"];
    if (j.contains("seed") && unset("--seed")) v.seed = j["seed"];
    if (j.contains("start_x") && unset("--start-x")) v.start_x = j["start_x"];
    if (j.contains("per_class") && unset("--per-class")) v.per_class = j["per_class"];
    if (j.contains("data_dir") && unset("--data-dir")) v.data_dir = j["data_dir"];
    if (j.contains("out") && unset("--out")) v.out = j["out"];
}

ayla::RunConfig to_run_config(ayla::Experiment exp, const CliValues& v) {
    ayla::RunConfig cfg;
    cfg.experiment = exp;
    cfg.optimizer = v.optimizer == "sgd" ? ayla::BaseOptimizer::sgd : ayla::BaseOptimizer::adam;
    cfg.ayla = v.ayla;
    cfg.n1 = v.n1;
    cfg.n2 = v.n2;
    cfg.lr = v.lr;
    cfg.epochs = v.epochs;
    cfg.hidden_dim = v.hidden;
    cfg.batch_size = v.batch_size;
    cfg.seed = v.seed;
    cfg.start_x = v.start_x;
    cfg.per_class = v.per_class;
    cfg.data_dir = v.data_dir;
    cfg.out = v.out;
    return cfg;
}

int run_and_emit(ayla::Experiment exp, const CliValues& v, const std::string& name) {
    ayla::RunConfig cfg = to_run_config(exp, v);
    ayla::RunResult res = ayla::run_experiment(cfg);
    ayla::emit_csv(res.trace, cfg.out);
    if (exp == ayla::Experiment::curvefit && !res.predictions.empty())
        ayla::emit_predictions_csv(res.predictions, ayla::prediction_path(cfg.out));
    std::cout << name << ": " << res.summary << " -> " << cfg.out << "\n";
    return 0;
}

int run_selftest() {
    bool all = true;
    for (const ayla::SuiteResult& r : ayla::run_all_selftests()) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
        all = all && r.passed;
    }
    std::cout << (all ? "selftest: all suites passed\n" : "selftest: FAILURES\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AYLA power-law loss-transformation experiments"};
    app.require_subcommand(1);

    struct ExpDef {
        const char* name;
        ayla::Experiment exp;
        CliValues v;
    };
    ExpDef defs[] = {
        {"poly", ayla::Experiment::poly, {}},
        {"curvefit", ayla::Experiment::curvefit, {}},
        {"mnist", ayla::Experiment::mnist, {}},
        {"cifar100", ayla::Experiment::cifar100, {}},
    };
    // per-experiment defaults; every field can be overridden by flag or config
    defs[0].v = {"sgd", false, 1.0, 1.4, 0.03, -1.0, 50, 0, 256, 0, 1, "", "trace.csv", ""};
    defs[1].v = {"adam", false, 0.2, 1.0, 0.01, -1.0, 100, 128, 256, 0, 1, "", "trace.csv", ""};
    defs[2].v = {"adam", false, 0.1, 0.1, 1e-4, -1.0, 10, 8, 256, 200, 1, "", "trace.csv", ""};
    defs[3].v = {"adam", false, 1.5, 1.5, 1e-4, -1.0, 10, 8, 256, 20, 1, "", "trace.csv", ""};

    std::vector<CLI::App*> subs;
    for (ExpDef& d : defs) {
        CLI::App* sub = app.add_subcommand(d.name, std::string("Run the ") + d.name + " experiment");
        d.v.data_dir = default_data_dir();
        add_common_flags(sub, d.v);
        subs.push_back(sub);
    }
    CLI::App* selftest = app.add_subcommand("selftest", "Run the invariant suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) return run_selftest();
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) {
                overlay_json(subs[i], defs[i].v);
                return run_and_emit(defs[i].exp, defs[i].v, defs[i].name);
            }
        }
    } catch (const ayla::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
