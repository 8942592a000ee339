// netnorm: describe networks, test whether two observed networks share a
// generating model, run Monte Carlo power studies, and print population
// diagnostics for model pairs.

#include "netnorm/edge_list.hpp"
#include "netnorm/network.hpp"
#include "netnorm/randomization.hpp"
#include "netnorm/report.hpp"
#include "netnorm/simulation.hpp"
#include "netnorm/statistics.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace netnorm;
using nlohmann::json;

struct run_config {
    std::string a;
    std::string b;
    std::string input;
    std::string stats;
    long R = 999;
    scalar_t alpha = 0.05;
    u64 seed = 1;
    std::string format = "text";
    std::string out;
    std::string preset;
    index_t n = 50;
    long trials = 200;
    int threads = 0;
    bool fail_on_reject = false;
    std::string clustering = "standard";
    int sdp_restarts = 5;
    scalar_t sdp_tol = 1e-7;
    std::string config_file;
    json f1_spec;  // config-file only: explicit model specs for simulate/diagnose
    json f2_spec;
};

std::vector<statistic_id> parse_statistics(const std::string &stats) {
    if (stats.empty()) return default_battery();
    std::vector<statistic_id> ids;
    std::stringstream stream(stats);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) ids.push_back(statistic_from_name(token));
    }
    if (ids.empty()) throw invalid_params_error("empty statistic list");
    return ids;
}

clustering_mode parse_clustering(const std::string &name) {
    if (name == "standard") return clustering_mode::standard;
    if (name == "literal") return clustering_mode::literal;
    throw invalid_params_error("unknown clustering mode '" + name + "'");
}

statistic_context make_context(const run_config &cfg) {
    statistic_context ctx;
    ctx.clustering = parse_clustering(cfg.clustering);
    ctx.sdp.restarts = cfg.sdp_restarts;
    ctx.sdp.tol = cfg.sdp_tol;
    return ctx;
}

/** Interpret a square label/matrix CSV as per-cell Bernoulli edge probabilities */
random_graph_model probability_model_from_file(const std::string &path) {
    const network net = load_network_file(path);
    const index_t n = net.n();
    random_graph_model model;
    model.n = n;
    model.cells.reserve(static_cast<std::size_t>(n * n));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j)
            model.cells.push_back(i == j ? degenerate_cell(0.0)
                                         : bernoulli_cell(net.weights(i, j)));
    return model;
}

random_graph_model model_from_spec(const json &spec) {
    if (spec.is_string()) return probability_model_from_file(spec.get<std::string>());
    if (!spec.is_object()) throw invalid_params_error("model spec must be an object or a path");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "er")
        return er_model(spec.at("n").get<index_t>(), spec.at("p").get<scalar_t>());
    if (kind == "star-block")
        return star_block_model(spec.at("n").get<index_t>(), spec.at("p_star").get<scalar_t>(),
                                spec.at("p_rest").get<scalar_t>());
    if (kind == "matrix") return probability_model_from_file(spec.at("file").get<std::string>());
    throw invalid_params_error("unknown model kind '" + kind + "'");
}

std::pair<random_graph_model, random_graph_model> resolve_models(const run_config &cfg) {
    if (!cfg.preset.empty()) return preset_models(cfg.preset, cfg.n);
    if (!cfg.f1_spec.is_null() && !cfg.f2_spec.is_null())
        return {model_from_spec(cfg.f1_spec), model_from_spec(cfg.f2_spec)};
    if (!cfg.a.empty() && !cfg.b.empty())
        return {probability_model_from_file(cfg.a), probability_model_from_file(cfg.b)};
    throw invalid_params_error("no models given: use --preset, --a/--b, or f1/f2 in --config");
}

/** Reorder the second network to the first network's label order */
network align_to(const network &reference, const network &other) {
    std::map<std::string, index_t> position;
    for (std::size_t i = 0; i < other.labels.size(); ++i)
        position[other.labels[i]] = static_cast<index_t>(i);
    const index_t n = reference.n();
    if (other.n() != n) throw size_mismatch_error(n, other.n());
    std::vector<index_t> take(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) {
        const auto found = position.find(reference.labels[static_cast<std::size_t>(i)]);
        if (found == position.end())
            throw label_mismatch_error("'" + reference.labels[static_cast<std::size_t>(i)] +
                                       "' is missing from the second network");
        take[static_cast<std::size_t>(i)] = found->second;
    }
    matrix_t w(n, n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j)
            w(i, j) = other.weights(take[static_cast<std::size_t>(i)],
                                    take[static_cast<std::size_t>(j)]);
    return make_network(std::move(w), reference.labels);
}

/** Route a report to --out when given, stdout otherwise */
void emit(const run_config &cfg, const std::function<void(std::ostream &)> &writer) {
    if (cfg.out.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream file(cfg.out);
    if (!file) throw error("cannot open output file: " + cfg.out);
    writer(file);
}

int cmd_describe(const run_config &cfg) {
    const network net = load_network_file(cfg.input);
    const descriptive_summary summary = describe(net, parse_clustering(cfg.clustering));
    emit(cfg, [&](std::ostream &out) {
        write_summary(out, summary, format_from_name(cfg.format));
    });
    return 0;
}

int cmd_test(const run_config &cfg) {
    const network a = load_network_file(cfg.a);
    const network b = align_to(a, load_network_file(cfg.b));
    const network_pair pair{a, b};
    const std::vector<statistic_id> battery = parse_statistics(cfg.stats);
    const std::vector<test_report> reports =
        run_battery(pair, battery, cfg.R, cfg.alpha, cfg.seed, make_context(cfg), cfg.threads);
    emit(cfg, [&](std::ostream &out) {
        write_battery(out, reports, format_from_name(cfg.format));
    });
    if (cfg.fail_on_reject) {
        for (const auto &report : reports)
            if (report.reject) return 1;
    }
    return 0;
}

int cmd_simulate(const run_config &cfg) {
    const auto [f1, f2] = resolve_models(cfg);
    const std::vector<statistic_id> battery = parse_statistics(cfg.stats);
    const study_table table = power_study(f1, f2, cfg.trials, cfg.R, cfg.alpha, battery, cfg.seed,
                                          make_context(cfg), cfg.threads);
    write_study_summary(std::cout, table, format_from_name(cfg.format));
    if (!cfg.out.empty()) {
        std::ofstream rows(cfg.out + ".csv");
        if (!rows) throw error("cannot open output file: " + cfg.out + ".csv");
        write_study_rows(rows, table);
        std::ofstream summary(cfg.out + ".json");
        if (!summary) throw error("cannot open output file: " + cfg.out + ".json");
        write_study_summary(summary, table, report_format::json);
    }
    return 0;
}

int cmd_diagnose(const run_config &cfg) {
    const auto [f1, f2] = resolve_models(cfg);
    const population_diagnostics_t diagnostics = population_diagnostics(f1, f2);
    emit(cfg, [&](std::ostream &out) {
        write_diagnostics(out, diagnostics, format_from_name(cfg.format));
    });
    return 0;
}

/** Fill cfg from the JSON config file; command-line flags keep priority */
void apply_config_file(CLI::App *cmd, run_config &cfg) {
    std::ifstream file(cfg.config_file);
    if (!file) throw error("cannot open config file: " + cfg.config_file);
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error &e) {
        throw parse_error(0, std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw invalid_params_error("config must be a JSON object");

    const auto overridden = [&](const std::string &flag) {
        const CLI::Option *opt = cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    const bool takes_models = cmd->get_name() == "simulate" || cmd->get_name() == "diagnose";
    for (const auto &[key, value] : doc.items()) {
        const std::string flag = "--" + key;
        if (takes_models && key == "f1") {
            cfg.f1_spec = value;
        } else if (takes_models && key == "f2") {
            cfg.f2_spec = value;
        } else if (key == "stats") {
            if (cmd->get_option_no_throw(flag) == nullptr)
                throw invalid_params_error("unknown config key '" + key + "'");
            if (overridden(flag)) continue;
            if (value.is_array()) {
                std::string joined;
                for (const auto &item : value) {
                    if (!joined.empty()) joined += ',';
                    joined += item.get<std::string>();
                }
                cfg.stats = joined;
            } else {
                cfg.stats = value.get<std::string>();
            }
        } else if (cmd->get_option_no_throw(flag) == nullptr) {
            throw invalid_params_error("unknown config key '" + key + "'");
        } else if (!overridden(flag)) {
            if (key == "a") cfg.a = value.get<std::string>();
            else if (key == "b") cfg.b = value.get<std::string>();
            else if (key == "input") cfg.input = value.get<std::string>();
            else if (key == "R") cfg.R = value.get<long>();
            else if (key == "alpha") cfg.alpha = value.get<scalar_t>();
            else if (key == "seed") cfg.seed = value.get<u64>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "preset") cfg.preset = value.get<std::string>();
            else if (key == "n") cfg.n = value.get<index_t>();
            else if (key == "trials") cfg.trials = value.get<long>();
            else if (key == "threads") cfg.threads = value.get<int>();
            else if (key == "fail-on-reject") cfg.fail_on_reject = value.get<bool>();
            else if (key == "clustering") cfg.clustering = value.get<std::string>();
            else if (key == "sdp-restarts") cfg.sdp_restarts = value.get<int>();
            else if (key == "sdp-tol") cfg.sdp_tol = value.get<scalar_t>();
            else throw invalid_params_error("unknown config key '" + key + "'");
        }
    }
}

void add_output_flags(CLI::App *cmd, run_config &cfg) {
    cmd->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--out", cfg.out, "Write the report to this path instead of stdout");
    cmd->add_option("--config", cfg.config_file, "JSON config file; flags override its keys");
}

void add_solver_flags(CLI::App *cmd, run_config &cfg) {
    cmd->add_option("--threads", cfg.threads,
                    "Worker threads (0: NETNORM_THREADS or hardware)");
    cmd->add_option("--clustering", cfg.clustering, "Clustering coefficient convention")
        ->check(CLI::IsMember({"standard", "literal"}));
    cmd->add_option("--sdp-restarts", cfg.sdp_restarts, "Restarts of the low-rank SDP solver");
    cmd->add_option("--sdp-tol", cfg.sdp_tol, "Convergence tolerance of the SDP solver");
}

void add_test_flags(CLI::App *cmd, run_config &cfg) {
    cmd->add_option("--stats", cfg.stats, "Comma-separated statistic names (default: battery)");
    cmd->add_option("--R", cfg.R, "Number of randomization draws");
    cmd->add_option("--alpha", cfg.alpha, "Test level");
    cmd->add_option("--seed", cfg.seed, "Random seed");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Randomization tests for pairs of observed networks"};
    app.require_subcommand(1);
    run_config cfg;

    CLI::App *describe = app.add_subcommand("describe", "Summary statistics of one network");
    describe->add_option("--input", cfg.input, "Network CSV (edge list or matrix)");
    describe->add_option("--clustering", cfg.clustering, "Clustering coefficient convention")
        ->check(CLI::IsMember({"standard", "literal"}));
    add_output_flags(describe, cfg);

    CLI::App *test = app.add_subcommand("test", "Test whether two networks share a model");
    test->add_option("--a", cfg.a, "First network CSV");
    test->add_option("--b", cfg.b, "Second network CSV");
    add_test_flags(test, cfg);
    test->add_flag("--fail-on-reject", cfg.fail_on_reject, "Exit 1 when any statistic rejects");
    add_solver_flags(test, cfg);
    add_output_flags(test, cfg);

    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo power study of a model pair");
    simulate->add_option("--preset", cfg.preset, "Model pair preset: sparse-er or degree-het");
    simulate->add_option("--n", cfg.n, "Number of nodes for presets");
    simulate->add_option("--a", cfg.a, "First cell-probability matrix CSV");
    simulate->add_option("--b", cfg.b, "Second cell-probability matrix CSV");
    simulate->add_option("--trials", cfg.trials, "Monte Carlo trials");
    add_test_flags(simulate, cfg);
    add_solver_flags(simulate, cfg);
    add_output_flags(simulate, cfg);

    CLI::App *diagnose = app.add_subcommand("diagnose", "Population diagnostics of a model pair");
    diagnose->add_option("--preset", cfg.preset, "Model pair preset: sparse-er or degree-het");
    diagnose->add_option("--n", cfg.n, "Number of nodes for presets");
    diagnose->add_option("--a", cfg.a, "First cell-probability matrix CSV");
    diagnose->add_option("--b", cfg.b, "Second cell-probability matrix CSV");
    add_output_flags(diagnose, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    CLI::App *active = app.get_subcommands().front();
    try {
        if (!cfg.config_file.empty()) apply_config_file(active, cfg);
        if (active == describe) return cmd_describe(cfg);
        if (active == test) return cmd_test(cfg);
        if (active == simulate) return cmd_simulate(cfg);
        return cmd_diagnose(cfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
