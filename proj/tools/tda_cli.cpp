// Command-line front end: featurize, generate, stability-test, classify-demo,
// bottleneck, label-patterns. Exit codes: 0 success, 2 configuration error,
// 3 computation error (e.g. simplex budget exceeded).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tda/classify.hpp"
#include "tda/errors.hpp"
#include "tda/labels.hpp"
#include "tda/metrics.hpp"
#include "tda/pipeline.hpp"
#include "tda/stability.hpp"
#include "tda/timeseries.hpp"

namespace {

std::optional<std::uint64_t> env_seed_override() {
    const char* env = std::getenv("TDA_SEED");
    if (!env || !*env) return std::nullopt;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw tda::ConfigError(std::string("TDA_SEED is not an integer: ") + env);
    }
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw tda::ConfigError("--params entries must look like key=value: " + item);
        try {
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw tda::ConfigError("--params value is not a number: " + item);
        }
    }
    return params;
}

std::size_t parse_count_or_auto(const std::string& text, const char* flag) {
    if (text == "auto") return 0;
    try {
        long v = std::stol(text);
        if (v < 1) throw tda::ConfigError(std::string(flag) + " must be >= 1 or \"auto\"");
        return static_cast<std::size_t>(v);
    } catch (const tda::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw tda::ConfigError(std::string(flag) + " must be a count or \"auto\": " + text);
    }
}

/// Grid syntax: "m=10,15,20,tau=2,5".
std::vector<std::pair<std::size_t, std::size_t>> parse_grid(const std::string& text) {
    auto tau_pos = text.find("tau=");
    if (text.rfind("m=", 0) != 0 || tau_pos == std::string::npos)
        throw tda::ConfigError("--grid must look like m=10,15,tau=2,5");
    auto split_counts = [](const std::string& list) {
        std::vector<std::size_t> out;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoul(item)));
        return out;
    };
    std::string m_part = text.substr(2, tau_pos - 2);
    while (!m_part.empty() && (m_part.back() == ',' || m_part.back() == ';')) m_part.pop_back();
    auto ms = split_counts(m_part);
    auto taus = split_counts(text.substr(tau_pos + 4));
    if (ms.empty() || taus.empty()) throw tda::ConfigError("--grid lists must be nonempty");
    std::vector<std::pair<std::size_t, std::size_t>> grid;
    for (auto m : ms)
        for (auto tau : taus) grid.emplace_back(m, tau);
    return grid;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw tda::ConfigError("cannot open file for writing: " + path);
    out << text << '\n';
}

void write_series_csv(const tda::TimeSeries& x, const std::string& path) {
    std::ostringstream body;
    body.precision(17);
    for (double v : x.values) body << v << '\n';
    std::string text = body.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    write_text(path, text);
}

struct PipelineFlags {
    std::string config_path;
    std::string m_text = "25", tau_text = "5";
    std::size_t pca_dims = 3;
    bool center = false;
    int n_dim = 2;
    double d_max = 1.0;
    std::string summary = "landscape";
    std::size_t order = 1;
    double q = 1.0;
    double kappa = 0.05;
    bool concat = true;
    std::size_t simplex_cap = 5'000'000;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--config", f.config_path, "pipeline config JSON; flags override it");
    cmd->add_option("--m", f.m_text, "window dimension, or \"auto\"");
    cmd->add_option("--tau", f.tau_text, "delay in samples, or \"auto\"");
    cmd->add_option("--pca-dims", f.pca_dims, "PCA target dimension l");
    cmd->add_flag("--center", f.center, "mean-center before PCA");
    cmd->add_option("--ndim", f.n_dim, "maximum homology dimension");
    cmd->add_option("--dmax", f.d_max, "Rips diameter cutoff");
    cmd->add_option("--summary", f.summary, "landscape or silhouette");
    cmd->add_option("--order", f.order, "landscape order j");
    cmd->add_option("--q", f.q, "silhouette power weight");
    cmd->add_option("--kappa", f.kappa, "grid resolution");
    cmd->add_flag("--concat,!--no-concat", f.concat, "emit one concatenated vector");
    cmd->add_option("--simplex-cap", f.simplex_cap, "simplex budget");
}

tda::PipelineConfig resolve_pipeline(const CLI::App* cmd, const PipelineFlags& f) {
    tda::PipelineConfig cfg;
    const bool no_file = f.config_path.empty();
    if (!no_file) cfg = tda::PipelineConfig::load_json(f.config_path);
    auto passed = [&](const char* name) { return cmd->count(name) > 0; };
    if (passed("--m") || no_file) cfg.m = parse_count_or_auto(f.m_text, "--m");
    if (passed("--tau") || no_file) cfg.tau = parse_count_or_auto(f.tau_text, "--tau");
    if (passed("--pca-dims") || no_file) cfg.pca_dims = f.pca_dims;
    if (passed("--center")) cfg.center = f.center;
    if (passed("--ndim") || no_file) cfg.n_dim = f.n_dim;
    if (passed("--dmax") || no_file) cfg.d_max = f.d_max;
    if (passed("--summary") || no_file) cfg.summary = tda::parse_summary_kind(f.summary);
    if (passed("--order") || no_file) cfg.order = f.order;
    if (passed("--q") || no_file) cfg.q = f.q;
    if (passed("--kappa") || no_file) cfg.kappa = f.kappa;
    if (passed("--concat") || passed("--no-concat")) cfg.concat = f.concat;
    if (passed("--simplex-cap") || no_file) cfg.simplex_cap = f.simplex_cap;
    cfg.validate();
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"Topological time-series featurization"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "synthesize a sequence from a seeded model");
    std::string gen_kind = "arima112", gen_params, gen_out = "-";
    std::size_t gen_n = 250;
    std::uint64_t gen_seed = 0;
    double gen_dt = 1.0;
    gen->add_option("--kind", gen_kind, "arima112 | sinusoid | ou")->required();
    gen->add_option("--n", gen_n, "sample count")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--params", gen_params, "comma-separated key=value overrides");
    gen->add_option("--dt", gen_dt, "sampling interval");
    gen->add_option("--out", gen_out, "output CSV (one value per line); - for stdout");

    auto* feat = app.add_subcommand("featurize",
                                    "run the embedding -> PCA -> Rips -> summary pipeline");
    PipelineFlags ff;
    std::vector<std::string> feat_in;
    std::string feat_column = "0", feat_out = "-", feat_format = "json";
    std::string feat_plot, feat_diagram, feat_diagram_csv, feat_cloud, feat_pca;
    double feat_dt = 1.0;
    feat->add_option("--in", feat_in,
                     "input CSV; repeat for multivariate concatenation in input order")
        ->required();
    feat->add_option("--column", feat_column, "value column name or 0-based index");
    feat->add_option("--dt", feat_dt, "sampling interval of the CSV");
    add_pipeline_flags(feat, ff);
    feat->add_option("--out", feat_out, "feature vector output; - for stdout");
    feat->add_option("--format", feat_format, "csv or json");
    feat->add_option("--plot-out", feat_plot, "grid (t,value,dim) CSV for plotting");
    feat->add_option("--diagram-out", feat_diagram, "persistence diagram JSON");
    feat->add_option("--diagram-csv", feat_diagram_csv, "diagram as (birth,death,dim) CSV");
    feat->add_option("--cloud-out", feat_cloud, "post-PCA point cloud CSV");
    feat->add_option("--pca-out", feat_pca, "PCA spectrum JSON");

    auto* stab = app.add_subcommand("stability-test",
                                    "empirically verify the sampling stability bounds");
    std::string stab_config, stab_out = "report.json";
    stab->add_option("--config", stab_config, "stability config JSON")->required();
    stab->add_option("--out", stab_out, "report JSON path");

    auto* demo = app.add_subcommand("classify-demo",
                                    "three-model classification with k-NN on TDA features");
    PipelineFlags df;
    std::size_t demo_seqs = 150, demo_n = 250, demo_k = 5;
    double demo_frac = 0.8;
    std::uint64_t demo_seed = 0;
    std::string demo_grid, demo_out = "-";
    demo->add_option("--sequences-per-class", demo_seqs, "sequences per model");
    demo->add_option("--n", demo_n, "samples per sequence");
    demo->add_option("--knn", demo_k, "k for the k-NN baseline");
    demo->add_option("--train-fraction", demo_frac, "train split fraction");
    demo->add_option("--seed", demo_seed, "experiment seed");
    demo->add_option("--grid", demo_grid, "(m, tau) candidates, e.g. m=15,25,tau=3,5");
    add_pipeline_flags(demo, df);
    demo->add_option("--out", demo_out, "report JSON; - for stdout");

    auto* bot = app.add_subcommand("bottleneck", "bottleneck distance between two diagram files");
    std::string bot_a, bot_b;
    int bot_dim = 0;
    bot->add_option("--a", bot_a, "first diagram JSON")->required();
    bot->add_option("--b", bot_b, "second diagram JSON")->required();
    bot->add_option("--dim", bot_dim, "homology dimension");

    auto* lab = app.add_subcommand("label-patterns", "price-pattern labels over rolling windows");
    std::string lab_in, lab_column = "0", lab_out = "-", lab_balance;
    double lab_dt = 1.0, lab_alpha = 0.1;
    std::size_t lab_k = 6, lab_train = 336, lab_test = 24;
    lab->add_option("--in", lab_in, "price CSV")->required();
    lab->add_option("--column", lab_column, "price column name or index");
    lab->add_option("--dt", lab_dt, "sampling interval");
    lab->add_option("--k", lab_k, "pattern horizon");
    lab->add_option("--alpha", lab_alpha, "rare-event tail mass");
    lab->add_option("--train", lab_train, "training window length");
    lab->add_option("--test", lab_test, "test window length");
    lab->add_option("--out", lab_out, "labels CSV; - for stdout");
    lab->add_option("--balance-out", lab_balance, "aggregate class-balance JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        tda::GeneratorSpec spec;
        spec.kind = tda::parse_generator_kind(gen_kind);
        spec.n = gen_n;
        spec.seed = env_seed_override().value_or(gen_seed);
        spec.dt = gen_dt;
        spec.params = parse_params(gen_params);
        write_series_csv(tda::generate(spec), gen_out);
        return 0;
    }

    if (feat->parsed()) {
        tda::PipelineConfig cfg = resolve_pipeline(feat, ff);
        // Multivariate: featurize each series and concatenate in input order.
        std::vector<tda::PipelineOutput> outputs;
        for (const auto& path : feat_in)
            outputs.push_back(tda::featurize_full(cfg, tda::load_csv(path, feat_column, feat_dt)));
        const tda::PipelineOutput& first = outputs.front();

        std::string rendered;
        if (feat_format == "csv") {
            std::ostringstream row;
            row.precision(17);
            bool any = false;
            for (const auto& out : outputs) {
                if (!cfg.concat && outputs.size() == 1) {
                    // one line per homology dimension
                    for (std::size_t b = 0; b < out.features.dims.size(); ++b) {
                        for (std::size_t i = 0; i < out.features.block_size(); ++i) {
                            if (i > 0) row << ',';
                            row << out.features.values[b * out.features.block_size() + i];
                        }
                        row << '\n';
                    }
                } else {
                    for (double v : out.features.values) {
                        if (any) row << ',';
                        row << v;
                        any = true;
                    }
                }
            }
            rendered = row.str();
            if (!rendered.empty() && rendered.back() == '\n') rendered.pop_back();
        } else if (outputs.size() == 1) {
            rendered = first.features.to_json();
        } else {
            nlohmann::json j;
            j["inputs"] = feat_in;
            j["spec"] = nlohmann::json::parse(first.features.to_json())["spec"];
            std::vector<double> combined;
            for (const auto& out : outputs)
                combined.insert(combined.end(), out.features.values.begin(),
                                out.features.values.end());
            j["values"] = combined;
            rendered = j.dump(2);
        }
        write_text(feat_out, rendered);

        if (!feat_plot.empty()) tda::write_feature_plot_csv(first.features, feat_plot);
        if (!feat_diagram.empty()) first.diagram.save_json(feat_diagram);
        if (!feat_diagram_csv.empty()) tda::write_diagram_csv(first.diagram, feat_diagram_csv);
        if (!feat_cloud.empty()) first.cloud.write_csv(feat_cloud);
        if (!feat_pca.empty()) {
            nlohmann::json j{{"l", first.pca.l},
                             {"centered", first.pca.centered},
                             {"eigenvalues", first.pca.eigenvalues},
                             {"explained", first.pca.explained}};
            write_text(feat_pca, j.dump(2));
        }
        return 0;
    }

    if (stab->parsed()) {
        std::ifstream in(stab_config);
        if (!in) throw tda::ConfigError("cannot open config file: " + stab_config);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        tda::StabilityConfig cfg = tda::stability_config_from_json(text);
        if (auto seed = env_seed_override()) cfg.seed = *seed;
        tda::StabilityReport report = tda::run_stability_suite(cfg);
        report.save_json(stab_out);
        std::cout << (report.all_pass ? "all trials within bound" : "BOUND VIOLATION")
                  << "; worst observed/bound = " << report.max_ratio << '\n';
        return 0;
    }

    if (demo->parsed()) {
        tda::ClassifyDemoConfig cfg;
        cfg.sequences_per_class = demo_seqs;
        cfg.n = demo_n;
        cfg.knn_k = demo_k;
        cfg.train_fraction = demo_frac;
        cfg.seed = env_seed_override().value_or(demo_seed);
        cfg.pipeline = resolve_pipeline(demo, df);
        if (!demo_grid.empty()) cfg.grid = parse_grid(demo_grid);
        tda::ClassifyReport report = tda::classify_demo(cfg);
        write_text(demo_out, report.to_json());
        return 0;
    }

    if (bot->parsed()) {
        auto a = tda::PersistenceDiagram::load_json(bot_a);
        auto b = tda::PersistenceDiagram::load_json(bot_b);
        double d = tda::bottleneck(a, b, bot_dim);
        if (d == tda::kInfiniteDeath)
            std::cout << "inf\n";
        else
            std::cout << std::setprecision(17) << d << '\n';
        return 0;
    }

    if (lab->parsed()) {
        tda::TimeSeries prices = tda::load_csv(lab_in, lab_column, lab_dt);
        auto windows = tda::rolling_windows(prices.size(), lab_train, lab_test);
        tda::PatternConfig pcfg{lab_k, lab_alpha};
        std::ostringstream body;
        body << "window,t,split,p1,p2,p3,p4\n";
        for (std::size_t w = 0; w < windows.size(); ++w)
            for (const auto& row : tda::label_window(prices, windows[w], pcfg))
                body << w << ',' << row.t << ',' << (row.test ? "test" : "train") << ','
                     << row.p1 << ',' << row.p2 << ',' << row.p3 << ',' << row.p4 << '\n';
        std::string text = body.str();
        text.pop_back();
        write_text(lab_out, text);
        if (!lab_balance.empty()) {
            auto balance = tda::pattern_balance(prices, windows, pcfg);
            nlohmann::json j;
            const char* names[4] = {"p1", "p2", "p3", "p4"};
            for (std::size_t p = 0; p < 4; ++p) j[names[p]] = balance[p];
            j["windows"] = windows.size();
            write_text(lab_balance, j.dump(2));
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tda::ComputationError& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 3;
    } catch (const tda::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
