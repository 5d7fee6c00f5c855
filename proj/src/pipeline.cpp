#include "tda/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tda/errors.hpp"

namespace tda {

SummarySpec PipelineConfig::summary_spec() const {
    SummarySpec spec;
    spec.kind = summary;
    spec.order = order;
    spec.q = q;
    spec.kappa = kappa;
    spec.d_max = d_max;
    spec.scale = FiltrationScale::Diameter;
    return spec;
}

void PipelineConfig::validate() const {
    if (pca_dims < 1) throw ConfigError("pipeline: pca_dims must be >= 1");
    if (n_dim < 0) throw ConfigError("pipeline: n_dim must be >= 0");
    if (!(d_max > 0.0)) throw ConfigError("pipeline: d_max must be > 0");
    summary_spec().validate();
}

std::string PipelineConfig::to_json() const {
    nlohmann::json j;
    j["version"] = 1;
    j["m"] = m;
    j["tau"] = tau;
    j["pca_dims"] = pca_dims;
    j["center"] = center;
    j["n_dim"] = n_dim;
    j["d_max"] = d_max;
    j["summary"] = {{"kind", tda::to_string(summary)},
                    {"order", order},
                    {"q", q},
                    {"kappa", kappa}};
    j["concat"] = concat;
    j["simplex_cap"] = simplex_cap;
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid pipeline config JSON: ") + e.what());
    }
    if (j.contains("version") && j["version"].get<int>() != 1)
        throw ConfigError("unsupported pipeline config version");
    PipelineConfig cfg;
    auto size_or_auto = [&](const char* key, std::size_t fallback) -> std::size_t {
        if (!j.contains(key)) return fallback;
        if (j[key].is_string()) {
            if (j[key].get<std::string>() == "auto") return 0;
            throw ConfigError(std::string("pipeline config: ") + key + " must be a count or \"auto\"");
        }
        return j[key].get<std::size_t>();
    };
    cfg.m = size_or_auto("m", cfg.m);
    cfg.tau = size_or_auto("tau", cfg.tau);
    cfg.pca_dims = j.value("pca_dims", cfg.pca_dims);
    cfg.center = j.value("center", cfg.center);
    cfg.n_dim = j.value("n_dim", cfg.n_dim);
    cfg.d_max = j.value("d_max", cfg.d_max);
    if (j.contains("summary")) {
        const auto& js = j["summary"];
        cfg.summary = parse_summary_kind(js.value("kind", "landscape"));
        cfg.order = js.value("order", cfg.order);
        cfg.q = js.value("q", cfg.q);
        cfg.kappa = js.value("kappa", cfg.kappa);
    }
    cfg.concat = j.value("concat", cfg.concat);
    cfg.simplex_cap = j.value("simplex_cap", cfg.simplex_cap);
    cfg.validate();
    return cfg;
}

PipelineConfig PipelineConfig::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

namespace {

template <typename F>
auto run_step(const char* label, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ComputationError& e) {
        throw ComputationError(std::string("featurize[") + label + "]: " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("featurize[") + label + "]: " + e.what());
    }
}

EmbeddingParams resolve_embedding(const PipelineConfig& config, const TimeSeries& x) {
    EmbeddingParams p;
    p.tau = config.tau;
    if (p.tau == 0) {
        std::size_t max_lag = std::max<std::size_t>(1, std::min<std::size_t>(x.size() / 4, 100));
        p.tau = estimate_delay_acf(x, max_lag);
    }
    p.m = config.m;
    if (p.m == 0) {
        // Probe with the widest feasible window up to 25, then take m > 2*d0
        // from the probe cloud's singular spectrum.
        std::size_t m_max = (x.size() - 1) / p.tau + 1;
        std::size_t m_probe = std::min<std::size_t>(25, m_max);
        if (m_probe < 1) m_probe = 1;
        PointCloud probe = sliding_window_embed(x, {m_probe, p.tau});
        std::size_t d0 = estimate_embedding_dim(probe, 0.99);
        p.m = std::min(2 * d0 + 1, m_max);
    }
    return p;
}

} // namespace

PipelineOutput featurize_full(const PipelineConfig& config, const TimeSeries& x) {
    config.validate();
    PipelineOutput out;
    out.embedding = run_step("embed", [&] { return resolve_embedding(config, x); });
    PointCloud trajectory =
        run_step("embed", [&] { return sliding_window_embed(x, out.embedding); });
    if (config.pca_dims > trajectory.d())
        throw ConfigError("featurize[pca]: pca_dims = " + std::to_string(config.pca_dims) +
                          " exceeds the embedding dimension m = " + std::to_string(trajectory.d()));
    out.pca = run_step("pca", [&] { return pca_project(trajectory, config.pca_dims, config.center); });
    out.cloud = out.pca.projected;
    RipsOptions opts;
    opts.simplex_cap = config.simplex_cap;
    out.diagram = run_step("rips", [&] {
        return rips_persistence(distance_matrix(out.cloud), config.n_dim, config.d_max, opts);
    });
    PersistenceDiagram truncated =
        run_step("truncate", [&] { return truncate_infinite(out.diagram, config.d_max); });
    out.features = run_step("vectorize", [&] { return vectorize(truncated, config.summary_spec()); });
    out.features.concatenated = config.concat;
    return out;
}

FeatureVector featurize(const PipelineConfig& config, const TimeSeries& x) {
    return featurize_full(config, x).features;
}

void write_feature_plot_csv(const FeatureVector& fv, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << "t,value,dim\n";
    out.precision(17);
    const std::size_t grid = fv.block_size();
    for (std::size_t b = 0; b < fv.dims.size(); ++b)
        for (std::size_t i = 0; i < grid; ++i)
            out << fv.spec.grid_point(i) << ',' << fv.values[b * grid + i] << ',' << fv.dims[b]
                << '\n';
}

void write_diagram_csv(const PersistenceDiagram& dgm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << "birth,death,dim\n";
    out.precision(17);
    for (const auto& p : dgm.pairs) {
        out << p.birth << ',';
        if (p.is_infinite())
            out << "inf";
        else
            out << p.death;
        out << ',' << p.dim << '\n';
    }
}

} // namespace tda
