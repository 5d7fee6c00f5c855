#include "tda/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "tda/errors.hpp"
#include "tda/rng.hpp"
#include "tda/timeseries.hpp"

namespace tda {

namespace {

constexpr int kNumClasses = 3;

// Embedded row norm after per-sequence standardization. The raw generators
// emit series whose trajectory clouds sit far outside the d_max = 1 horizon;
// rescaling each sequence so windows have norm ~ kEmbeddingRadius puts the
// attractor geometry inside the filtration range while keeping the complex
// sparse enough for the simplex budget.
constexpr double kEmbeddingRadius = 2.5;

GeneratorKind class_kind(int label) {
    switch (label) {
    case 0: return GeneratorKind::Arima112;
    case 1: return GeneratorKind::CompositeSinusoid;
    default: return GeneratorKind::OrnsteinUhlenbeck;
    }
}

TimeSeries normalize_for_embedding(TimeSeries x, std::size_t m) {
    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    double sd = std::sqrt(var);
    double scale =
        sd > 0.0 ? kEmbeddingRadius / (sd * std::sqrt(static_cast<double>(m))) : 1.0;
    for (auto& v : x.values) v = (v - mean) * scale;
    return x;
}

struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    std::vector<double> h1_mass;
};

Dataset build_dataset(const ClassifyDemoConfig& cfg, const PipelineConfig& pipeline) {
    Dataset data;
    for (int label = 0; label < kNumClasses; ++label) {
        for (std::size_t i = 0; i < cfg.sequences_per_class; ++i) {
            GeneratorSpec spec;
            spec.kind = class_kind(label);
            spec.n = cfg.n;
            spec.seed = derive_stream(cfg.seed, static_cast<std::uint64_t>(label) *
                                                        cfg.sequences_per_class +
                                                    i);
            TimeSeries x = normalize_for_embedding(generate(spec), pipeline.m);
            FeatureVector fv = featurize(pipeline, x);
            double mass = 0.0;
            if (pipeline.n_dim >= 1) {
                auto h1 = fv.block(1);
                mass = std::accumulate(h1.begin(), h1.end(), 0.0) /
                       static_cast<double>(h1.size());
            }
            data.features.push_back(fv.values);
            data.labels.push_back(label);
            data.h1_mass.push_back(mass);
        }
    }
    return data;
}

double evaluate(const std::vector<std::vector<double>>& train_x, const std::vector<int>& train_y,
                const std::vector<std::vector<double>>& test_x, const std::vector<int>& test_y,
                std::size_t k, std::array<std::array<std::size_t, 3>, 3>* confusion) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_x.size(); ++i) {
        int predicted = knn_predict(train_x, train_y, test_x[i], k, kNumClasses);
        if (confusion)
            ++(*confusion)[static_cast<std::size_t>(test_y[i])][static_cast<std::size_t>(predicted)];
        if (predicted == test_y[i]) ++correct;
    }
    return test_x.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test_x.size());
}

} // namespace

void ClassifyDemoConfig::validate() const {
    if (sequences_per_class < 1) throw ConfigError("classify-demo: sequences_per_class must be >= 1");
    if (n < 2) throw ConfigError("classify-demo: n must be >= 2");
    if (knn_k < 1) throw ConfigError("classify-demo: knn k must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("classify-demo: train_fraction must lie in (0, 1)");
    const auto n_train =
        static_cast<std::size_t>(train_fraction * static_cast<double>(sequences_per_class));
    if (n_train < 1)
        throw ConfigError("classify-demo: train split is empty; raise sequences_per_class "
                          "or train_fraction");
    if (n_train >= sequences_per_class)
        throw ConfigError("classify-demo: test split is empty; lower train_fraction or raise "
                          "sequences_per_class");
    if (pipeline.m == 0 && grid.empty())
        throw ConfigError("classify-demo: the sequence normalization needs an explicit m");
    pipeline.validate();
}

int knn_predict(const std::vector<std::vector<double>>& train_x, const std::vector<int>& train_y,
                const std::vector<double>& query, std::size_t k, int num_classes) {
    if (train_x.empty()) throw ConfigError("knn: empty training set");
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(train_x.size());
    for (std::size_t i = 0; i < train_x.size(); ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            double diff = train_x[i][j] - query[j];
            sq += diff * diff;
        }
        by_distance.emplace_back(sq, i);
    }
    std::size_t kk = std::min(k, by_distance.size());
    std::partial_sort(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(kk),
                      by_distance.end());
    std::vector<std::size_t> votes(static_cast<std::size_t>(num_classes), 0);
    for (std::size_t i = 0; i < kk; ++i)
        ++votes[static_cast<std::size_t>(train_y[by_distance[i].second])];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

ClassifyReport classify_demo(const ClassifyDemoConfig& cfg) {
    cfg.validate();

    // Per-class seeded shuffle for the train/test split; shared across grid
    // candidates so model selection sees a fixed validation set.
    const auto n_train =
        static_cast<std::size_t>(cfg.train_fraction * static_cast<double>(cfg.sequences_per_class));
    std::vector<std::size_t> order(cfg.sequences_per_class);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(cfg.seed, 0x5EEDULL);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[shuffle_rng.below(i)]);

    auto split = [&](const Dataset& data) {
        Dataset train, test;
        for (int label = 0; label < kNumClasses; ++label) {
            for (std::size_t rank = 0; rank < cfg.sequences_per_class; ++rank) {
                std::size_t idx = static_cast<std::size_t>(label) * cfg.sequences_per_class +
                                  order[rank];
                Dataset& dst = rank < n_train ? train : test;
                dst.features.push_back(data.features[idx]);
                dst.labels.push_back(data.labels[idx]);
                dst.h1_mass.push_back(data.h1_mass[idx]);
            }
        }
        return std::pair<Dataset, Dataset>(std::move(train), std::move(test));
    };

    // Optional (m, tau) grid search scored by validation accuracy on a split
    // of the training set only.
    PipelineConfig pipeline = cfg.pipeline;
    ClassifyReport report;
    if (!cfg.grid.empty()) {
        double best_acc = -1.0;
        for (const auto& [m, tau] : cfg.grid) {
            PipelineConfig candidate = cfg.pipeline;
            candidate.m = m;
            candidate.tau = tau;
            Dataset data = build_dataset(cfg, candidate);
            auto [train, test] = split(data);
            (void)test;
            std::size_t n_sub = std::max<std::size_t>(1, train.features.size() * 3 / 4);
            if (n_sub == train.features.size()) n_sub = train.features.size() - 1;
            std::vector<std::vector<double>> sub_x(train.features.begin(),
                                                   train.features.begin() + static_cast<std::ptrdiff_t>(n_sub));
            std::vector<int> sub_y(train.labels.begin(),
                                   train.labels.begin() + static_cast<std::ptrdiff_t>(n_sub));
            std::vector<std::vector<double>> val_x(train.features.begin() + static_cast<std::ptrdiff_t>(n_sub),
                                                   train.features.end());
            std::vector<int> val_y(train.labels.begin() + static_cast<std::ptrdiff_t>(n_sub),
                                   train.labels.end());
            double acc = evaluate(sub_x, sub_y, val_x, val_y, cfg.knn_k, nullptr);
            if (acc > best_acc) {
                best_acc = acc;
                pipeline = candidate;
            }
        }
    }

    Dataset data = build_dataset(cfg, pipeline);
    auto [train, test] = split(data);

    report.accuracy = evaluate(train.features, train.labels, test.features, test.labels,
                               cfg.knn_k, &report.confusion);
    report.error_rate = 1.0 - report.accuracy;
    report.chosen_m = pipeline.m;
    report.chosen_tau = pipeline.tau;
    report.class_names = {"arima112", "composite-sinusoid", "ornstein-uhlenbeck"};

    std::array<double, 3> mass_sum{};
    std::array<std::size_t, 3> mass_count{};
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        mass_sum[static_cast<std::size_t>(data.labels[i])] += data.h1_mass[i];
        ++mass_count[static_cast<std::size_t>(data.labels[i])];
    }
    for (std::size_t c = 0; c < 3; ++c)
        report.mean_h1_landscape_mass[c] =
            mass_count[c] ? mass_sum[c] / static_cast<double>(mass_count[c]) : 0.0;
    return report;
}

std::string ClassifyReport::to_json() const {
    nlohmann::json j;
    j["accuracy"] = accuracy;
    j["error_rate"] = error_rate;
    j["classes"] = class_names;
    j["confusion"] = confusion;
    j["mean_h1_landscape_mass"] = mean_h1_landscape_mass;
    j["chosen_m"] = chosen_m;
    j["chosen_tau"] = chosen_tau;
    return j.dump(2);
}

void ClassifyReport::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << to_json() << '\n';
}

} // namespace tda
