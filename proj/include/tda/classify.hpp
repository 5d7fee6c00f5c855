#ifndef TDA_CLASSIFY_HPP
#define TDA_CLASSIFY_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tda/pipeline.hpp"

namespace tda {

/// Stochastic-model classification demo: synthesize labeled sequences from
/// the three generator families, featurize them, and score a k-NN baseline.
/// Each sequence is standardized and rescaled so its embedded windows have
/// O(1) norm before featurization, putting the attractor geometry inside the
/// d_max horizon.
struct ClassifyDemoConfig {
    std::size_t sequences_per_class = 150;
    std::size_t n = 250; // samples per sequence
    std::size_t knn_k = 5;
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    PipelineConfig pipeline;
    std::vector<std::pair<std::size_t, std::size_t>> grid; // optional (m, tau) candidates

    void validate() const;
};

struct ClassifyReport {
    std::array<std::array<std::size_t, 3>, 3> confusion{}; // [true][predicted]
    double accuracy = 0.0;
    double error_rate = 1.0;
    std::array<double, 3> mean_h1_landscape_mass{}; // per class, train+test
    std::size_t chosen_m = 0;
    std::size_t chosen_tau = 0;
    std::vector<std::string> class_names;

    std::string to_json() const;
    void save_json(const std::string& path) const;
};

/// Majority-vote k-nearest-neighbor prediction with deterministic tie
/// breaking (smaller distance, then smaller index; smaller label on vote ties).
int knn_predict(const std::vector<std::vector<double>>& train_x, const std::vector<int>& train_y,
                const std::vector<double>& query, std::size_t k, int num_classes);

ClassifyReport classify_demo(const ClassifyDemoConfig& cfg);

} // namespace tda

#endif
