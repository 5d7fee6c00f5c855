#ifndef TDA_LABELS_HPP
#define TDA_LABELS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tda/timeseries.hpp"

namespace tda {

/// Rolling train/test protocol: [train_begin, train_end) then
/// [train_end, test_end), advanced by the test length each step.
struct Window {
    std::size_t train_begin = 0;
    std::size_t train_end = 0;
    std::size_t test_end = 0;
};

std::vector<Window> rolling_windows(std::size_t total_len, std::size_t n_training,
                                    std::size_t n_test);

/// Price-pattern labelling over a horizon of k steps. Thresholds are fitted
/// on each window's training returns: terciles for the 3-class patterns,
/// alpha-tail quantiles for the rare jump/drop patterns.
struct PatternConfig {
    std::size_t k = 6;
    double alpha = 0.1;
};

/// Labels at one time position. 3-class patterns use 0=down, 1=neutral, 2=up;
/// binary patterns use 0=absent, 1=occurs.
struct PatternLabels {
    std::size_t t = 0;
    int p1 = 0; // direction of the next single-step return
    int p2 = 0; // rare jump within (t, t+k]
    int p3 = 0; // rare drop within (t, t+k]
    int p4 = 0; // direction of the moving-average slope over [t, t+k]
    bool test = false;
};

/// Labels for every position of one rolling window (train and test parts),
/// with thresholds from the training part.
std::vector<PatternLabels> label_window(const TimeSeries& prices, const Window& window,
                                        const PatternConfig& cfg);

/// Aggregate class frequencies per pattern over the training positions of all
/// windows: index [pattern][class], patterns ordered P1..P4.
std::array<std::array<double, 3>, 4> pattern_balance(const TimeSeries& prices,
                                                     const std::vector<Window>& windows,
                                                     const PatternConfig& cfg);

/// Linear-interpolation quantile of a sample (p in [0, 1]).
double quantile(std::vector<double> values, double p);

/// Generic rolling evaluation: features[t] and a 4-pattern label row per
/// position; fits k-NN per window on the training positions and returns the
/// test error rate per pattern.
struct RollingEvalResult {
    std::array<double, 4> test_error{};
    std::size_t windows_evaluated = 0;
};

RollingEvalResult rolling_evaluate(
    const TimeSeries& prices, const std::vector<Window>& windows, const PatternConfig& cfg,
    const std::function<std::vector<double>(std::size_t)>& feature_at, std::size_t knn_k);

} // namespace tda

#endif
