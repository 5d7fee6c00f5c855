#include "tda/labels.hpp"

#include <algorithm>
#include <cmath>

#include "tda/classify.hpp"
#include "tda/errors.hpp"

namespace tda {

std::vector<Window> rolling_windows(std::size_t total_len, std::size_t n_training,
                                    std::size_t n_test) {
    if (n_training < 2 || n_test < 1)
        throw ConfigError("rolling windows require n_training >= 2 and n_test >= 1");
    std::vector<Window> out;
    for (std::size_t start = 0; start + n_training + n_test <= total_len; start += n_test)
        out.push_back({start, start + n_training, start + n_training + n_test});
    if (out.empty())
        throw ConfigError("series too short for even one train+test window (" +
                          std::to_string(total_len) + " < " +
                          std::to_string(n_training + n_test) + ")");
    return out;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw ConfigError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values[0];
    double pos = p * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

namespace {

/// r[t] = return from price t-1 to t, defined for t >= 1.
std::vector<double> simple_returns(const TimeSeries& prices) {
    std::vector<double> r(prices.size(), 0.0);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        double prev = prices.values[t - 1];
        if (prev == 0.0)
            throw ConfigError("zero price at index " + std::to_string(t - 1) +
                              "; pattern labels are undefined");
        r[t] = (prices.values[t] - prev) / prev;
    }
    return r;
}

/// Moving average of the k prices ending at t (shorter prefix at the start).
std::vector<double> moving_average(const TimeSeries& prices, std::size_t k) {
    std::vector<double> ma(prices.size(), 0.0);
    double acc = 0.0;
    for (std::size_t t = 0; t < prices.size(); ++t) {
        acc += prices.values[t];
        if (t >= k) acc -= prices.values[t - k];
        ma[t] = acc / static_cast<double>(std::min(t + 1, k));
    }
    return ma;
}

int tercile_class(double v, double lo, double hi) {
    if (v <= lo) return 0;
    if (v > hi) return 2;
    return 1;
}

struct Thresholds {
    double r_lo = 0.0, r_hi = 0.0;     // P1 terciles of returns
    double jump = 0.0;                 // P2 (1-alpha) return quantile
    double drop = 0.0;                 // P3 alpha return quantile
    double s_lo = 0.0, s_hi = 0.0;     // P4 terciles of MA slopes
};

} // namespace

std::vector<PatternLabels> label_window(const TimeSeries& prices, const Window& window,
                                        const PatternConfig& cfg) {
    prices.validate();
    if (cfg.k < 1) throw ConfigError("pattern horizon k must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5))
        throw ConfigError("pattern alpha must lie in (0, 0.5)");
    if (window.test_end > prices.size())
        throw ConfigError("window extends beyond the price series");

    const auto r = simple_returns(prices);
    const auto ma = moving_average(prices, cfg.k);
    auto slope_at = [&](std::size_t t) {
        return (ma[t + cfg.k] - ma[t]) / static_cast<double>(cfg.k);
    };

    // A position t is usable when the full horizon (t, t+k] stays inside the
    // window's data.
    auto last_usable = [&](std::size_t end) { return end > cfg.k ? end - cfg.k : 0; };

    Thresholds th;
    {
        std::vector<double> train_returns, train_slopes;
        for (std::size_t t = window.train_begin + 1; t < window.train_end; ++t)
            train_returns.push_back(r[t]);
        for (std::size_t t = window.train_begin; t < last_usable(window.train_end); ++t)
            train_slopes.push_back(slope_at(t));
        if (train_returns.empty() || train_slopes.empty())
            throw ConfigError("training window too short for pattern thresholds");
        th.r_lo = quantile(train_returns, 1.0 / 3.0);
        th.r_hi = quantile(train_returns, 2.0 / 3.0);
        th.jump = quantile(train_returns, 1.0 - cfg.alpha);
        th.drop = quantile(train_returns, cfg.alpha);
        th.s_lo = quantile(train_slopes, 1.0 / 3.0);
        th.s_hi = quantile(train_slopes, 2.0 / 3.0);
    }

    std::vector<PatternLabels> out;
    for (std::size_t t = window.train_begin; t < last_usable(window.test_end); ++t) {
        PatternLabels row;
        row.t = t;
        row.test = t >= window.train_end;
        row.p1 = tercile_class(r[t + 1], th.r_lo, th.r_hi);
        double worst_up = r[t + 1], worst_down = r[t + 1];
        for (std::size_t s = t + 1; s <= t + cfg.k; ++s) {
            worst_up = std::max(worst_up, r[s]);
            worst_down = std::min(worst_down, r[s]);
        }
        row.p2 = worst_up > th.jump ? 1 : 0;
        row.p3 = worst_down < th.drop ? 1 : 0;
        row.p4 = tercile_class(slope_at(t), th.s_lo, th.s_hi);
        out.push_back(row);
    }
    return out;
}

std::array<std::array<double, 3>, 4> pattern_balance(const TimeSeries& prices,
                                                     const std::vector<Window>& windows,
                                                     const PatternConfig& cfg) {
    std::array<std::array<double, 3>, 4> counts{};
    std::size_t total = 0;
    for (const auto& w : windows) {
        for (const auto& row : label_window(prices, w, cfg)) {
            if (row.test) continue;
            ++counts[0][static_cast<std::size_t>(row.p1)];
            ++counts[1][static_cast<std::size_t>(row.p2)];
            ++counts[2][static_cast<std::size_t>(row.p3)];
            ++counts[3][static_cast<std::size_t>(row.p4)];
            ++total;
        }
    }
    if (total == 0) throw ConfigError("no labelled training positions");
    for (auto& pattern : counts)
        for (auto& c : pattern) c /= static_cast<double>(total);
    return counts;
}

RollingEvalResult rolling_evaluate(
    const TimeSeries& prices, const std::vector<Window>& windows, const PatternConfig& cfg,
    const std::function<std::vector<double>(std::size_t)>& feature_at, std::size_t knn_k) {
    RollingEvalResult result;
    std::array<std::size_t, 4> wrong{};
    std::size_t tested = 0;
    for (const auto& w : windows) {
        auto rows = label_window(prices, w, cfg);
        std::vector<std::vector<double>> train_x;
        std::array<std::vector<int>, 4> train_y;
        std::vector<const PatternLabels*> test_rows;
        std::vector<std::vector<double>> test_x;
        for (const auto& row : rows) {
            if (row.test) {
                test_rows.push_back(&row);
                test_x.push_back(feature_at(row.t));
            } else {
                train_x.push_back(feature_at(row.t));
                train_y[0].push_back(row.p1);
                train_y[1].push_back(row.p2);
                train_y[2].push_back(row.p3);
                train_y[3].push_back(row.p4);
            }
        }
        if (train_x.empty() || test_x.empty()) continue;
        for (std::size_t i = 0; i < test_x.size(); ++i) {
            const PatternLabels& row = *test_rows[i];
            const std::array<int, 4> truth{row.p1, row.p2, row.p3, row.p4};
            for (std::size_t pat = 0; pat < 4; ++pat) {
                int num_classes = pat == 1 || pat == 2 ? 2 : 3;
                int pred = knn_predict(train_x, train_y[pat], test_x[i], knn_k, num_classes);
                if (pred != truth[pat]) ++wrong[pat];
            }
        }
        tested += test_x.size();
        ++result.windows_evaluated;
    }
    if (tested == 0) throw ConfigError("rolling evaluation produced no test positions");
    for (std::size_t pat = 0; pat < 4; ++pat)
        result.test_error[pat] = static_cast<double>(wrong[pat]) / static_cast<double>(tested);
    return result;
}

} // namespace tda
