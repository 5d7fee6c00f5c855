#include "tda/embedding.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>

#include "tda/errors.hpp"

namespace tda {

void PointCloud::validate() const {
    if (points.rows() < 1 || points.cols() < 1)
        throw ConfigError("point cloud must have n >= 1 and d >= 1");
    if (!points.allFinite()) throw ConfigError("point cloud contains non-finite entries");
}

void PointCloud::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            if (j > 0) out << ',';
            out << points(i, j);
        }
        out << '\n';
    }
}

void EmbeddingParams::validate(std::size_t series_len) const {
    if (m < 1) throw ConfigError("embedding dimension m must be >= 1");
    if (tau < 1) throw ConfigError("embedding delay tau must be >= 1");
    if ((m - 1) * tau >= series_len)
        throw ConfigError("window spans (m-1)*tau = " + std::to_string((m - 1) * tau) +
                          " samples but the series has only " + std::to_string(series_len));
}

PointCloud sliding_window_embed(const TimeSeries& x, const EmbeddingParams& p) {
    x.validate();
    p.validate(x.size());
    const std::size_t rows = x.size() - (p.m - 1) * p.tau;
    Eigen::MatrixXd pts(rows, p.m);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < p.m; ++k)
            pts(i, k) = x.values[i + k * p.tau];
    return PointCloud(std::move(pts));
}

std::size_t estimate_embedding_dim(const PointCloud& cloud, double threshold) {
    cloud.validate();
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("singular-mass threshold must lie in (0, 1)");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(cloud.points);
    Eigen::VectorXd sv = svd.singularValues();
    double total = sv.squaredNorm();
    if (total <= 0.0) return 1; // degenerate all-zero cloud
    double acc = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        acc += sv(k) * sv(k);
        if (acc >= threshold * total) return static_cast<std::size_t>(k + 1);
    }
    return static_cast<std::size_t>(sv.size());
}

std::size_t estimate_delay_acf(const TimeSeries& x, std::size_t max_lag) {
    x.validate();
    if (max_lag < 1) throw ConfigError("max_lag must be >= 1");
    if (x.size() <= max_lag)
        throw ConfigError("series length must exceed max_lag");

    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x.values) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : x.values) c0 += (v - mean) * (v - mean);
    if (c0 <= 1e-15 * static_cast<double>(n) * (1.0 + mean * mean))
        throw ConfigError("series has zero variance; autocorrelation delay is undefined");

    const double target = 1.0 / M_E;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t)
            ck += (x.values[t] - mean) * (x.values[t + k] - mean);
        if (ck / c0 < target) return k;
    }
    return max_lag;
}

} // namespace tda
